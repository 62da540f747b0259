//! Connected affine groups modeled as a reductive datum together with the
//! dimension `u` of the unipotent radical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::reductive::InvariantReport;
use crate::reductive::{self, torus_split, DatumDocument, GluingDatum};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineDatum {
    pub reductive_part: GluingDatum,
    pub u: usize,
}

impl AffineDatum {
    pub fn new(reductive_part: GluingDatum, u: usize) -> Self {
        AffineDatum { reductive_part, u }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AffineDocument {
            datum: self.reductive_part.to_document(),
            unipotent_dim: self.u,
        })
        .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AffineDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidDatum(e.to_string()))?;
        Ok(AffineDatum {
            reductive_part: GluingDatum::from_document(&doc.datum)?,
            u: doc.unipotent_dim,
        })
    }
}

/// A reductive datum document with `"unipotent_dim"` appended.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AffineDocument {
    #[serde(flatten)]
    pub datum: DatumDocument,
    #[serde(default)]
    pub unipotent_dim: usize,
}

pub fn invariants(a: &AffineDatum) -> InvariantReport {
    let red = reductive::invariants(&a.reductive_part);
    let dim = red.dim + a.u;
    let mh = red.dim;
    InvariantReport {
        dim,
        mh,
        dim_unipotent_radical: dim - mh,
        dim_radical: dim - mh + red.units,
        ..red
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub reductive: bool,
    pub semisimple: bool,
    pub solvable: bool,
    pub unipotent: bool,
    pub torus: bool,
}

/// Each flag from the invariant criteria, checked against the structure.
pub fn classify(a: &AffineDatum) -> Result<Classification> {
    let r = invariants(a);
    let ss_empty = a.reductive_part.semisimple_part().is_trivial();
    let n = a.reductive_part.torus_rank();
    let formula = Classification {
        reductive: r.dim == r.mh,
        semisimple: r.dim == r.mh && r.units == 0,
        solvable: r.mh == r.units,
        unipotent: r.mh == 0 && r.units == 0,
        torus: r.dim == r.units,
    };
    let structural = Classification {
        reductive: a.u == 0,
        semisimple: a.u == 0 && n == 0,
        solvable: ss_empty,
        unipotent: ss_empty && n == 0,
        torus: ss_empty && a.u == 0,
    };
    let pairs = [
        ("reductive", formula.reductive, structural.reductive),
        ("semisimple", formula.semisimple, structural.semisimple),
        ("solvable", formula.solvable, structural.solvable),
        ("unipotent", formula.unipotent, structural.unipotent),
        ("torus", formula.torus, structural.torus),
    ];
    for (criterion, f, s) in pairs {
        if f != s {
            return Err(Error::CriterionMismatch {
                criterion,
                formula: f,
                structural: s,
            });
        }
    }
    let ss_alt = r.mh.checked_sub(r.units) == Some(r.dim);
    if ss_alt != structural.semisimple {
        return Err(Error::CriterionMismatch {
            criterion: "semisimple (dim = mh - units)",
            formula: ss_alt,
            structural: structural.semisimple,
        });
    }
    Ok(formula)
}

/// `(t, r)` such that the underlying variety is `𝔸_*^t × 𝔸^r`.
pub fn solvable_variety_signature(a: &AffineDatum) -> Result<(usize, usize)> {
    if !classify(a)?.solvable {
        return Err(Error::NotSolvable);
    }
    let r = invariants(a);
    Ok((r.units, r.dim - r.units))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstructions {
    pub no_units: bool,
    pub no_curve_factor: bool,
    pub no_surface_factor: bool,
    pub no_contractible_factor: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    /// `(dim D, dim Z)` for the variety splitting `G ≅ D × Z`, when `units > 0`.
    pub factor_dims: Option<(usize, usize)>,
    /// The cocharacters defining the splitting, formatted.
    pub witness: Vec<String>,
    /// Present for semisimple groups.
    pub obstructions: Option<Obstructions>,
}

pub fn factorization_report(d: &GluingDatum) -> FactorizationReport {
    let r = reductive::invariants(d);
    let n = d.torus_rank();
    let (factor_dims, witness) = if r.units > 0 {
        let split = torus_split(d);
        let w = split
            .complement
            .iter()
            .map(|v| split.format(v, n))
            .collect();
        (Some((r.dim - n, n)), w)
    } else {
        (None, Vec::new())
    };
    let obstructions = (n == 0).then_some(Obstructions {
        no_units: true,
        no_curve_factor: true,
        no_surface_factor: true,
        no_contractible_factor: true,
    });
    FactorizationReport {
        factor_dims,
        witness,
        obstructions,
    }
}
