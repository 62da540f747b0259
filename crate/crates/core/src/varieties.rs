//! Quotients `Hⁿ/C` of a power of a simply connected simple group and the
//! coordinate-mixing action of `GL_n(ℤ)` on their central subgroups.
//!
//! A matrix `M` acts on tuples of central elements by
//! `(M·c)ᵢ = Σⱼ mᵢⱼ cⱼ`. Every `M ∈ GL_n(ℤ)` is the abelianization of an
//! automorphism of the free group `F_n` (the `R(i,j)` generator comes from
//! `xⱼ ↦ xᵢ·xⱼ⁻¹`, `E(i,j)` from `xᵢ ↦ xᵢ·xⱼ`, the others from permuting and
//! inverting generators), and the induced word map `Hⁿ → Hⁿ` is an
//! isomorphism of varieties carrying `Hⁿ/C` onto `Hⁿ/(M·C)`. A matrix is
//! therefore a certificate that two quotients have isomorphic underlying
//! varieties. The absence of a matrix proves nothing.
//!
//! With this convention `σ̂(M₁·M₂, C) = σ̂(M₁, σ̂(M₂, C))`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finab::{orbit_partition, subgroups, FinAb, FinAbHom, FinAbSubgroup};
use crate::intlinalg::{gl_generators, IntMatrix};
use crate::roots::SimpleType;
use crate::semisimple::{
    extended_out_generators, isomorphic_quotients, quotient_name, SCSemisimple,
};

/// `Hⁿ/C` for a simple simply connected `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerQuotient {
    pub base: SimpleType,
    pub n: usize,
    pub c: FinAbSubgroup,
}

impl PowerQuotient {
    pub fn new(base: SimpleType, n: usize, c: FinAbSubgroup) -> Result<Self> {
        if c.parent() != &power_center(base, n) {
            return Err(Error::NotSubgroup);
        }
        Ok(PowerQuotient { base, n, c })
    }

    pub fn group(&self) -> SCSemisimple {
        power(self.base, self.n)
    }

    pub fn name(&self) -> String {
        quotient_name(&self.group(), &self.c)
    }
}

pub fn power(base: SimpleType, n: usize) -> SCSemisimple {
    SCSemisimple::new(vec![base; n])
}

/// `𝒞(H)ⁿ` with factor-major coordinates.
pub fn power_center(base: SimpleType, n: usize) -> FinAb {
    power(base, n).center_of().group
}

fn action(base: SimpleType, m: &IntMatrix) -> Result<FinAbHom> {
    if !m.is_square() || !m.is_unimodular() {
        return Err(Error::NotUnimodular {
            det: if m.is_square() {
                m.determinant().to_string()
            } else {
                "undefined".into()
            },
        });
    }
    let n = m.rows();
    let group = power_center(base, n);
    let k = base.center().ngens();
    let mut t = IntMatrix::zeros(n * k, n * k);
    for i in 0..n {
        for j in 0..n {
            for c in 0..k {
                t[(i * k + c, j * k + c)] = m[(i, j)].clone();
            }
        }
    }
    FinAbHom::from_matrix(&group, &t)
}

/// `σ̂(M, C)`: the image of `C ≤ 𝒞(H)ⁿ` under the coordinate-mixing action.
pub fn sigma_hat(base: SimpleType, m: &IntMatrix, c: &FinAbSubgroup) -> Result<FinAbSubgroup> {
    let hom = action(base, m)?;
    if c.parent() != hom.source() {
        return Err(Error::NotSubgroup);
    }
    Ok(hom.image_of(c))
}

/// A matrix `M` with `σ̂(M, C₁) = C₂`, found by breadth-first search over the
/// orbit of `C₁`.
pub fn variety_iso_witness(q1: &PowerQuotient, q2: &PowerQuotient) -> Result<Option<IntMatrix>> {
    if q1.base != q2.base || q1.n != q2.n {
        return Err(Error::BaseMismatch(format!(
            "{}^{} versus {}^{}",
            q1.base, q1.n, q2.base, q2.n
        )));
    }
    if q1.c.order() != q2.c.order() {
        return Ok(None);
    }
    Ok(sigma_orbit(q1.base, q1.n, &q1.c)?.remove(&q2.c))
}

/// The `σ̂`-orbit of `c`, each member with a witness matrix.
fn sigma_orbit(
    base: SimpleType,
    n: usize,
    c: &FinAbSubgroup,
) -> Result<HashMap<FinAbSubgroup, IntMatrix>> {
    let gens: Vec<(IntMatrix, FinAbHom)> = gl_generators(n)
        .into_iter()
        .map(|(_, m)| {
            let h = action(base, &m)?;
            Ok((m, h))
        })
        .collect::<Result<_>>()?;
    let mut seen = HashMap::from([(c.clone(), IntMatrix::identity(n))]);
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(x) = queue.pop_front() {
        let mx = seen[&x].clone();
        for (g, h) in &gens {
            let y = h.image_of(&x);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), g.mul(&mx));
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Two non-isomorphic quotients of `Hⁿ` with isomorphic underlying varieties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinCertificate {
    pub base: SimpleType,
    pub n: usize,
    pub c1: FinAbSubgroup,
    pub c2: FinAbSubgroup,
    /// `σ̂(matrix, c1) = c2`.
    pub matrix: IntMatrix,
    /// Size of the exhausted `Out`-orbit of `c1`, which misses `c2`.
    pub out_orbit_size: usize,
}

impl TwinCertificate {
    pub fn name1(&self) -> String {
        quotient_name(&power(self.base, self.n), &self.c1)
    }

    pub fn name2(&self) -> String {
        quotient_name(&power(self.base, self.n), &self.c2)
    }

    /// Re-checks both halves of the certificate.
    pub fn verify(&self) -> Result<bool> {
        let s = power(self.base, self.n);
        Ok(sigma_hat(self.base, &self.matrix, &self.c1)? == self.c2
            && isomorphic_quotients(&s, &self.c1, &self.c2)?.is_none())
    }

    pub fn document(&self) -> TwinDocument {
        TwinDocument {
            base: self.base.to_string(),
            n: self.n,
            group1: self.name1(),
            group2: self.name2(),
            c1: self.c1.independent_generators().1,
            c2: self.c2.independent_generators().1,
            witness: self.matrix.to_i64_rows(),
            out_orbit_size: self.out_orbit_size,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwinDocument {
    pub base: String,
    pub n: usize,
    pub group1: String,
    pub group2: String,
    #[serde(rename = "C1")]
    pub c1: Vec<Vec<u64>>,
    #[serde(rename = "C2")]
    pub c2: Vec<Vec<u64>>,
    pub witness: Vec<Vec<i64>>,
    pub out_orbit_size: usize,
}

/// One certificate per unordered pair of group classes sharing a
/// `σ̂`-class. Each pair is represented by the smallest subgroup of each
/// group class inside the shared `σ̂`-class, the smaller one as `c2`.
pub fn find_twin_pairs(base: SimpleType, n: usize, bound: u64) -> Result<Vec<TwinCertificate>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let s = power(base, n);
    let group = s.center_of().group;
    let subs = subgroups(&group, bound)?;
    let out_maps: Vec<FinAbHom> = extended_out_generators(&s)
        .into_iter()
        .map(|g| g.map)
        .collect();
    let group_classes = orbit_partition(&subs, &out_maps)?;
    let class_of: HashMap<&FinAbSubgroup, usize> = group_classes
        .iter()
        .enumerate()
        .flat_map(|(i, cls)| cls.iter().map(move |c| (c, i)))
        .collect();
    let mut done: BTreeSet<FinAbSubgroup> = BTreeSet::new();
    let mut emitted: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for c in &subs {
        if done.contains(c) {
            continue;
        }
        let orbit = sigma_orbit(base, n, c)?;
        done.extend(orbit.keys().cloned());
        // smallest member of each group class in this σ̂-class
        let mut reps: BTreeMap<usize, &FinAbSubgroup> = BTreeMap::new();
        for x in orbit.keys() {
            let id = class_of[x];
            if reps.get(&id).is_none_or(|r| x < *r) {
                reps.insert(id, x);
            }
        }
        let reps: Vec<(usize, &FinAbSubgroup)> = reps.into_iter().collect();
        for (i, &(id_a, a)) in reps.iter().enumerate() {
            for &(id_b, b) in &reps[i + 1..] {
                let key = (id_a.min(id_b), id_a.max(id_b));
                if !emitted.insert(key) {
                    continue;
                }
                let (c1, c2) = if a > b { (a, b) } else { (b, a) };
                let q1 = PowerQuotient::new(base, n, c1.clone())?;
                let q2 = PowerQuotient::new(base, n, c2.clone())?;
                let matrix = variety_iso_witness(&q1, &q2)?.expect("same σ̂-class");
                let cert = TwinCertificate {
                    base,
                    n,
                    c1: c1.clone(),
                    c2: c2.clone(),
                    matrix,
                    out_orbit_size: group_classes[class_of[c1]].len(),
                };
                debug_assert!(cert.verify()?);
                out.push(cert);
            }
        }
    }
    out.sort_by(|x, y| (&x.c1, &x.c2).cmp(&(&y.c1, &y.c2)));
    Ok(out)
}
