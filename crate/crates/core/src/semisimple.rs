//! Simply connected semisimple groups as sorted multisets of simple factors,
//! their centers, and the action of the extended outer automorphism group
//! on central subgroups.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finab::{orbit_equivalent, FinAb, FinAbElem, FinAbHom, FinAbSubgroup};
use crate::roots::{Family, SimpleCenter, SimpleType};

/// A simply connected semisimple group, factors sorted by (family, rank).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SCSemisimple {
    factors: Vec<SimpleType>,
}

impl SCSemisimple {
    pub fn new(mut factors: Vec<SimpleType>) -> Self {
        factors.sort();
        SCSemisimple { factors }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|t| t.rank()).sum()
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|t| t.dimension()).sum()
    }

    pub fn center_of(&self) -> ProductCenter {
        ProductCenter::new(self)
    }

    /// Every semisimple group of the given rank, in canonical order.
    pub fn all_of_rank(rank: usize) -> Vec<SCSemisimple> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        collect_multisets(rank, None, &mut current, &mut out);
        out.sort();
        out
    }
}

fn collect_multisets(
    remaining: usize,
    max: Option<SimpleType>,
    current: &mut Vec<SimpleType>,
    out: &mut Vec<SCSemisimple>,
) {
    if remaining == 0 {
        out.push(SCSemisimple::new(current.clone()));
        return;
    }
    for r in 1..=remaining {
        for t in SimpleType::all_of_rank(r) {
            // non-increasing sequences give each multiset once
            if max.is_none_or(|m| t <= m) {
                current.push(t);
                collect_multisets(remaining - r, Some(t), current, out);
                current.pop();
            }
        }
    }
}

impl fmt::Display for SCSemisimple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial");
        }
        let names: Vec<String> = self.factors.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", names.join("×"))
    }
}

impl FromStr for SCSemisimple {
    type Err = Error;

    /// Accepts `A1xA1`, `A1×A1`, `A1,A1` or `A1 A1`; `trivial` or the empty
    /// string is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "trivial" {
            return Ok(Self::trivial());
        }
        let factors = s
            .split(|c: char| c == 'x' || c == '×' || c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(factors))
    }
}

/// Center of a product: the direct sum of the factor centers, with the
/// coordinate blocks of each factor retained.
#[derive(Clone, Debug)]
pub struct ProductCenter {
    pub group: FinAb,
    factors: Vec<SimpleCenter>,
    /// Center coordinates of each factor.
    blocks: Vec<Range<usize>>,
    /// Coweight coordinates of each factor.
    coweight_blocks: Vec<Range<usize>>,
}

impl ProductCenter {
    fn new(s: &SCSemisimple) -> Self {
        let mut group = FinAb::trivial();
        let mut factors = Vec::new();
        let mut blocks = Vec::new();
        let mut coweight_blocks = Vec::new();
        let mut rank = 0;
        for t in s.factors() {
            let c = t.center_data();
            let start = group.ngens();
            group = group.direct_sum(&c.group);
            blocks.push(start..group.ngens());
            coweight_blocks.push(rank..rank + t.rank());
            rank += t.rank();
            factors.push(c);
        }
        ProductCenter {
            group,
            factors,
            blocks,
            coweight_blocks,
        }
    }

    pub fn factor_centers(&self) -> &[SimpleCenter] {
        &self.factors
    }

    pub fn block(&self, i: usize) -> Range<usize> {
        self.blocks[i].clone()
    }

    pub fn coweight_block(&self, i: usize) -> Range<usize> {
        self.coweight_blocks[i].clone()
    }

    /// Component of an element in factor `i`.
    pub fn project(&self, i: usize, a: &[u64]) -> FinAbElem {
        a[self.block(i)].to_vec()
    }

    /// Embeds a factor element into the product.
    pub fn embed(&self, i: usize, a: &[u64]) -> FinAbElem {
        let mut out = self.group.zero();
        out[self.block(i)].copy_from_slice(a);
        out
    }

    pub fn class_of(&self, coweight: &[BigInt]) -> FinAbElem {
        let mut out = Vec::with_capacity(self.group.ngens());
        for (c, r) in self.factors.iter().zip(&self.coweight_blocks) {
            out.extend(c.class_of(&coweight[r.clone()]));
        }
        out
    }

    pub fn lift(&self, a: &[u64]) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (i, c) in self.factors.iter().enumerate() {
            out.extend(c.lift(&self.project(i, a)));
        }
        out
    }

    /// Per factor, the smallest-index fundamental coweight in the class.
    pub fn fundamental_representative(&self, a: &[u64]) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (i, c) in self.factors.iter().enumerate() {
            out.extend(c.fundamental_representative(&self.project(i, a)));
        }
        out
    }
}

/// A named automorphism of a center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedAutomorphism {
    pub name: String,
    pub map: FinAbHom,
}

/// Generators of the image of the extended outer automorphism group on the
/// center: diagram automorphisms of single factors and swaps of adjacent
/// equal factors. Generators acting trivially are omitted.
pub fn extended_out_generators(s: &SCSemisimple) -> Vec<NamedAutomorphism> {
    let center = s.center_of();
    let a = &center.group;
    let identity = FinAbHom::identity(a);
    let mut out = Vec::new();
    for (i, t) in s.factors().iter().enumerate() {
        for perm in t.diagram_automorphisms() {
            let local = t.center_action(&perm).expect("diagram automorphism");
            let images: Vec<FinAbElem> = (0..a.ngens())
                .map(|g| {
                    let unit = unit_vector(a, g);
                    if center.block(i).contains(&g) {
                        center.embed(i, &local.apply(&center.project(i, &unit)))
                    } else {
                        unit
                    }
                })
                .collect();
            let map = FinAbHom::new(a, a, images).expect("automorphism");
            if map != identity {
                let one_based: Vec<String> = perm.iter().map(|p| (p + 1).to_string()).collect();
                out.push(NamedAutomorphism {
                    name: format!("{t}#{}[{}]", i + 1, one_based.join(",")),
                    map,
                });
            }
        }
    }
    for i in 0..s.factors().len().saturating_sub(1) {
        if s.factors()[i] != s.factors()[i + 1] {
            continue;
        }
        let (bi, bj) = (center.block(i), center.block(i + 1));
        let images: Vec<FinAbElem> = (0..a.ngens())
            .map(|g| {
                let target = if bi.contains(&g) {
                    bj.start + (g - bi.start)
                } else if bj.contains(&g) {
                    bi.start + (g - bj.start)
                } else {
                    g
                };
                unit_vector(a, target)
            })
            .collect();
        let map = FinAbHom::new(a, a, images).expect("automorphism");
        if map != identity {
            out.push(NamedAutomorphism {
                name: format!("swap({},{})", i + 1, i + 2),
                map,
            });
        }
    }
    out
}

fn unit_vector(a: &FinAb, g: usize) -> FinAbElem {
    let mut e = a.zero();
    e[g] = 1;
    e
}

/// A central subgroup of a simply connected semisimple group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralSubgroup {
    pub group: SCSemisimple,
    pub subgroup: FinAbSubgroup,
}

impl CentralSubgroup {
    pub fn new(group: &SCSemisimple, subgroup: FinAbSubgroup) -> Result<Self> {
        if subgroup.parent() != &group.center_of().group {
            return Err(Error::NotSubgroup);
        }
        Ok(CentralSubgroup {
            group: group.clone(),
            subgroup,
        })
    }

    pub fn generated(group: &SCSemisimple, gens: &[FinAbElem]) -> Self {
        let a = group.center_of().group;
        CentralSubgroup {
            group: group.clone(),
            subgroup: FinAbSubgroup::generated(&a, gens),
        }
    }

    pub fn name(&self) -> String {
        quotient_name(&self.group, &self.subgroup)
    }
}

/// A witness word for `S/C₁ ≅ S/C₂`, as generator names in application
/// order. An empty word means `C₁ = C₂`.
pub fn isomorphic_quotients(
    s: &SCSemisimple,
    c1: &FinAbSubgroup,
    c2: &FinAbSubgroup,
) -> Result<Option<Vec<String>>> {
    let a = s.center_of().group;
    let gens = extended_out_generators(s);
    let maps: Vec<FinAbHom> = gens.iter().map(|g| g.map.clone()).collect();
    Ok(orbit_equivalent(&a, c1, c2, &maps)?
        .map(|word| word.into_iter().map(|i| gens[i].name.clone()).collect()))
}

/// Conventional name of `S/C`, falling back to `S/⟨generators⟩`.
pub fn quotient_name(s: &SCSemisimple, c: &FinAbSubgroup) -> String {
    let center = s.center_of();
    match s.factors() {
        [] => "1".to_string(),
        [t] => simple_quotient_name(*t, &center.factor_centers()[0], c),
        factors => {
            let projections: Vec<FinAbSubgroup> = (0..factors.len())
                .map(|i| {
                    let gens: Vec<FinAbElem> = c
                        .generators()
                        .iter()
                        .map(|g| center.project(i, g))
                        .collect();
                    FinAbSubgroup::generated(&center.factor_centers()[i].group, &gens)
                })
                .collect();
            let product: u128 = projections.iter().map(|p| p.order()).product();
            if product == c.order() {
                factors
                    .iter()
                    .zip(&projections)
                    .enumerate()
                    .map(|(i, (t, p))| simple_quotient_name(*t, &center.factor_centers()[i], p))
                    .collect::<Vec<_>>()
                    .join("×")
            } else if factors == [a1(), a1()] && c.order() == 2 {
                "SO4".to_string()
            } else {
                let sc: Vec<String> = factors.iter().map(|t| sc_name(*t)).collect();
                format!("({})/{}", sc.join("×"), generator_list(c))
            }
        }
    }
}

fn a1() -> SimpleType {
    SimpleType::new(Family::A, 1).unwrap()
}

fn generator_list(c: &FinAbSubgroup) -> String {
    let gens: Vec<String> = c
        .independent_generators()
        .1
        .iter()
        .map(|g| {
            let parts: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    format!("<{}>", gens.join(","))
}

fn sc_name(t: SimpleType) -> String {
    let l = t.rank();
    match t.family() {
        Family::A => format!("SL{}", l + 1),
        Family::B if l == 2 => "Sp4".to_string(),
        Family::B => format!("Spin{}", 2 * l + 1),
        Family::C => format!("Sp{}", 2 * l),
        Family::D => format!("Spin{}", 2 * l),
        _ => t.to_string(),
    }
}

fn simple_quotient_name(t: SimpleType, center: &SimpleCenter, c: &FinAbSubgroup) -> String {
    let l = t.rank();
    let order = c.order();
    if order == 1 {
        return sc_name(t);
    }
    let full = order == center.group.order();
    match t.family() {
        Family::A if full => format!("PGL{}", l + 1),
        Family::A => format!("SL{}/μ{}", l + 1, order),
        Family::B => format!("SO{}", 2 * l + 1),
        Family::C => format!("PSp{}", 2 * l),
        Family::D if full => format!("PSO{}", 2 * l),
        Family::D => {
            let mut omega1 = vec![BigInt::from(0); l];
            omega1[0] = BigInt::from(1);
            let vector = center.class_of(&omega1);
            if l == 4 || (order == 2 && c.contains(&vector)) {
                format!("SO{}", 2 * l)
            } else {
                format!("SSpin{}", 2 * l)
            }
        }
        _ => format!("{t}/Z{order}"),
    }
}
