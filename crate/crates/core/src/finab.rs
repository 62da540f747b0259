//! Finite abelian groups presented as `ℤ/m₁ ⊕ … ⊕ ℤ/m_k`.
//!
//! A subgroup is stored as the Hermite basis of its preimage lattice in
//! `ℤ^k`, which always contains `diag(m₁, …, m_k)·ℤ^k`. Equal subgroups
//! therefore have identical stored forms and the derived ordering is a total
//! canonical order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::intlinalg::{smith_normal_form, IntMatrix, Lattice};

/// Default bound on the group order for exhaustive enumerations.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000;

/// An element, one residue per cyclic coordinate.
pub type FinAbElem = Vec<u64>;

/// Finite abelian group `ℤ/m₁ ⊕ … ⊕ ℤ/m_k` with every `mᵢ ≥ 2`.
///
/// The moduli need not form a divisibility chain: direct sums of centers keep
/// their per-factor coordinates. [`FinAb::invariant_factors`] gives the
/// canonical isomorphism type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FinAb {
    moduli: Vec<u64>,
}

impl FinAb {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.iter().any(|&m| m < 2) {
            return Err(Error::BadModulus(format!(
                "cyclic moduli must be at least 2, got {moduli:?}"
            )));
        }
        Ok(FinAb { moduli })
    }

    /// Group from an invariant factor list `d₁ | d₂ | …`.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::BadModulus(format!(
                "not a divisibility chain: {factors:?}"
            )));
        }
        Self::new(factors)
    }

    pub fn trivial() -> Self {
        FinAb { moduli: Vec::new() }
    }

    /// Drops moduli equal to one.
    pub fn from_moduli_lossy(moduli: impl IntoIterator<Item = u64>) -> Self {
        FinAb {
            moduli: moduli.into_iter().filter(|&m| m > 1).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FinAb) -> FinAb {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        FinAb { moduli }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn exponent(&self) -> u64 {
        self.moduli
            .iter()
            .fold(1u64, |acc, &m| num_integer::lcm(acc, m))
    }

    /// Canonical invariant factors (all `> 1`, divisibility chain).
    pub fn invariant_factors(&self) -> Vec<u64> {
        let d = IntMatrix::diagonal(&self.moduli);
        smith_normal_form(&d)
            .diagonal()
            .into_iter()
            .map(|x| x.to_u64().expect("modulus fits u64"))
            .filter(|&x| x > 1)
            .collect()
    }

    pub fn is_isomorphic_to(&self, other: &FinAb) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    pub fn zero(&self) -> FinAbElem {
        vec![0; self.moduli.len()]
    }

    pub fn reduce(&self, v: &[i128]) -> FinAbElem {
        v.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| x.rem_euclid(m as i128) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> FinAbElem {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    pub fn scale(&self, k: u64, a: &[u64]) -> FinAbElem {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| ((x as u128 * k as u128) % m as u128) as u64)
            .collect()
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter().zip(&self.moduli).fold(1u64, |acc, (&x, &m)| {
            num_integer::lcm(acc, m / num_integer::gcd(x, m))
        })
    }

    /// Index of an element in the mixed-radix enumeration.
    pub fn index_of(&self, a: &[u64]) -> usize {
        a.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> FinAbElem {
        let mut out = vec![0; self.moduli.len()];
        for (o, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *o = (idx % m as usize) as u64;
            idx /= m as usize;
        }
        out
    }

    /// All elements, in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = FinAbElem> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    fn relation_lattice(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.moduli)
    }

    fn check_bound(&self, what: &str, bound: u64) -> Result<()> {
        if self.order() > bound as u128 {
            return Err(Error::TooLarge {
                what: what.to_string(),
                size: self.order(),
                bound: bound as u128,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FinAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.invariant_factors();
        if factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Subgroup of a [`FinAb`], stored canonically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbSubgroup {
    parent: FinAb,
    /// Hermite basis of the preimage lattice in `ℤ^k`.
    basis: IntMatrix,
}

impl fmt::Debug for FinAbSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g:?}")?;
        }
        write!(f, "⟩ ≤ {:?}", self.parent.moduli)
    }
}

impl FinAbSubgroup {
    /// Subgroup generated by the given elements.
    pub fn generated(parent: &FinAb, gens: &[FinAbElem]) -> Self {
        let k = parent.ngens();
        let mut m = parent.relation_lattice();
        if !gens.is_empty() {
            m = m.vstack(&IntMatrix::from_rows(k, gens));
        }
        FinAbSubgroup {
            parent: parent.clone(),
            basis: Lattice::from_generators(k, &m).basis().clone(),
        }
    }

    pub fn trivial(parent: &FinAb) -> Self {
        Self::generated(parent, &[])
    }

    pub fn whole(parent: &FinAb) -> Self {
        FinAbSubgroup {
            parent: parent.clone(),
            basis: IntMatrix::identity(parent.ngens()),
        }
    }

    pub fn parent(&self) -> &FinAb {
        &self.parent
    }

    /// The canonical preimage-lattice basis.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::from_generators(self.parent.ngens(), &self.basis)
    }

    pub fn order(&self) -> u128 {
        let index: BigInt = (0..self.basis.rows())
            .map(|i| self.basis[(i, i)].clone())
            .product();
        self.parent.order() / index.to_u128().expect("index fits u128")
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Basis rows reduced into the group, zero rows dropped.
    pub fn generators(&self) -> Vec<FinAbElem> {
        self.basis
            .row_vecs()
            .iter()
            .map(|r| {
                let v: Vec<i128> = r.iter().map(|x| x.to_i128().unwrap()).collect();
                self.parent.reduce(&v)
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect()
    }

    pub fn contains(&self, a: &[u64]) -> bool {
        let v: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        self.lattice().contains(&v)
    }

    pub fn is_subgroup_of(&self, other: &FinAbSubgroup) -> bool {
        self.parent == other.parent && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn join(&self, other: &FinAbSubgroup) -> FinAbSubgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::generated(&self.parent, &gens)
    }

    /// Independent generators `g₁, …, g_s` with orders `d₁ | … | d_s`, so that
    /// the subgroup is the internal direct sum `⊕ ⟨gᵢ⟩ ≅ ⊕ ℤ/dᵢ`.
    pub fn independent_generators(&self) -> (FinAb, Vec<FinAbElem>) {
        let lat = self.lattice();
        let k = self.parent.ngens();
        // coordinates of diag(m) in the preimage basis
        let rel = self.parent.relation_lattice();
        let coords: Vec<Vec<BigInt>> = (0..k)
            .map(|i| {
                lat.coordinates(rel.row(i))
                    .expect("relations lie in preimage")
            })
            .collect();
        let r = IntMatrix::from_rows(k, &coords);
        let smith = smith_normal_form(&r);
        let vinv = smith
            .v
            .unimodular_inverse()
            .expect("Smith transform is unimodular");
        let gens_lat = vinv.mul(lat.basis());
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        for (i, d) in smith.diagonal().into_iter().enumerate() {
            let d = d.to_u64().expect("order fits u64");
            if d > 1 {
                let v: Vec<i128> = gens_lat
                    .row(i)
                    .iter()
                    .map(|x| x.to_i128().unwrap())
                    .collect();
                orders.push(d);
                gens.push(self.parent.reduce(&v));
            }
        }
        (FinAb { moduli: orders }, gens)
    }

    /// Abstract isomorphism type.
    pub fn structure(&self) -> FinAb {
        FinAb::from_moduli_lossy(self.independent_generators().0.moduli)
    }

    pub fn exponent(&self) -> u64 {
        self.structure().exponent()
    }

    /// Element set by closure; intended for small groups.
    pub fn elements(&self) -> Vec<FinAbElem> {
        let (orders, gens) = self.independent_generators();
        let mut out = vec![self.parent.zero()];
        for (g, &d) in gens.iter().zip(orders.moduli()) {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for x in &out {
                let mut y = x.clone();
                for _ in 0..d {
                    next.push(y.clone());
                    y = self.parent.add(&y, g);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// All subgroups of `a` in canonical order.
///
/// Subgroups are produced directly as Hermite bases `B` (upper triangular,
/// `0 ≤ B[i][j] < B[j][j]` above the diagonal) whose row lattice contains
/// `diag(m)`; each subgroup appears exactly once.
pub fn subgroups(a: &FinAb, bound: u64) -> Result<Vec<FinAbSubgroup>> {
    a.check_bound("subgroup enumeration", bound)?;
    let k = a.ngens();
    let m: Vec<i128> = a.moduli().iter().map(|&x| x as i128).collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i128>> = vec![vec![0; k]; k];
    fill_subgroup_rows(k, &m, k, &mut rows, &mut out);
    let mut subs: Vec<FinAbSubgroup> = out
        .into_iter()
        .map(|b| FinAbSubgroup {
            parent: a.clone(),
            basis: IntMatrix::from_rows(k, &b),
        })
        .collect();
    subs.sort();
    Ok(subs)
}

/// Fills rows `level-1, level-2, …, 0` of an upper-triangular basis.
fn fill_subgroup_rows(
    k: usize,
    m: &[i128],
    level: usize,
    rows: &mut Vec<Vec<i128>>,
    out: &mut Vec<Vec<Vec<i128>>>,
) {
    if level == 0 {
        out.push(rows.clone());
        return;
    }
    let i = level - 1;
    for b in divisors(m[i]) {
        let tail_ranges: Vec<i128> = (i + 1..k).map(|j| rows[j][j]).collect();
        let mut tail = vec![0i128; k - i - 1];
        loop {
            let mut v = vec![0i128; k];
            for (t, j) in (i + 1..k).enumerate() {
                v[j] = tail[t] * (m[i] / b);
            }
            if in_partial_lattice(&v, rows, m, i + 1) {
                rows[i] = vec![0; k];
                rows[i][i] = b;
                for (t, j) in (i + 1..k).enumerate() {
                    rows[i][j] = tail[t];
                }
                fill_subgroup_rows(k, m, level - 1, rows, out);
            }
            if !advance(&mut tail, &tail_ranges) {
                break;
            }
        }
    }
}

/// Odometer step; false once every position has wrapped.
fn advance(digits: &mut [i128], ranges: &[i128]) -> bool {
    for pos in (0..digits.len()).rev() {
        digits[pos] += 1;
        if digits[pos] < ranges[pos] {
            return true;
        }
        digits[pos] = 0;
    }
    false
}

/// Membership of `v` (supported on coordinates `≥ start`) in the span of
/// rows `start..k` together with the relations `diag(m)`.
fn in_partial_lattice(v: &[i128], rows: &[Vec<i128>], m: &[i128], start: usize) -> bool {
    let mut v = v.to_vec();
    for j in start..v.len() {
        v[j] = v[j].rem_euclid(m[j]);
        let piv = rows[j][j];
        if v[j] % piv != 0 {
            return false;
        }
        let q = v[j] / piv;
        for (t, x) in v.iter_mut().enumerate().skip(j) {
            *x -= q * rows[j][t];
        }
    }
    true
}

fn divisors(n: i128) -> Vec<i128> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Homomorphism between finite abelian groups, given by the images of the
/// source generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinAbHom {
    source: FinAb,
    target: FinAb,
    images: Vec<FinAbElem>,
}

impl FinAbHom {
    pub fn new(source: &FinAb, target: &FinAb, images: Vec<FinAbElem>) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::InvalidDatum(format!(
                "expected {} generator images, got {}",
                source.ngens(),
                images.len()
            )));
        }
        for (img, &m) in images.iter().zip(source.moduli()) {
            if img.len() != target.ngens() || img.iter().zip(target.moduli()).any(|(&x, &t)| x >= t)
            {
                return Err(Error::InvalidDatum(format!(
                    "image {img:?} is not an element of {:?}",
                    target.moduli()
                )));
            }
            if target.scale(m, img).iter().any(|&x| x != 0) {
                return Err(Error::InvalidDatum(format!(
                    "image {img:?} does not respect generator order {m}"
                )));
            }
        }
        Ok(FinAbHom {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Endomorphism `x ↦ T·x` for an integer matrix acting on column vectors.
    pub fn from_matrix(group: &FinAb, t: &IntMatrix) -> Result<Self> {
        let k = group.ngens();
        assert_eq!((t.rows(), t.cols()), (k, k));
        let images = (0..k)
            .map(|j| {
                let col: Vec<i128> = t.column(j).iter().map(|x| x.to_i128().unwrap()).collect();
                group.reduce(&col)
            })
            .collect();
        Self::new(group, group, images)
    }

    pub fn identity(group: &FinAb) -> Self {
        Self::from_matrix(group, &IntMatrix::identity(group.ngens())).unwrap()
    }

    pub fn source(&self) -> &FinAb {
        &self.source
    }

    pub fn target(&self) -> &FinAb {
        &self.target
    }

    pub fn images(&self) -> &[FinAbElem] {
        &self.images
    }

    pub fn apply(&self, x: &[u64]) -> FinAbElem {
        let mut acc = self.target.zero();
        for (&c, img) in x.iter().zip(&self.images) {
            if c != 0 {
                acc = self.target.add(&acc, &self.target.scale(c, img));
            }
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FinAbHom) -> FinAbHom {
        assert_eq!(other.target, self.source);
        FinAbHom {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|x| self.apply(x)).collect(),
        }
    }

    pub fn image(&self) -> FinAbSubgroup {
        FinAbSubgroup::generated(&self.target, &self.images)
    }

    pub fn image_of(&self, s: &FinAbSubgroup) -> FinAbSubgroup {
        let imgs: Vec<FinAbElem> = s.generators().iter().map(|g| self.apply(g)).collect();
        FinAbSubgroup::generated(&self.target, &imgs)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_automorphism(&self) -> bool {
        self.source == self.target && self.is_surjective()
    }
}

/// All homomorphisms `h → k`, or only the epimorphisms.
pub fn homomorphisms(
    h: &FinAb,
    k: &FinAb,
    surjective_only: bool,
    bound: u64,
) -> Result<Vec<FinAbHom>> {
    h.check_bound("homomorphism source", bound)?;
    k.check_bound("homomorphism target", bound)?;
    // admissible images for each generator: elements killed by its order
    let choices: Vec<Vec<FinAbElem>> = h
        .moduli()
        .iter()
        .map(|&m| {
            k.elements()
                .filter(|y| k.scale(m, y).iter().all(|&x| x == 0))
                .collect()
        })
        .collect();
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    if total > bound as u128 * bound as u128 {
        return Err(Error::TooLarge {
            what: "homomorphism count".into(),
            size: total,
            bound: bound as u128 * bound as u128,
        });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let images: Vec<FinAbElem> = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i].clone())
            .collect();
        let hom = FinAbHom {
            source: h.clone(),
            target: k.clone(),
            images,
        };
        if !surjective_only || hom.is_surjective() {
            out.push(hom);
        }
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `a / s` in invariant-factor form.
pub fn quotient(a: &FinAb, s: &FinAbSubgroup) -> Result<FinAb> {
    if s.parent() != a {
        return Err(Error::NotSubgroup);
    }
    let torsion = s.lattice().quotient_torsion();
    Ok(FinAb::from_moduli_lossy(
        torsion.iter().map(|x| x.to_u64().expect("fits u64")),
    ))
}

/// A word in the acting generators, listed in application order.
pub type Word = Vec<usize>;

/// Breadth-first orbit of `start` under the group generated by `gens`,
/// with a shortest word reaching every orbit point.
pub fn orbit_with_words(
    start: &FinAbSubgroup,
    gens: &[FinAbHom],
) -> Result<Vec<(FinAbSubgroup, Word)>> {
    check_automorphisms(start.parent(), gens)?;
    let mut seen: HashMap<FinAbSubgroup, usize> = HashMap::new();
    let mut order: Vec<(FinAbSubgroup, Word)> = vec![(start.clone(), Vec::new())];
    seen.insert(start.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let next = g.image_of(&order[idx].0);
            if !seen.contains_key(&next) {
                let mut word = order[idx].1.clone();
                word.push(gi);
                seen.insert(next.clone(), order.len());
                queue.push_back(order.len());
                order.push((next, word));
            }
        }
    }
    Ok(order)
}

fn check_automorphisms(a: &FinAb, gens: &[FinAbHom]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        if g.source() != a || !g.is_automorphism() {
            return Err(Error::NotAutomorphism { index: i });
        }
    }
    Ok(())
}

/// Searches for a word `w` in `gens` with `w·s1 = s2`.
pub fn orbit_equivalent(
    a: &FinAb,
    s1: &FinAbSubgroup,
    s2: &FinAbSubgroup,
    gens: &[FinAbHom],
) -> Result<Option<Word>> {
    if s1.parent() != a || s2.parent() != a {
        return Err(Error::NotSubgroup);
    }
    check_automorphisms(a, gens)?;
    if s1 == s2 {
        return Ok(Some(Vec::new()));
    }
    // automorphisms preserve order
    if s1.order() != s2.order() {
        return Ok(None);
    }
    Ok(orbit_with_words(s1, gens)?
        .into_iter()
        .find(|(s, _)| s == s2)
        .map(|(_, w)| w))
}

/// Applies a word (in application order) to a subgroup.
pub fn apply_word(word: &[usize], gens: &[FinAbHom], s: &FinAbSubgroup) -> FinAbSubgroup {
    word.iter()
        .fold(s.clone(), |acc, &g| gens[g].image_of(&acc))
}

/// Partitions subgroups into orbits; orbits are listed by their smallest
/// member and each orbit is sorted.
pub fn orbit_partition(
    subs: &[FinAbSubgroup],
    gens: &[FinAbHom],
) -> Result<Vec<Vec<FinAbSubgroup>>> {
    let mut assigned: HashMap<FinAbSubgroup, usize> = HashMap::new();
    let mut classes: Vec<Vec<FinAbSubgroup>> = Vec::new();
    let mut sorted = subs.to_vec();
    sorted.sort();
    for s in &sorted {
        if assigned.contains_key(s) {
            continue;
        }
        let mut orbit: Vec<FinAbSubgroup> = orbit_with_words(s, gens)?
            .into_iter()
            .map(|(x, _)| x)
            .collect();
        orbit.sort();
        for x in &orbit {
            assigned.insert(x.clone(), classes.len());
        }
        classes.push(orbit);
    }
    Ok(classes)
}

/// Number of divisors, used by tests and callers sizing cyclic enumerations.
pub fn divisor_count(n: u64) -> usize {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count()
}

/// Integer vector view of an element.
pub fn elem_to_bigint(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}
