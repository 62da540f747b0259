//! Connected reductive groups presented as `(Z × S)/F`, where `Z = 𝔾_mⁿ`,
//! `S` is simply connected semisimple and `F` is a finite central subgroup
//! with `F ∩ Z = {e}`.
//!
//! `F` is stored inside `B = (ℤ/E)ⁿ ⊕ 𝒞(S)` with `E = exp 𝒞(S)`: the torus
//! coordinate `c` stands for the point `exp(2πi·c/E)` of `Z`. Every element
//! of `F` has order dividing `E` because `F` projects injectively to `𝒞(S)`,
//! so nothing is lost. When `E = 1` there are no torus coordinates.
//!
//! Two data are isomorphic exactly when their gluing subgroups lie in one
//! orbit of `GL_n(ℤ) × Out_ext(S)` acting on `B`. The stored `F` is the
//! smallest member of its orbit, so derived equality is isomorphism.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finab::{
    homomorphisms, orbit_equivalent, orbit_with_words, subgroups, FinAb, FinAbElem, FinAbHom,
    FinAbSubgroup, DEFAULT_ENUMERATION_BOUND,
};
use crate::intlinalg::{
    cokernel_invariants, gl_generators, hermite_with_transform, integer_kernel, prime_to_p_part,
    smith_normal_form, IntMatrix, Lattice,
};
use crate::roots::{Family, SimpleType};
use crate::semisimple::{
    extended_out_generators, quotient_name, NamedAutomorphism, ProductCenter, SCSemisimple,
};

/// A connected reductive group `(𝔾_mⁿ × S)/F`.
///
/// Ordered by `S`, then `n`, then `|F|`, then the stored form of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluingDatum {
    s: SCSemisimple,
    n: usize,
    f: FinAbSubgroup,
}

/// The group `B = (ℤ/E)ⁿ ⊕ 𝒞(S)` containing the gluing subgroup.
#[derive(Clone, Debug)]
pub struct GluingAmbient {
    pub n: usize,
    pub exponent: u64,
    /// Number of torus coordinates: `n`, or 0 when `E = 1`.
    pub torus_coords: usize,
    pub center: ProductCenter,
    pub group: FinAb,
}

impl GluingAmbient {
    pub fn new(n: usize, s: &SCSemisimple) -> Self {
        let center = s.center_of();
        let exponent = center.group.exponent();
        let torus_coords = if exponent > 1 { n } else { 0 };
        let torus = FinAb::new(vec![exponent; torus_coords]).expect("exponent > 1");
        GluingAmbient {
            n,
            exponent,
            torus_coords,
            group: torus.direct_sum(&center.group),
            center,
        }
    }

    pub fn join(&self, torus: &[u64], center: &[u64]) -> FinAbElem {
        let mut v: Vec<u64> = torus.iter().map(|&x| x % self.exponent).collect();
        v.truncate(self.torus_coords);
        v.resize(self.torus_coords, 0);
        v.extend_from_slice(center);
        v
    }

    pub fn torus_part<'a>(&self, x: &'a [u64]) -> &'a [u64] {
        &x[..self.torus_coords]
    }

    pub fn center_part<'a>(&self, x: &'a [u64]) -> &'a [u64] {
        &x[self.torus_coords..]
    }

    /// Torus part as a length-`n` vector (zeros when there are no torus
    /// coordinates).
    pub fn torus_vector(&self, x: &[u64]) -> Vec<u64> {
        let mut t = self.torus_part(x).to_vec();
        t.resize(self.n, 0);
        t
    }

    /// Generators of the acting group `GL_n(ℤ) × Out_ext(S)` on `B`.
    pub fn action_generators(&self, s: &SCSemisimple) -> Vec<NamedAutomorphism> {
        let mut out = Vec::new();
        let k = self.center.group.ngens();
        if self.torus_coords > 0 {
            for (name, m) in gl_generators(self.n) {
                let t = m.direct_sum(&IntMatrix::identity(k));
                out.push(NamedAutomorphism {
                    name: format!("GL:{name}"),
                    map: FinAbHom::from_matrix(&self.group, &t).expect("unimodular action"),
                });
            }
        }
        for g in extended_out_generators(s) {
            let images: Vec<FinAbElem> = (0..self.group.ngens())
                .map(|i| {
                    if i < self.torus_coords {
                        let mut e = self.group.zero();
                        e[i] = 1;
                        e
                    } else {
                        let mut unit = self.center.group.zero();
                        unit[i - self.torus_coords] = 1;
                        self.join(&[], &g.map.apply(&unit))
                    }
                })
                .collect();
            out.push(NamedAutomorphism {
                name: format!("Out:{}", g.name),
                map: FinAbHom::new(&self.group, &self.group, images).expect("automorphism"),
            });
        }
        out
    }
}

impl Ord for GluingDatum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.s, self.n, self.f.order(), &self.f).cmp(&(
            &other.s,
            other.n,
            other.f.order(),
            &other.f,
        ))
    }
}

impl PartialOrd for GluingDatum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl GluingDatum {
    /// Validates `F ≤ B` with `F ∩ Z = {e}` and stores the canonical
    /// representative of its orbit.
    pub fn new(n: usize, s: SCSemisimple, f: FinAbSubgroup) -> Result<Self> {
        Ok(Self::new_raw(n, s, f)?.canonical())
    }

    /// As [`GluingDatum::new`] but keeps `F` as given.
    pub fn new_raw(n: usize, s: SCSemisimple, f: FinAbSubgroup) -> Result<Self> {
        let amb = GluingAmbient::new(n, &s);
        if f.parent() != &amb.group {
            return Err(Error::NotSubgroup);
        }
        let d = GluingDatum { s, n, f };
        if d.h().order() != d.f.order() {
            return Err(Error::InvalidDatum(
                "gluing subgroup meets the torus nontrivially".into(),
            ));
        }
        Ok(d)
    }

    /// Datum with `F` generated by `(torus residues mod E, center element)`
    /// pairs.
    pub fn from_generators(
        n: usize,
        s: SCSemisimple,
        gens: &[(Vec<u64>, FinAbElem)],
    ) -> Result<Self> {
        let amb = GluingAmbient::new(n, &s);
        let mut elems = Vec::new();
        for (t, a) in gens {
            check_element(&amb.center.group, a)?;
            if t.len() != n {
                return Err(Error::InvalidDatum(format!(
                    "torus part {t:?} has length ≠ {n}"
                )));
            }
            elems.push(amb.join(t, a));
        }
        Self::new(n, s, FinAbSubgroup::generated(&amb.group, &elems))
    }

    pub fn torus(n: usize) -> Self {
        Self::simply_connected(n, SCSemisimple::trivial())
    }

    /// `𝔾_mⁿ × S`.
    pub fn simply_connected(n: usize, s: SCSemisimple) -> Self {
        let amb = GluingAmbient::new(n, &s);
        GluingDatum {
            f: FinAbSubgroup::trivial(&amb.group),
            s,
            n,
        }
    }

    /// `S/H` with no torus.
    pub fn semisimple(s: SCSemisimple, h: &[FinAbElem]) -> Result<Self> {
        let gens: Vec<(Vec<u64>, FinAbElem)> = h.iter().map(|a| (vec![], a.clone())).collect();
        Self::from_generators(0, s, &gens)
    }

    /// `GL_m = (𝔾_m × SL_m)/⟨(ζ, ζ⁻¹·I)⟩`.
    pub fn general_linear(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDatum("GL_0".into()));
        }
        if m == 1 {
            return Ok(Self::torus(1));
        }
        let s = SCSemisimple::new(vec![SimpleType::new(Family::A, m - 1)?]);
        Self::from_generators(1, s, &[(vec![1], vec![1])])
    }

    /// Builds a datum from an arbitrary finite central subgroup
    /// `F_raw ≤ μ_Nⁿ × 𝒞(S)` by dividing the torus by `F_raw ∩ Z`.
    ///
    /// Each generator is `(t, a)` with `t ∈ (ℤ/N)ⁿ` standing for
    /// `exp(2πi·t/N)`.
    pub fn normalize(
        n: usize,
        s: SCSemisimple,
        modulus: u64,
        gens: &[(Vec<u64>, FinAbElem)],
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::BadModulus("modulus must be positive".into()));
        }
        let amb = GluingAmbient::new(n, &s);
        let a = &amb.center.group;
        let k = a.ngens();
        for (t, c) in gens {
            if t.len() != n {
                return Err(Error::InvalidDatum(format!(
                    "torus part {t:?} has length ≠ {n}"
                )));
            }
            if let Some(bad) = t.iter().find(|&&x| x >= modulus) {
                return Err(Error::BadModulus(format!(
                    "torus coordinate {bad} is not a residue mod {modulus}"
                )));
            }
            check_element(a, c)?;
        }
        let big = |x: u64| BigInt::from(x);
        // preimage of F_raw in ℤⁿ ⊕ ℤᵏ
        let mut rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|(t, c)| t.iter().chain(c.iter()).map(|&x| big(x)).collect())
            .collect();
        for i in 0..n + k {
            let mut r = vec![BigInt::zero(); n + k];
            r[i] = if i < n {
                big(modulus)
            } else {
                big(a.moduli()[i - n])
            };
            rows.push(r);
        }
        let preimage = Lattice::from_rows(n + k, &rows);
        let torus_rows: Vec<Vec<BigInt>> = (0..n + k)
            .map(|i| {
                let mut r = vec![BigInt::zero(); n + k];
                r[i] = if i < n {
                    BigInt::one()
                } else {
                    big(a.moduli()[i - n])
                };
                r
            })
            .collect();
        let in_torus = preimage.intersect(&Lattice::from_rows(n + k, &torus_rows));
        // T₀/Nℤⁿ is F_raw ∩ Z; its Hermite basis P re-coordinatizes the torus
        let projected: Vec<Vec<BigInt>> = in_torus
            .basis()
            .row_vecs()
            .into_iter()
            .map(|r| r[..n].to_vec())
            .collect();
        let t0 = Lattice::from_rows(n, &projected);
        let p = t0.basis().clone();
        assert_eq!(p.rows(), n, "T₀ contains Nℤⁿ");
        let e = big(amb.exponent);
        let mut new_gens = Vec::new();
        for (t, c) in gens {
            // solve z·P = E·t for the upper triangular P
            let mut z: Vec<BigInt> = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = &e * big(t[j]);
                for (i, zi) in z.iter().enumerate() {
                    acc -= zi * &p[(i, j)];
                }
                let (q, r) = acc.div_mod_floor(&p[(j, j)]);
                if !r.is_zero() {
                    return Err(Error::BadModulus(format!(
                        "generator {t:?} has order not dividing the center exponent"
                    )));
                }
                z.push(q);
            }
            let torus: Vec<u64> = z
                .iter()
                .map(|x| x.mod_floor(&e).to_u64().expect("small residue"))
                .collect();
            new_gens.push((torus, c.clone()));
        }
        Self::from_generators(n, s, &new_gens)
    }

    pub fn torus_rank(&self) -> usize {
        self.n
    }

    pub fn semisimple_part(&self) -> &SCSemisimple {
        &self.s
    }

    pub fn gluing(&self) -> &FinAbSubgroup {
        &self.f
    }

    pub fn ambient(&self) -> GluingAmbient {
        GluingAmbient::new(self.n, &self.s)
    }

    pub fn rank(&self) -> usize {
        self.n + self.s.rank()
    }

    pub fn dimension(&self) -> usize {
        self.n + self.s.dimension()
    }

    /// `H = π_S(F) ≤ 𝒞(S)`.
    pub fn h(&self) -> FinAbSubgroup {
        let amb = self.ambient();
        let gens: Vec<FinAbElem> = self
            .f
            .generators()
            .iter()
            .map(|g| amb.center_part(g).to_vec())
            .collect();
        FinAbSubgroup::generated(&amb.center.group, &gens)
    }

    /// Independent generators of `F` split as `(torus part, center part)`.
    pub fn gluing_generators(&self) -> Vec<(Vec<u64>, FinAbElem)> {
        let amb = self.ambient();
        self.f
            .independent_generators()
            .1
            .iter()
            .map(|g| (amb.torus_vector(g), amb.center_part(g).to_vec()))
            .collect()
    }

    /// `e = exp H`.
    pub fn k_modulus(&self) -> u64 {
        self.h().exponent()
    }

    /// `α: H → (ℤ/e)ⁿ` as images of the independent generators of `H`
    /// returned alongside.
    pub fn alpha(&self) -> (Vec<FinAbElem>, Vec<Vec<u64>>) {
        let scale = self.ambient().exponent / self.k_modulus();
        self.gluing_generators()
            .into_iter()
            .map(|(t, h)| (h, t.iter().map(|x| x / scale).collect()))
            .unzip()
    }

    /// `K = π_Z(F)`, inside `(ℤ/e)ⁿ`.
    pub fn k(&self) -> FinAbSubgroup {
        let e = self.k_modulus();
        let group = if e > 1 {
            FinAb::new(vec![e; self.n]).expect("e > 1")
        } else {
            FinAb::trivial()
        };
        let images = if e > 1 { self.alpha().1 } else { vec![] };
        FinAbSubgroup::generated(&group, &images)
    }

    /// The smallest member of the orbit of `F`.
    pub fn canonical(&self) -> Self {
        let amb = self.ambient();
        let maps: Vec<FinAbHom> = amb
            .action_generators(&self.s)
            .into_iter()
            .map(|g| g.map)
            .collect();
        let f = orbit_with_words(&self.f, &maps)
            .expect("valid action")
            .into_iter()
            .map(|(x, _)| x)
            .min()
            .expect("orbit is nonempty");
        GluingDatum {
            s: self.s.clone(),
            n: self.n,
            f,
        }
    }

    /// Conventional name when recognized.
    pub fn name(&self) -> String {
        let torus = match self.n {
            0 => String::new(),
            1 => "Gm".to_string(),
            n => format!("Gm^{n}"),
        };
        if self.s.is_trivial() {
            return if self.n == 0 { "1".into() } else { torus };
        }
        let h = self.h();
        if self.k().is_trivial() {
            let ss = quotient_name(&self.s, &h);
            return if self.n == 0 {
                ss
            } else {
                format!("{torus}×{ss}")
            };
        }
        if let [t] = self.s.factors() {
            if t.family() == Family::A && self.n == 1 {
                if let Ok(gl) = Self::general_linear(t.rank() + 1) {
                    if gl == self.canonical() {
                        return format!("GL{}", t.rank() + 1);
                    }
                }
            }
        }
        let sc = quotient_name(&self.s, &FinAbSubgroup::trivial(&h.parent().clone()));
        let gens: Vec<String> = self
            .f
            .independent_generators()
            .1
            .iter()
            .map(|g| {
                let parts: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        format!("({torus}×{sc})/<{}>", gens.join(","))
    }
}

impl fmt::Display for GluingDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn check_element(a: &FinAb, x: &[u64]) -> Result<()> {
    if x.len() != a.ngens() || x.iter().zip(a.moduli()).any(|(&v, &m)| v >= m) {
        return Err(Error::InvalidDatum(format!(
            "{x:?} is not an element of the center {:?}",
            a.moduli()
        )));
    }
    Ok(())
}

/// Witness word (generator names in application order) for `d1 ≅ d2`.
pub fn isomorphic(d1: &GluingDatum, d2: &GluingDatum) -> Result<Option<Vec<String>>> {
    if d1.n != d2.n || d1.s != d2.s {
        return Ok(None);
    }
    let amb = d1.ambient();
    let gens = amb.action_generators(&d1.s);
    let maps: Vec<FinAbHom> = gens.iter().map(|g| g.map.clone()).collect();
    Ok(orbit_equivalent(&amb.group, &d1.f, &d2.f, &maps)?
        .map(|w| w.into_iter().map(|i| gens[i].name.clone()).collect()))
}

/// Limits for [`enumerate_rank`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_rank: usize,
    /// Bound on group orders in subgroup and homomorphism enumeration.
    pub bound: u64,
    /// Characteristic for the `a ↦ a′` filter on `π_Z(F)`; 0 is inert.
    pub p: u64,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_rank: 3,
            bound: DEFAULT_ENUMERATION_BOUND,
            p: 0,
        }
    }
}

/// Every datum `(n, S, F)` of rank `r` built as the graph of a
/// homomorphism `α: H → (ℤ/e)ⁿ`, without canonicalization.
pub fn raw_gluing_data(r: usize, config: &EnumerationConfig) -> Result<Vec<GluingDatum>> {
    if r > config.max_rank {
        return Err(Error::TooLarge {
            what: "rank".into(),
            size: r as u128,
            bound: config.max_rank as u128,
        });
    }
    let mut out = Vec::new();
    for srank in 0..=r {
        let n = r - srank;
        for s in SCSemisimple::all_of_rank(srank) {
            let amb = GluingAmbient::new(n, &s);
            for h in subgroups(&amb.center.group, config.bound)? {
                let (orders, hgens) = h.independent_generators();
                let e = orders.exponent();
                let alphas: Vec<Vec<FinAbElem>> = if n == 0 || e == 1 {
                    vec![vec![vec![0; n]; hgens.len()]]
                } else {
                    let target = FinAb::new(vec![e; n]).expect("e > 1");
                    homomorphisms(&orders, &target, false, config.bound)?
                        .into_iter()
                        .map(|a| a.images().to_vec())
                        .collect()
                };
                let scale = amb.exponent / e;
                for images in alphas {
                    if !reduced_in_characteristic(&images, e, config.p) {
                        continue;
                    }
                    let gens: Vec<FinAbElem> = images
                        .iter()
                        .zip(&hgens)
                        .map(|(t, g)| {
                            let torus: Vec<u64> = t.iter().map(|x| x * scale).collect();
                            amb.join(&torus, g)
                        })
                        .collect();
                    let f = FinAbSubgroup::generated(&amb.group, &gens);
                    out.push(GluingDatum::new_raw(n, s.clone(), f)?);
                }
            }
        }
    }
    Ok(out)
}

/// `π_Z(F)` passes the characteristic-`p` condition when its invariant
/// factors are prime to `p`.
fn reduced_in_characteristic(images: &[Vec<u64>], e: u64, p: u64) -> bool {
    if p == 0 || e == 1 || images.is_empty() || images[0].is_empty() {
        return true;
    }
    let group = FinAb::new(vec![e; images[0].len()]).expect("e > 1");
    let k = FinAbSubgroup::generated(&group, images);
    k.structure()
        .invariant_factors()
        .iter()
        .all(|&d| prime_to_p_part(&BigInt::from(d), p) == BigInt::from(d))
}

/// All connected reductive groups of rank `r` up to isomorphism, sorted.
pub fn enumerate_rank(r: usize, config: &EnumerationConfig) -> Result<Vec<GluingDatum>> {
    let set: BTreeSet<GluingDatum> = raw_gluing_data(r, config)?
        .into_iter()
        .map(|d| d.canonical())
        .collect();
    Ok(set.into_iter().collect())
}

/// Block diagonal Cartan matrix of `S`.
pub fn cartan_of(s: &SCSemisimple) -> IntMatrix {
    let l = s.rank();
    let mut a = IntMatrix::zeros(l, l);
    let mut off = 0;
    for t in s.factors() {
        let c = t.cartan_matrix();
        for i in 0..t.rank() {
            for j in 0..t.rank() {
                a[(off + i, off + j)] = c[(i, j)].clone();
            }
        }
        off += t.rank();
    }
    a
}

/// `E·A⁻¹` for the Cartan matrix `A` of `S`, `E = exp 𝒞(S)`.
fn scaled_inverse_cartan(s: &SCSemisimple, e: u64) -> IntMatrix {
    let a = cartan_of(s);
    let l = a.rows();
    if l == 0 {
        return a;
    }
    let smith = smith_normal_form(&a);
    let e = BigInt::from(e);
    let mut dinv = IntMatrix::zeros(l, l);
    for i in 0..l {
        dinv[(i, i)] = &e / &smith.d[(i, i)];
    }
    smith.v.mul(&dinv).mul(&smith.u)
}

/// Character lattice of a maximal torus with the roots in the same
/// coordinates `(χ, λ) ∈ ℤⁿ ⊕ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterLattice {
    pub lattice: Lattice,
    pub roots: Vec<Vec<BigInt>>,
}

/// `X* = {(χ, λ) : χ·c/E + λᵀA⁻¹x ∈ ℤ for every (c/E, x) ∈ F}`.
pub fn character_lattice(d: &GluingDatum) -> CharacterLattice {
    let amb = d.ambient();
    let (n, l) = (d.n, d.s.rank());
    let e = amb.exponent;
    let ainv = scaled_inverse_cartan(&d.s, e);
    let gens = d.gluing_generators();
    let g = gens.len();
    let mut w = IntMatrix::zeros(g, n + l + g);
    for (r, (t, a)) in gens.iter().enumerate() {
        for i in 0..n {
            w[(r, i)] = BigInt::from(t[i]);
        }
        let pairing = ainv.mul_vec(&amb.center.lift(a));
        for j in 0..l {
            w[(r, n + j)] = pairing[j].clone();
        }
        w[(r, n + l + r)] = BigInt::from(e);
    }
    let lattice = if g == 0 {
        Lattice::full(n + l)
    } else {
        let kernel = integer_kernel(&w);
        let projected = kernel.select_cols(&(0..n + l).collect::<Vec<_>>());
        Lattice::from_generators(n + l, &projected)
    };
    let cartan = cartan_of(&d.s);
    let mut roots = Vec::new();
    let mut off = 0;
    for t in d.s.factors() {
        for beta in t.generate_roots().roots {
            let mut v = vec![BigInt::zero(); n + l];
            for (i, &b) in beta.iter().enumerate() {
                for j in 0..t.rank() {
                    v[n + off + j] += BigInt::from(b) * &cartan[(off + i, off + j)];
                }
            }
            roots.push(v);
        }
        off += t.rank();
    }
    roots.sort();
    CharacterLattice { lattice, roots }
}

/// `π₁ = Y/Q^∨` as (free rank, torsion).
pub fn fundamental_group(d: &GluingDatum) -> (usize, FinAb) {
    let amb = d.ambient();
    let n = d.n;
    let m = amb.center.group.moduli().to_vec();
    let k = m.len();
    let e = BigInt::from(amb.exponent);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n + k];
        r[i] = e.clone();
        rows.push(r);
    }
    for (t, a) in d.gluing_generators() {
        rows.push(t.iter().chain(a.iter()).map(|&x| BigInt::from(x)).collect());
    }
    let relations: Vec<Vec<BigInt>> = (0..k)
        .map(|j| {
            let mut r = vec![BigInt::zero(); n + k];
            r[n + j] = BigInt::from(m[j]);
            r
        })
        .collect();
    rows.extend(relations.iter().cloned());
    let span = Lattice::from_rows(n + k, &rows);
    let coords: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|r| span.coordinates(r).expect("relation lies in the span"))
        .collect();
    let rel = IntMatrix::from_rows(span.rank(), &coords);
    let inv = cokernel_invariants(&rel.transpose());
    let torsion = FinAb::from_moduli_lossy(inv.torsion.iter().map(|x| x.to_u64().unwrap()));
    (inv.free_rank, torsion)
}

/// Numerical invariants of a connected affine group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub dim: usize,
    pub rank: usize,
    pub units: usize,
    pub mh: usize,
    pub dim_radical: usize,
    pub dim_unipotent_radical: usize,
    pub pi1_free_rank: usize,
    /// Invariant factors of the torsion of `π₁`.
    pub pi1_torsion: Vec<u64>,
}

/// Invariants of a reductive group. `mh` is evaluated as `dim`, which holds
/// for every reductive group; it is not computed homologically.
pub fn invariants(d: &GluingDatum) -> InvariantReport {
    let (free, torsion) = fundamental_group(d);
    let dim = d.dimension();
    InvariantReport {
        dim,
        rank: d.rank(),
        units: d.n,
        mh: dim,
        dim_radical: d.n,
        dim_unipotent_radical: 0,
        pi1_free_rank: free,
        pi1_torsion: torsion.invariant_factors(),
    }
}

/// Isomorphism class of the Lie algebra: simple factors and center dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieAlgebraInvariant {
    pub factors: Vec<SimpleType>,
    pub torus_rank: usize,
}

pub fn lie_algebra_invariant(d: &GluingDatum) -> LieAlgebraInvariant {
    LieAlgebraInvariant {
        factors: d.s.factors().to_vec(),
        torus_rank: d.n,
    }
}

/// Why the underlying variety is known to determine the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietyReason {
    Torus,
    SimplyConnected,
    Simple,
    /// No implemented result applies; this is not a proof of the converse.
    NotGuaranteed,
}

impl fmt::Display for VarietyReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VarietyReason::Torus => "torus",
            VarietyReason::SimplyConnected => "simply connected semisimple",
            VarietyReason::Simple => "simple",
            VarietyReason::NotGuaranteed => "not guaranteed",
        })
    }
}

pub fn variety_determines_group(d: &GluingDatum) -> (bool, VarietyReason) {
    let reason = if d.s.is_trivial() {
        VarietyReason::Torus
    } else if d.n == 0 && d.f.is_trivial() {
        VarietyReason::SimplyConnected
    } else if d.n == 0 && d.s.factors().len() == 1 {
        VarietyReason::Simple
    } else {
        VarietyReason::NotGuaranteed
    };
    (reason != VarietyReason::NotGuaranteed, reason)
}

/// Cocharacter data in scaled coordinates `(E·torus, coweight)`.
#[derive(Clone, Debug)]
pub struct TorusSplit {
    pub scale: u64,
    /// The cocharacter lattice `Y`.
    pub cocharacters: Lattice,
    /// `Y ∩ (0 ⊕ ℚ^ℓ)`, the saturation of the coroot span.
    pub saturation: Lattice,
    /// A complement of `saturation` in `Y`; one vector per torus dimension.
    pub complement: Vec<Vec<BigInt>>,
}

impl TorusSplit {
    /// A cocharacter as (torus numerators over `scale`, coweight).
    pub fn format(&self, v: &[BigInt], n: usize) -> String {
        let e = BigInt::from(self.scale);
        let torus: Vec<String> = v[..n]
            .iter()
            .map(|x| {
                let g = x.gcd(&e);
                let (num, den) = (x / &g, &e / &g);
                if den.is_one() {
                    num.to_string()
                } else {
                    format!("{num}/{den}")
                }
            })
            .collect();
        let cow: Vec<String> = v[n..].iter().map(|x| x.to_string()).collect();
        format!("({}; {})", torus.join(","), cow.join(","))
    }
}

pub fn torus_split(d: &GluingDatum) -> TorusSplit {
    let amb = d.ambient();
    let (n, l) = (d.n, d.s.rank());
    let e = BigInt::from(amb.exponent);
    let gens = d.gluing_generators();
    let cartan = cartan_of(&d.s);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut torus_rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n + l];
        r[i] = e.clone();
        torus_rows.push(r[..n].to_vec());
        rows.push(r);
    }
    for (t, a) in &gens {
        let torus: Vec<BigInt> = t.iter().map(|&x| BigInt::from(x)).collect();
        torus_rows.push(torus.clone());
        let mut r = torus;
        r.extend(amb.center.lift(a));
        rows.push(r);
    }
    for j in 0..l {
        let mut r = vec![BigInt::zero(); n + l];
        for i in 0..l {
            r[n + i] = cartan[(i, j)].clone();
        }
        rows.push(r);
    }
    let cocharacters = Lattice::from_rows(n + l, &rows);
    let coweight_axis: Vec<Vec<BigInt>> = (0..l)
        .map(|j| {
            let mut r = vec![BigInt::zero(); n + l];
            r[n + j] = BigInt::one();
            r
        })
        .collect();
    let saturation = cocharacters.intersect(&Lattice::from_rows(n + l, &coweight_axis));
    let mut complement = Vec::new();
    if n > 0 {
        let (hnf, u) = hermite_with_transform(&IntMatrix::from_rows(n, &torus_rows));
        let a = &amb.center.group;
        for i in 0..hnf.rows() {
            let mut class = vec![0i128; a.ngens()];
            for (f, (_, h)) in gens.iter().enumerate() {
                let coeff = u[(i, n + f)].to_i128().expect("small coefficient");
                for (c, &x) in class.iter_mut().zip(h) {
                    *c += coeff * x as i128;
                }
            }
            let mut v = hnf.row(i).to_vec();
            v.extend(amb.center.fundamental_representative(&a.reduce(&class)));
            complement.push(v);
        }
    }
    TorusSplit {
        scale: amb.exponent,
        cocharacters,
        saturation,
        complement,
    }
}

/// Datum serialization; field order is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDocument {
    pub torus_rank: usize,
    pub factors: Vec<String>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<u64>>,
    #[serde(rename = "K_modulus")]
    pub k_modulus: u64,
    #[serde(rename = "K")]
    pub k: Vec<Vec<u64>>,
    pub alpha: Vec<Vec<u64>>,
}

impl GluingDatum {
    pub fn to_document(&self) -> DatumDocument {
        let (h, alpha) = self.alpha();
        DatumDocument {
            torus_rank: self.n,
            factors: self.s.factors().iter().map(|t| t.to_string()).collect(),
            h,
            k_modulus: self.k_modulus(),
            k: self.k().generators(),
            alpha,
        }
    }

    pub fn from_document(doc: &DatumDocument) -> Result<Self> {
        let factors = doc
            .factors
            .iter()
            .map(|f| f.parse())
            .collect::<Result<Vec<SimpleType>>>()?;
        let s = SCSemisimple::new(factors);
        let n = doc.torus_rank;
        let amb = GluingAmbient::new(n, &s);
        let a = &amb.center.group;
        for h in &doc.h {
            check_element(a, h)?;
        }
        let hsub = FinAbSubgroup::generated(a, &doc.h);
        let e = hsub.exponent();
        if doc.k_modulus != e {
            return Err(Error::InvalidDatum(format!(
                "K_modulus {} differs from the exponent {e} of H",
                doc.k_modulus
            )));
        }
        if doc.alpha.len() != doc.h.len() {
            return Err(Error::InvalidDatum(
                "alpha needs one row per row of H".into(),
            ));
        }
        let kgroup = if e > 1 && n > 0 {
            FinAb::new(vec![e; n]).expect("e > 1")
        } else {
            FinAb::trivial()
        };
        for row in doc.alpha.iter().chain(&doc.k) {
            if row.len() != kgroup.ngens() || row.iter().any(|&x| x >= e) {
                return Err(Error::InvalidDatum(format!(
                    "{row:?} is not an element of (Z/{e})^{n}"
                )));
            }
        }
        let scale = amb.exponent / e;
        let gens: Vec<FinAbElem> = doc
            .alpha
            .iter()
            .zip(&doc.h)
            .map(|(t, h)| {
                let torus: Vec<u64> = t.iter().map(|x| x * scale).collect();
                amb.join(&torus, h)
            })
            .collect();
        let f = FinAbSubgroup::generated(&amb.group, &gens);
        if f.order() != hsub.order() {
            return Err(Error::InvalidDatum(
                "alpha is not a homomorphism on H".into(),
            ));
        }
        if FinAbSubgroup::generated(&kgroup, &doc.alpha)
            != FinAbSubgroup::generated(&kgroup, &doc.k)
        {
            return Err(Error::InvalidDatum("K is not the image of alpha".into()));
        }
        Self::new(n, s, f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DatumDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidDatum(e.to_string()))?;
        Self::from_document(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ss(s: &str) -> SCSemisimple {
        s.parse().unwrap()
    }

    fn gl(m: usize) -> GluingDatum {
        GluingDatum::general_linear(m).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let trivial = GluingDatum::normalize(2, ss("A1"), 4, &[]).unwrap();
        assert_eq!(trivial, GluingDatum::simply_connected(2, ss("A1")));
        let gm = GluingDatum::normalize(1, ss(""), 2, &[(vec![1], vec![])]).unwrap();
        assert_eq!(gm, GluingDatum::torus(1));
        let glued = GluingDatum::normalize(1, ss("A1"), 2, &[(vec![1], vec![1])]).unwrap();
        assert_eq!(glued, gl(2));
        assert_eq!(glued.h().order(), 2);
        assert_eq!(glued.k().order(), 2);
        assert_eq!(glued.k_modulus(), 2);
        // ⟨(i, −I)⟩ meets the torus in μ₂; dividing by it squares i to −1
        let d = GluingDatum::normalize(1, ss("A1"), 4, &[(vec![1], vec![1])]).unwrap();
        assert_eq!(d, gl(2));
        let d = GluingDatum::normalize(1, ss("A1"), 4, &[(vec![2], vec![0])]).unwrap();
        assert_eq!(d, GluingDatum::simply_connected(1, ss("A1")));
    }

    #[test]
    fn normalize_errors() {
        assert!(matches!(
            GluingDatum::normalize(1, ss("A1"), 0, &[]),
            Err(Error::BadModulus(_))
        ));
        assert!(matches!(
            GluingDatum::normalize(1, ss("A1"), 2, &[(vec![3], vec![1])]),
            Err(Error::BadModulus(_))
        ));
        assert!(matches!(
            GluingDatum::normalize(1, ss("A1"), 2, &[(vec![1], vec![2])]),
            Err(Error::InvalidDatum(_))
        ));
    }

    #[test]
    fn gl_versus_split_product() {
        let split = GluingDatum::simply_connected(1, ss("A1"));
        assert!(isomorphic(&gl(2), &split).unwrap().is_none());
        assert_eq!(isomorphic(&gl(2), &gl(2)).unwrap(), Some(vec![]));
        let raw = GluingDatum::new_raw(1, ss("A1"), {
            let amb = GluingAmbient::new(1, &ss("A1"));
            FinAbSubgroup::generated(&amb.group, &[vec![1, 1]])
        })
        .unwrap();
        assert!(isomorphic(&raw, &gl(2)).unwrap().is_some());
        assert_eq!(lie_algebra_invariant(&gl(2)), lie_algebra_invariant(&split));
    }

    #[test]
    fn names_of_small_groups() {
        let names: Vec<String> = enumerate_rank(2, &EnumerationConfig::default())
            .unwrap()
            .iter()
            .map(|d| d.name())
            .collect();
        for expected in [
            "Gm^2",
            "Gm×SL2",
            "Gm×PGL2",
            "GL2",
            "SL2×SL2",
            "PGL2×SL2",
            "SO4",
            "PGL2×PGL2",
            "SL3",
            "PGL3",
            "Sp4",
            "SO5",
            "G2",
        ] {
            assert!(
                names.contains(&expected.to_string()),
                "{expected} missing from {names:?}"
            );
        }
        assert_eq!(names.len(), 13);
    }

    #[test]
    fn small_rank_counts() {
        let cfg = EnumerationConfig::default();
        assert_eq!(
            enumerate_rank(0, &cfg).unwrap(),
            vec![GluingDatum::torus(0)]
        );
        let r1: Vec<String> = enumerate_rank(1, &cfg)
            .unwrap()
            .iter()
            .map(|d| d.name())
            .collect();
        assert_eq!(r1, vec!["Gm", "SL2", "PGL2"]);
        assert!(matches!(
            enumerate_rank(4, &cfg),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn character_lattices() {
        let torus = character_lattice(&GluingDatum::torus(3));
        assert_eq!(torus.lattice, Lattice::full(3));
        assert!(torus.roots.is_empty());
        let sl2 = character_lattice(&GluingDatum::simply_connected(0, ss("A1")));
        assert_eq!(sl2.lattice, Lattice::full(1));
        assert_eq!(
            sl2.roots,
            vec![vec![BigInt::from(-2)], vec![BigInt::from(2)]]
        );
        let pgl2 = character_lattice(&GluingDatum::semisimple(ss("A1"), &[vec![1]]).unwrap());
        assert_eq!(pgl2.lattice.index(), Some(BigInt::from(2)));
        let g = character_lattice(&gl(2));
        assert_eq!(g.lattice.index(), Some(BigInt::from(2)));
        // det = (1, 0) and the standard weight ε₁ = (1, 1)/2 … scaled: (χ, λ) with χ + λ even
        assert!(g.lattice.contains(&[BigInt::from(1), BigInt::from(1)]));
        assert!(!g.lattice.contains(&[BigInt::from(1), BigInt::from(0)]));
        assert!(g.lattice.contains(&[BigInt::from(2), BigInt::from(0)]));
    }

    #[test]
    fn fundamental_groups() {
        let sl2 = GluingDatum::simply_connected(0, ss("A1"));
        assert_eq!(fundamental_group(&sl2), (0, FinAb::trivial()));
        let pgl2 = GluingDatum::semisimple(ss("A1"), &[vec![1]]).unwrap();
        assert_eq!(fundamental_group(&pgl2).1.invariant_factors(), vec![2]);
        for m in 2..=5 {
            assert_eq!(fundamental_group(&gl(m)), (1, FinAb::trivial()), "GL{m}");
        }
        let split = GluingDatum::simply_connected(1, ss("A2"));
        assert_eq!(fundamental_group(&split), (1, FinAb::trivial()));
        let pgl = GluingDatum::simply_connected(2, ss("A1xA1"));
        assert_eq!(fundamental_group(&pgl).0, 2);
    }

    #[test]
    fn invariant_reports() {
        let t = invariants(&GluingDatum::torus(2));
        assert_eq!((t.dim, t.units, t.mh, t.dim_radical), (2, 2, 2, 2));
        let s = invariants(&GluingDatum::simply_connected(0, ss("A1")));
        assert_eq!((s.dim, s.units, s.mh), (3, 0, 3));
        for m in 2..=4 {
            let r = invariants(&gl(m));
            assert_eq!((r.dim, r.units, r.mh, r.dim_radical), (m * m, 1, m * m, 1));
            assert_eq!((r.pi1_free_rank, r.pi1_torsion.clone()), (1, vec![]));
        }
    }

    #[test]
    fn variety_predicates() {
        assert_eq!(
            variety_determines_group(&GluingDatum::torus(2)),
            (true, VarietyReason::Torus)
        );
        assert_eq!(
            variety_determines_group(&GluingDatum::simply_connected(0, ss("D4"))),
            (true, VarietyReason::SimplyConnected)
        );
        let so4 = GluingDatum::semisimple(ss("A1xA1"), &[vec![1, 1]]).unwrap();
        assert_eq!(
            variety_determines_group(&so4),
            (false, VarietyReason::NotGuaranteed)
        );
        let pgl3 = GluingDatum::semisimple(ss("A2"), &[vec![1]]).unwrap();
        assert_eq!(
            variety_determines_group(&pgl3),
            (true, VarietyReason::Simple)
        );
    }

    /// Cocharacter in standard coordinates of the diagonal torus of `GL_m`.
    #[allow(clippy::needless_range_loop)]
    fn standard_cocharacter(v: &[BigInt], m: usize, scale: u64) -> Vec<BigInt> {
        // (t/E)(1,…,1) + Σ xᵢ ((1ⁱ,0) − (i/m)(1,…,1)), computed times E·m
        let em = BigInt::from(scale) * BigInt::from(m as u64);
        let mut out = vec![&v[0] * BigInt::from(m as u64); m];
        for i in 1..m {
            let x = &v[i];
            for (j, o) in out.iter_mut().enumerate() {
                let mut add = -(x * BigInt::from(i as u64) * BigInt::from(scale));
                if j < i {
                    add += x * &em;
                }
                *o += add;
            }
        }
        out.into_iter()
            .map(|x| {
                assert!((&x % &em).is_zero());
                x / &em
            })
            .collect()
    }

    #[test]
    fn torus_split_of_gl() {
        for m in 2..=5 {
            let split = torus_split(&gl(m));
            assert_eq!(split.complement.len(), 1);
            let std = standard_cocharacter(&split.complement[0], m, split.scale);
            let mut e1 = vec![BigInt::zero(); m];
            e1[0] = BigInt::one();
            assert_eq!(std, e1, "GL{m}");
        }
    }

    #[test]
    fn torus_split_extremes() {
        let ss_split = torus_split(&GluingDatum::simply_connected(0, ss("A2")));
        assert!(ss_split.complement.is_empty());
        let t = torus_split(&GluingDatum::torus(2));
        assert_eq!(t.complement.len(), 2);
        assert_eq!(t.cocharacters, Lattice::full(2));
    }

    #[test]
    fn json_round_trip() {
        let d = gl(2);
        let text = d.to_json();
        assert_eq!(
            text,
            r#"{"torus_rank":1,"factors":["A1"],"H":[[1]],"K_modulus":2,"K":[[1]],"alpha":[[1]]}"#
        );
        assert_eq!(GluingDatum::from_json(&text).unwrap(), d);
        let split = GluingDatum::simply_connected(1, ss("A1"));
        assert_eq!(
            split.to_json(),
            r#"{"torus_rank":1,"factors":["A1"],"H":[],"K_modulus":1,"K":[],"alpha":[]}"#
        );
        for r in 0..=2 {
            for d in enumerate_rank(r, &EnumerationConfig::default()).unwrap() {
                assert_eq!(GluingDatum::from_json(&d.to_json()).unwrap(), d);
            }
        }
    }

    #[test]
    fn json_rejects_bad_data() {
        let bad_k =
            r#"{"torus_rank":1,"factors":["A1"],"H":[[1]],"K_modulus":2,"K":[],"alpha":[[1]]}"#;
        assert!(GluingDatum::from_json(bad_k).is_err());
        let bad_e =
            r#"{"torus_rank":1,"factors":["A1"],"H":[[1]],"K_modulus":4,"K":[],"alpha":[[0]]}"#;
        assert!(GluingDatum::from_json(bad_e).is_err());
        let bad_type =
            r#"{"torus_rank":0,"factors":["Q1"],"H":[],"K_modulus":1,"K":[],"alpha":[]}"#;
        assert!(matches!(
            GluingDatum::from_json(bad_type),
            Err(Error::InvalidType(_))
        ));
    }
}
