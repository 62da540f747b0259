//! Simple Dynkin types and the data of the simply connected simple group of
//! each type.
//!
//! Nodes follow Bourbaki's numbering. Cartan entries are
//! `A[i][j] = ⟨αᵢ, αⱼ^∨⟩`, so row `i` holds the simple root `αᵢ` in
//! fundamental-weight coordinates and column `j` holds the coroot `αⱼ^∨` in
//! fundamental-coweight coordinates. The center of the simply connected group
//! is the cokernel `P^∨ / Q^∨ = ℤ^ℓ / colspan(A)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finab::{FinAb, FinAbElem, FinAbHom};
use crate::intlinalg::{smith_normal_form, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Dynkin type with its legal rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{family:?}{rank}")));
        }
        Ok(SimpleType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All simple types of the given rank, in canonical order.
    pub fn all_of_rank(rank: usize) -> Vec<SimpleType> {
        use Family::*;
        [A, B, C, D, E, F, G]
            .into_iter()
            .filter_map(|f| SimpleType::new(f, rank).ok())
            .collect()
    }

    /// Symmetric Gram matrix of the simple roots, scaled to integers.
    #[allow(clippy::needless_range_loop)]
    fn gram(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut g = vec![vec![0i64; l]; l];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..l {
                    g[i][i] = 2;
                }
                for i in 0..l.saturating_sub(1) {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Family::B => {
                // αₗ short
                for i in 0..l {
                    g[i][i] = if i == l - 1 { 2 } else { 4 };
                }
                for i in 0..l - 1 {
                    link(&mut g, i, i + 1, -2);
                }
            }
            Family::C => {
                // αₗ long
                for i in 0..l {
                    g[i][i] = if i == l - 1 { 4 } else { 2 };
                }
                for i in 0..l - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, l - 2, l - 1, -2);
            }
            Family::D => {
                for i in 0..l {
                    g[i][i] = 2;
                }
                for i in 0..l - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, l - 3, l - 1, -1);
            }
            Family::E => {
                for i in 0..l {
                    g[i][i] = 2;
                }
                // 1-3-4-5-6(-7(-8)), 2-4
                link(&mut g, 0, 2, -1);
                link(&mut g, 1, 3, -1);
                for i in 2..l - 1 {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Family::F => {
                // α₁, α₂ long; α₃, α₄ short
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(&mut g, 0, 1, -2);
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -1);
            }
            Family::G => {
                // α₁ short
                g[0][0] = 2;
                g[1][1] = 6;
                link(&mut g, 0, 1, -3);
            }
        }
        g
    }

    /// Cartan matrix `A[i][j] = 2(αᵢ, αⱼ)/(αⱼ, αⱼ)`.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let g = self.gram();
        let l = self.rank;
        let rows: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| 2 * g[i][j] / g[j][j]).collect())
            .collect();
        IntMatrix::from_rows(l, &rows)
    }

    pub fn generate_roots(&self) -> RootSystem {
        RootSystem::generate(*self)
    }

    pub fn dimension(&self) -> usize {
        self.rank + self.generate_roots().roots.len()
    }

    pub fn center(&self) -> FinAb {
        self.center_data().group
    }

    pub fn center_data(&self) -> SimpleCenter {
        SimpleCenter::new(*self)
    }

    /// Automorphisms of the Dynkin diagram as node permutations
    /// (`perm[i]` is the image of node `i`), identity first, sorted.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let a = self.cartan_matrix();
        let l = self.rank;
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(l);
        let mut used = vec![false; l];
        extend_automorphism(&a, &mut perm, &mut used, &mut out);
        out.sort();
        out
    }

    pub fn is_diagram_automorphism(&self, perm: &[usize]) -> bool {
        let l = self.rank;
        if perm.len() != l {
            return false;
        }
        let mut seen = vec![false; l];
        for &p in perm {
            if p >= l || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        let a = self.cartan_matrix();
        (0..l).all(|i| (0..l).all(|j| a[(perm[i], perm[j])] == a[(i, j)]))
    }

    /// Induced automorphism of the center.
    pub fn center_action(&self, perm: &[usize]) -> Result<FinAbHom> {
        if !self.is_diagram_automorphism(perm) {
            return Err(Error::NotDiagramAutomorphism {
                ty: self.to_string(),
                perm: perm.to_vec(),
            });
        }
        self.center_data().action(perm)
    }
}

fn extend_automorphism(
    a: &IntMatrix,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let l = used.len();
    let i = perm.len();
    if i == l {
        out.push(perm.clone());
        return;
    }
    for p in 0..l {
        if used[p] {
            continue;
        }
        let consistent = a[(p, p)] == a[(i, i)]
            && (0..i).all(|j| a[(p, perm[j])] == a[(i, j)] && a[(perm[j], p)] == a[(j, i)]);
        if consistent {
            used[p] = true;
            perm.push(p);
            extend_automorphism(a, perm, used, out);
            perm.pop();
            used[p] = false;
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Roots of a simple type in simple-root coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: SimpleType,
    pub cartan: IntMatrix,
    pub roots: BTreeSet<Vec<i64>>,
}

impl RootSystem {
    /// Closure of the simple roots under the simple reflections
    /// `sᵢ(β) = β − ⟨β, αᵢ^∨⟩ αᵢ`.
    pub fn generate(ty: SimpleType) -> Self {
        let cartan = ty.cartan_matrix();
        let l = ty.rank();
        let a: Vec<Vec<i64>> = cartan.to_i64_rows();
        let mut roots = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..l {
            let mut e = vec![0i64; l];
            e[i] = 1;
            roots.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..l {
                let pairing: i64 = (0..l).map(|j| beta[j] * a[j][i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= pairing;
                if roots.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        RootSystem { ty, cartan, roots }
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().all(|&x| x >= 0))
    }
}

/// Center of a simply connected simple group with its coordinate maps to and
/// from fundamental coweights.
#[derive(Clone, Debug)]
pub struct SimpleCenter {
    pub ty: SimpleType,
    pub group: FinAb,
    /// `k × ℓ`: coweight coordinates to center coordinates.
    to_center: IntMatrix,
    /// `ℓ × k`: center coordinates to a coweight lift.
    lift: IntMatrix,
}

impl SimpleCenter {
    fn new(ty: SimpleType) -> Self {
        let a = ty.cartan_matrix();
        let smith = smith_normal_form(&a);
        let idx: Vec<usize> = smith
            .diagonal()
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > BigInt::from(1))
            .map(|(i, _)| i)
            .collect();
        let moduli: Vec<u64> = idx
            .iter()
            .map(|&i| smith.d[(i, i)].to_u64().expect("small center"))
            .collect();
        let uinv = smith.u.unimodular_inverse().expect("unimodular");
        let mut center = SimpleCenter {
            ty,
            group: FinAb::new(moduli).expect("moduli > 1"),
            to_center: smith.u.select_rows(&idx),
            lift: uinv.select_cols(&idx),
        };
        center.normalize_cyclic();
        center
    }

    /// For a cyclic center, rescales the coordinate so that the first
    /// fundamental coweight generating the center has class 1.
    fn normalize_cyclic(&mut self) {
        if self.group.ngens() != 1 {
            return;
        }
        let d = self.group.moduli()[0];
        let l = self.ty.rank();
        let unit = (0..l)
            .map(|i| {
                let mut e = vec![BigInt::zero(); l];
                e[i] = BigInt::from(1);
                self.class_of(&e)[0]
            })
            .find(|&u| num_integer::gcd(u, d) == 1)
            .expect("some fundamental coweight generates a cyclic center");
        let (_, inv, _) = crate::intlinalg::ext_gcd(&BigInt::from(unit), &BigInt::from(d));
        let dd = BigInt::from(d);
        for j in 0..l {
            let x = &self.to_center[(0, j)] * &inv;
            self.to_center[(0, j)] = ((x % &dd) + &dd) % &dd;
        }
        for i in 0..l {
            let x = &self.lift[(i, 0)] * BigInt::from(unit);
            self.lift[(i, 0)] = x;
        }
    }

    /// Center element represented by a coweight.
    pub fn class_of(&self, coweight: &[BigInt]) -> FinAbElem {
        let v: Vec<i128> = self
            .to_center
            .mul_vec(coweight)
            .iter()
            .map(|x| x.to_i128().unwrap())
            .collect();
        self.group.reduce(&v)
    }

    /// Some coweight lifting the center element.
    pub fn lift(&self, a: &[u64]) -> Vec<BigInt> {
        let v: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        self.lift.mul_vec(&v)
    }

    /// The fundamental coweight of smallest index in the class of `a`, or zero
    /// for the identity.
    pub fn fundamental_representative(&self, a: &[u64]) -> Vec<BigInt> {
        let l = self.ty.rank();
        let zero = vec![BigInt::zero(); l];
        if a.iter().all(|&x| x == 0) {
            return zero;
        }
        for i in 0..l {
            let mut e = zero.clone();
            e[i] = BigInt::from(1);
            if self.class_of(&e) == a {
                return e;
            }
        }
        self.lift(a)
    }

    fn action(&self, perm: &[usize]) -> Result<FinAbHom> {
        let l = self.ty.rank();
        let mut p = IntMatrix::zeros(l, l);
        for (i, &pi) in perm.iter().enumerate() {
            p[(pi, i)] = BigInt::from(1);
        }
        let t = self.to_center.mul(&p).mul(&self.lift);
        FinAbHom::from_matrix(&self.group, &t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_ranges() {
        assert_eq!(t("D4").to_string(), "D4");
        assert!("C2".parse::<SimpleType>().is_err());
        assert!("D3".parse::<SimpleType>().is_err());
        assert!("E9".parse::<SimpleType>().is_err());
        assert!("X1".parse::<SimpleType>().is_err());
        assert!("B2".parse::<SimpleType>().is_ok());
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(t("A1").cartan_matrix(), IntMatrix::from_i64(&[&[2]]));
        assert_eq!(
            t("A2").cartan_matrix(),
            IntMatrix::from_i64(&[&[2, -1], &[-1, 2]])
        );
        assert_eq!(
            t("G2").cartan_matrix(),
            IntMatrix::from_i64(&[&[2, -1], &[-3, 2]])
        );
        assert_eq!(
            t("B3").cartan_matrix(),
            IntMatrix::from_i64(&[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 2]])
        );
        assert_eq!(
            t("F4").cartan_matrix(),
            IntMatrix::from_i64(&[
                &[2, -1, 0, 0],
                &[-1, 2, -2, 0],
                &[0, -1, 2, -1],
                &[0, 0, -1, 2]
            ])
        );
    }

    #[test]
    fn root_counts() {
        assert_eq!(t("A1").generate_roots().roots.len(), 2);
        assert_eq!(t("A1").dimension(), 3);
        assert_eq!(t("G2").generate_roots().roots.len(), 12);
        assert_eq!(t("G2").dimension(), 14);
        assert_eq!(t("D4").generate_roots().roots.len(), 24);
        assert_eq!(t("D4").dimension(), 28);
    }

    #[test]
    fn centers() {
        assert_eq!(t("A3").center().invariant_factors(), vec![4]);
        assert_eq!(t("D4").center().invariant_factors(), vec![2, 2]);
        assert_eq!(t("D5").center().invariant_factors(), vec![4]);
        assert!(t("E8").center().is_trivial());
        assert_eq!(t("E6").center().invariant_factors(), vec![3]);
    }

    #[test]
    fn automorphism_group_orders() {
        let order = |s: &str| t(s).diagram_automorphisms().len();
        assert_eq!(order("A1"), 1);
        assert_eq!(order("A4"), 2);
        assert_eq!(order("B3"), 1);
        assert_eq!(order("C4"), 1);
        assert_eq!(order("D4"), 6);
        assert_eq!(order("D6"), 2);
        assert_eq!(order("E6"), 2);
        assert_eq!(order("E7"), 1);
        assert_eq!(order("G2"), 1);
        assert_eq!(t("A3").diagram_automorphisms()[0], vec![0, 1, 2]);
    }

    #[test]
    fn center_action_rejects_non_automorphism() {
        assert!(matches!(
            t("B3").center_action(&[2, 1, 0]),
            Err(Error::NotDiagramAutomorphism { .. })
        ));
        assert!(t("A2").center_action(&[0, 0]).is_err());
    }

    #[test]
    fn cyclic_centers_are_normalized() {
        for s in ["A1", "A4", "B3", "C3", "D5", "E6", "E7"] {
            let c = t(s).center_data();
            let l = t(s).rank();
            let first = (0..l)
                .map(|i| c.class_of(&fundamental(l, i)))
                .find(|a| c.group.element_order(a) == c.group.order() as u64)
                .unwrap();
            assert_eq!(first, vec![1], "{s}");
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let ty = t("D5");
        let id = ty.center_action(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(id, FinAbHom::identity(&ty.center()));
    }

    #[test]
    fn classes_and_lifts_agree() {
        for ty in ["A3", "D4", "D5", "E6", "E7", "B3", "C3"] {
            let c = t(ty).center_data();
            for a in c.group.elements() {
                assert_eq!(c.class_of(&c.lift(&a)), a);
                assert_eq!(c.class_of(&c.fundamental_representative(&a)), a);
            }
        }
    }

    fn fundamental(l: usize, i: usize) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); l];
        e[i] = BigInt::from(1);
        e
    }

    #[test]
    fn dimensions_match_closed_forms() {
        for l in 1..=8usize {
            assert_eq!(
                SimpleType::new(Family::A, l).unwrap().dimension(),
                l * (l + 2)
            );
        }
        for l in 2..=7usize {
            assert_eq!(
                SimpleType::new(Family::B, l).unwrap().dimension(),
                l * (2 * l + 1)
            );
        }
        for l in 3..=7usize {
            assert_eq!(
                SimpleType::new(Family::C, l).unwrap().dimension(),
                l * (2 * l + 1)
            );
        }
        for l in 4..=8usize {
            assert_eq!(
                SimpleType::new(Family::D, l).unwrap().dimension(),
                l * (2 * l - 1)
            );
        }
        for (s, d) in [("E6", 78), ("E7", 133), ("E8", 248), ("F4", 52), ("G2", 14)] {
            assert_eq!(t(s).dimension(), d, "{s}");
        }
    }

    #[test]
    fn root_system_invariants() {
        for s in ["A3", "B4", "C3", "D5", "E6", "F4", "G2"] {
            let rs = t(s).generate_roots();
            assert_eq!(rs.roots.len() % 2, 0);
            for r in &rs.roots {
                let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                assert!(rs.roots.contains(&neg));
                // every root is positive or negative
                assert!(r.iter().all(|&x| x >= 0) || r.iter().all(|&x| x <= 0));
            }
            assert_eq!(rs.positive_roots().count() * 2, rs.roots.len());
        }
    }

    /// Independent oracle for simply laced types: roots are exactly the
    /// nonnegative root-lattice vectors of squared length 2, up to sign.
    #[test]
    fn simply_laced_roots_match_norm_oracle() {
        for s in ["A2", "A4", "D4", "D5", "E6"] {
            let ty = t(s);
            let g = ty.gram();
            let l = ty.rank();
            let mut count = 0usize;
            let mut v = vec![0i64; l];
            loop {
                let norm: i64 = (0..l)
                    .map(|i| (0..l).map(|j| v[i] * g[i][j] * v[j]).sum::<i64>())
                    .sum();
                if norm == 2 {
                    count += 1;
                }
                let mut i = 0;
                while i < l && v[i] == 3 {
                    v[i] = 0;
                    i += 1;
                }
                if i == l {
                    break;
                }
                v[i] += 1;
            }
            assert_eq!(ty.generate_roots().positive_roots().count(), count, "{s}");
        }
    }

    /// G2 cross-check by brute-force Weyl orbits in explicit coordinates of
    /// the plane x + y + z = 0.
    #[test]
    fn g2_roots_by_weyl_orbits() {
        let short = [1i64, -1, 0];
        let long = [-2i64, 1, 1];
        let reflect = |v: [i64; 3], a: [i64; 3]| {
            let dot = |x: [i64; 3], y: [i64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
            let c = 2 * dot(v, a) / dot(a, a);
            [v[0] - c * a[0], v[1] - c * a[1], v[2] - c * a[2]]
        };
        let mut orbit: BTreeSet<[i64; 3]> = [short, long].into_iter().collect();
        loop {
            let mut next = orbit.clone();
            for &v in &orbit {
                next.insert(reflect(v, short));
                next.insert(reflect(v, long));
            }
            if next.len() == orbit.len() {
                break;
            }
            orbit = next;
        }
        assert_eq!(orbit.len(), t("G2").generate_roots().roots.len());
    }

    #[test]
    fn center_order_is_cartan_determinant() {
        for l in 1..=8 {
            for ty in SimpleType::all_of_rank(l) {
                let det = ty.cartan_matrix().determinant();
                assert_eq!(BigInt::from(ty.center().order()), det, "{ty}");
            }
        }
    }

    #[test]
    fn center_action_is_a_homomorphism() {
        for s in ["A2", "A3", "A5", "D4", "D5", "D6", "E6"] {
            let ty = t(s);
            let autos = ty.diagram_automorphisms();
            for p in &autos {
                for q in &autos {
                    let pq: Vec<usize> = (0..ty.rank()).map(|i| p[q[i]]).collect();
                    let lhs = ty.center_action(&pq).unwrap();
                    let rhs = ty
                        .center_action(p)
                        .unwrap()
                        .compose(&ty.center_action(q).unwrap());
                    assert_eq!(lhs, rhs, "{s}");
                }
            }
        }
    }

    #[test]
    fn d4_triality_cycles_involutions() {
        let ty = t("D4");
        let c = ty.center_data();
        let invols: Vec<FinAbElem> = [0, 2, 3]
            .iter()
            .map(|&i| c.class_of(&fundamental(4, i)))
            .collect();
        let cycle = ty.center_action(&[2, 1, 3, 0]).unwrap();
        assert_eq!(cycle.apply(&invols[0]), invols[1]);
        assert_eq!(cycle.apply(&invols[1]), invols[2]);
        assert_eq!(cycle.apply(&invols[2]), invols[0]);
    }

    #[test]
    fn d6_swap_exchanges_half_spin_classes() {
        let ty = t("D6");
        let c = ty.center_data();
        let vector = c.class_of(&fundamental(6, 0));
        let half1 = c.class_of(&fundamental(6, 4));
        let half2 = c.class_of(&fundamental(6, 5));
        let swap = ty.center_action(&[0, 1, 2, 3, 5, 4]).unwrap();
        assert_eq!(swap.apply(&vector), vector);
        assert_eq!(swap.apply(&half1), half2);
        assert_eq!(swap.apply(&half2), half1);
    }
}
