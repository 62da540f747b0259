//! Exact integer matrix algebra.
//!
//! Everything here works over arbitrary-precision integers. The two normal
//! forms used throughout the crate are:
//!
//! * the row-style Hermite normal form: nonzero rows in echelon shape, pivots
//!   positive, entries above a pivot reduced into `[0, pivot)`. Two generator
//!   matrices span the same sublattice iff their Hermite forms coincide.
//! * the Smith normal form `U·M·V = D` with unimodular `U`, `V`, a diagonal
//!   `D` with nonnegative entries and `d₁ | d₂ | …`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(cols, &owned)
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Entries as `i64`, panicking on overflow. Intended for small outputs.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| i64::try_from(x).expect("entry exceeds i64"))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * &self[(i, j)];
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert!(
            self.rows == 0 || other.rows == 0 || self.cols == other.cols,
            "column mismatch in vstack"
        );
        let cols = if self.rows == 0 {
            other.cols
        } else {
            self.cols
        };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    /// Replaces rows (a, b) by (x·a + y·b, u·a + v·b).
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let ra = self.data[a * self.cols + j].clone();
            let rb = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = x * &ra + y * &rb;
            self.data[b * self.cols + j] = u * &ra + v * &rb;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotUnimodular {
                det: "non-square".into(),
            });
        }
        let det = self.determinant();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        // U·M = HNF(M) = I for unimodular M.
        let (h, u) = hermite_with_transform(self);
        debug_assert_eq!(h, IntMatrix::identity(self.rows));
        Ok(u.submatrix_rows(0, self.rows))
    }

    fn submatrix_rows(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        IntMatrix::from_rows(self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self[(i, j)].clone()).collect())
            .collect();
        IntMatrix::from_rows(idx.len(), &rows)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Extended gcd with a nonnegative gcd: returns `(g, x, y)` with `x·a + y·b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Row-style Hermite normal form together with a unimodular `U` such that
/// `U·M` is the Hermite form stacked over zero rows.
///
/// The returned Hermite form has exactly `rank(M)` rows.
pub fn hermite_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pr = 0;
    for col in 0..a.cols {
        if pr == a.rows {
            break;
        }
        for i in pr + 1..a.rows {
            if a[(i, col)].is_zero() {
                continue;
            }
            let x_a = a[(pr, col)].clone();
            let x_b = a[(i, col)].clone();
            let (g, x, y) = ext_gcd(&x_a, &x_b);
            let p = -(&x_b / &g);
            let q = &x_a / &g;
            a.combine_rows(pr, i, &x, &y, &p, &q);
            u.combine_rows(pr, i, &x, &y, &p, &q);
        }
        if a[(pr, col)].is_zero() {
            continue;
        }
        if a[(pr, col)].is_negative() {
            a.negate_row(pr);
            u.negate_row(pr);
        }
        let piv = a[(pr, col)].clone();
        for i in 0..pr {
            let q = a[(i, col)].div_floor(&piv);
            if !q.is_zero() {
                let f = -q;
                a.add_row_multiple(i, pr, &f);
                u.add_row_multiple(i, pr, &f);
            }
        }
        pr += 1;
    }
    (a.submatrix_rows(0, pr), u)
}

/// Canonical row-style Hermite normal form; zero rows are dropped.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    hermite_with_transform(m).0
}

/// Result of [`smith_normal_form`]: `u · m · v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d₁, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Smith { u, d: a, v };
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let piv = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&piv);
                let f = -q;
                a.add_row_multiple(i, t, &f);
                u.add_row_multiple(i, t, &f);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&piv);
                let f = -q;
                a.add_col_multiple(j, t, &f);
                v.add_col_multiple(j, t, &f);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d: a, v }
}

/// Structure of a finitely generated abelian group `ℤ^r / im(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelInvariants {
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

/// Invariant factors of `ℤ^rows / column-span(M)`.
pub fn cokernel_invariants(m: &IntMatrix) -> CokernelInvariants {
    let smith = smith_normal_form(m);
    let diag = smith.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    CokernelInvariants {
        torsion: diag.into_iter().filter(|x| *x > BigInt::one()).collect(),
        free_rank: m.rows - rank,
    }
}

/// Basis (as rows) of the integer right kernel `{x : M·x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let smith = smith_normal_form(m);
    let rank = smith.rank();
    let idx: Vec<usize> = (rank..m.cols).collect();
    hermite_normal_form(&smith.v.select_cols(&idx).transpose())
}

/// Sublattice of `ℤ^ambient_rank`, stored by its Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(ℤ^{}, {})", self.ambient_rank, self.basis)
    }
}

impl Lattice {
    pub fn from_generators(ambient_rank: usize, generators: &IntMatrix) -> Self {
        if generators.rows == 0 {
            return Self::zero(ambient_rank);
        }
        assert_eq!(generators.cols, ambient_rank, "generator length mismatch");
        Lattice {
            ambient_rank,
            basis: hermite_normal_form(generators),
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(ambient_rank: usize, rows: &[Vec<T>]) -> Self {
        Self::from_generators(ambient_rank, &IntMatrix::from_rows(ambient_rank, rows))
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: IntMatrix::zeros(0, ambient_rank),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_rank);
        let mut rem = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        let mut col = 0;
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let p = (col..self.ambient_rank)
                .find(|&j| !row[j].is_zero())
                .expect("zero row in Hermite basis");
            if rem[col..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rem[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, b) in rem.iter_mut().zip(row) {
                *x -= &q * b;
            }
            coeffs.push(q);
            col = p + 1;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_generators(self.ambient_rank, &self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.ambient_rank);
        }
        // x·B₁ = y·B₂  ⇔  (x, y)·[B₁; −B₂] = 0
        let mut neg = other.basis.clone();
        for x in neg.data.iter_mut() {
            *x = -&*x;
        }
        let stacked = self.basis.vstack(&neg);
        let kernel = integer_kernel(&stacked.transpose());
        let r1 = self.rank();
        let gens: Vec<Vec<BigInt>> = kernel
            .row_vecs()
            .iter()
            .map(|xy| self.basis.left_mul_vec(&xy[..r1]))
            .collect();
        Lattice::from_rows(self.ambient_rank, &gens)
    }

    /// Index `[ℤ^r : L]` for a full-rank lattice.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.ambient_rank {
            return None;
        }
        Some(
            (0..self.rank())
                .map(|i| self.basis[(i, i)].clone())
                .product(),
        )
    }

    /// Torsion of `ℤ^r / L`.
    pub fn quotient_torsion(&self) -> Vec<BigInt> {
        cokernel_invariants(&self.basis.transpose()).torsion
    }

    pub fn is_saturated(&self) -> bool {
        self.quotient_torsion().is_empty()
    }
}

/// Returns `C` with `L ⊕ C = ℤ^r`.
///
/// Standard basis vectors are tried first, in order; any remaining directions
/// are completed from the Smith transform of the enlarged lattice.
pub fn saturated_complement(l: &Lattice) -> Result<Lattice> {
    let torsion = l.quotient_torsion();
    if !torsion.is_empty() {
        return Err(Error::NotSaturated {
            torsion: torsion.iter().map(ToString::to_string).collect(),
        });
    }
    let r = l.ambient_rank();
    let mut current = l.clone();
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..r {
        if current.rank() == r {
            break;
        }
        let mut e = vec![BigInt::zero(); r];
        e[j] = BigInt::one();
        let candidate = current.sum(&Lattice::from_rows(r, &[e.clone()]));
        if candidate.rank() == current.rank() + 1 && candidate.is_saturated() {
            current = candidate;
            chosen.push(e);
        }
    }
    if current.rank() < r {
        // rows of B generate the same lattice as the first k rows of V⁻¹
        let smith = smith_normal_form(current.basis());
        let vinv = smith.v.unimodular_inverse()?;
        for i in current.rank()..r {
            chosen.push(vinv.row(i).to_vec());
        }
    }
    Ok(Lattice::from_rows(r, &chosen))
}

/// The `a ↦ a′` operator for characteristic `p`: strips every factor of `p`
/// from `a`. Identity when `p = 0` or `a = 0`.
pub fn prime_to_p_part(a: &BigInt, p: u64) -> BigInt {
    if p == 0 || a.is_zero() {
        return a.clone();
    }
    let p = BigInt::from(p);
    let mut a = a.clone();
    while a.is_multiple_of(&p) {
        a /= &p;
    }
    a
}

/// Membership in the set of reduced diagonal matrices for characteristic `p`:
/// diagonal, with a divisibility chain along the diagonal, and every diagonal
/// entry fixed by [`prime_to_p_part`].
pub fn is_reduced_diagonal(m: &IntMatrix, p: u64) -> bool {
    if !m.is_diagonal() {
        return false;
    }
    let diag: Vec<BigInt> = (0..m.rows().min(m.cols()))
        .map(|i| m[(i, i)].clone())
        .collect();
    let chain = diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        }
    });
    chain && diag.iter().all(|d| prime_to_p_part(d, p) == *d)
}

/// Named generators of `GL_n(ℤ)`, in the fixed search order used by the
/// orbit searches:
///
/// 1. `R(i,j)`: row `j` replaced by `eᵢ − eⱼ` (the abelianization of the
///    Nielsen move `xⱼ ↦ xᵢ·xⱼ⁻¹`),
/// 2. `E(i,j)`: row `i` gains `+eⱼ`,
/// 3. `P(i,i+1)`: adjacent transpositions,
/// 4. `N(1)`: negation of the first coordinate.
///
/// Indices in names are 1-based.
pub fn gl_generators(n: usize) -> Vec<(String, IntMatrix)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = IntMatrix::identity(n);
                m[(j, j)] = BigInt::from(-1);
                m[(j, i)] = BigInt::one();
                out.push((format!("R({},{})", i + 1, j + 1), m));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = IntMatrix::identity(n);
                m[(i, j)] = BigInt::one();
                out.push((format!("E({},{})", i + 1, j + 1), m));
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let mut m = IntMatrix::identity(n);
        m.swap_rows(i, i + 1);
        out.push((format!("P({},{})", i + 1, i + 2), m));
    }
    if n > 0 {
        let mut m = IntMatrix::identity(n);
        m[(0, 0)] = BigInt::from(-1);
        out.push(("N(1)".to_string(), m));
    }
    out
}
