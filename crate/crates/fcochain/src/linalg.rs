//! Exact dense linear algebra over the rationals.
//!
//! Every algebraic law checked by this crate is an identity of matrices, so
//! the substrate works with arbitrary-precision rationals and never with
//! floating point. All reductions are deterministic: pivots are chosen as the
//! first nonzero entry in column order, and derived bases (kernels, images,
//! quotients) are read off the reduced row echelon form with free columns
//! taken in increasing order. Identical inputs therefore yield bit-identical
//! outputs, which downstream functor bookkeeping depends on.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

/// `p/q` as a [`Rat`].
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer `n` as a [`Rat`].
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Dense row-major matrix of rationals. Zero-sized dimensions are legal and
/// show up constantly (kernels of injective maps, zero modules).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Column vector with a single 1 at position `i`.
    pub fn unit_column(dim: usize, i: usize) -> Self {
        let mut m = Self::zero(dim, 1);
        m.set(i, 0, Rat::one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    /// Matrix product. Skips zero entries of `self`, which matters a lot for
    /// the block-sparse action matrices of truncated repetitive algebras.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul shape");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Column `c` as a `rows x 1` matrix.
    pub fn column(&self, c: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self.at(i, c).clone())
    }

    /// Selects the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.at(i, cols[j]).clone())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack shape");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack shape");
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn hstack_all(parts: &[Self]) -> Self {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zero(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack_all shape");
            for i in 0..rows {
                for j in 0..p.cols {
                    out.set(i, off + j, p.at(i, j).clone());
                }
            }
            off += p.cols;
        }
        out
    }

    pub fn vstack_all(parts: &[Self]) -> Self {
        let cols = parts.first().map_or(0, |m| m.cols);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Self::zero(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack_all shape");
            for i in 0..p.rows {
                for j in 0..cols {
                    out.set(off + i, j, p.at(i, j).clone());
                }
            }
            off += p.rows;
        }
        out
    }

    pub fn block_diag(parts: &[Self]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zero(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.set(ro + i, co + j, p.at(i, j).clone());
                }
            }
            ro += p.rows;
            co += p.cols;
        }
        out
    }

    /// Kronecker product `self (x) other`, row-blocks of `self` major.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.at(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Row-major flattening as a column vector; the fixed convention for all
    /// vectorized linear systems in this crate.
    pub fn vectorize(&self) -> Self {
        Self {
            rows: self.rows * self.cols,
            cols: 1,
            entries: self.entries.clone(),
        }
    }

    pub fn unvectorize(rows: usize, cols: usize, v: &Self) -> Self {
        assert_eq!(v.cols, 1, "unvectorize wants a column");
        assert_eq!(v.rows, rows * cols, "unvectorize shape");
        Self {
            rows,
            cols,
            entries: v.entries.clone(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m.at(row, col).recip();
            for j in col..m.cols {
                let v = m.at(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for j in col..m.cols {
                    let v = m.at(r, j) - &f * m.at(row, j);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one column per free variable, free variables
    /// taken in increasing column order of the reduced row echelon form.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Rat::one());
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, -r.at(pi, fc).clone());
            }
        }
        out
    }

    /// Pivot columns of `self`, a deterministic basis of the column space.
    pub fn image_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let inv = solve_linear(self, &Self::identity(self.rows)).map_err(|_| Error::NotInvertible)?;
        if inv.mul(self).is_identity() {
            Ok(inv)
        } else {
            Err(Error::NotInvertible)
        }
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Solves `a * x = b`, choosing the solution with all free variables zero.
/// `b` may have several columns. Errors with [`Error::NoSolution`] when some
/// column of `b` is outside the column space of `a`.
pub fn solve_linear(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    assert_eq!(a.rows, b.rows, "solve_linear shape");
    let (r, pivots) = a.hstack(b).rref();
    if pivots.iter().any(|&c| c >= a.cols) {
        return Err(Error::NoSolution);
    }
    let mut x = ExactMatrix::zero(a.cols, b.cols);
    for (pi, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.at(pi, a.cols + j).clone());
        }
    }
    Ok(x)
}

/// A finite-dimensional quotient space presented by explicit projection and
/// section matrices. The quotient basis consists of the classes of the
/// standard basis vectors at the non-pivot coordinates of the row-reduced
/// relation span, so the presentation is canonical for a given relation span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientData {
    pub ambient_dim: usize,
    /// Columns form a canonical basis of the relation subspace.
    pub relation_basis: ExactMatrix,
    /// ambient -> quotient.
    pub projection: ExactMatrix,
    /// quotient -> ambient, a right inverse of `projection`.
    pub section: ExactMatrix,
    pub quotient_dim: usize,
}

/// Builds the quotient of `k^ambient_dim` by the column span of `relations`.
pub fn quotient_space(ambient_dim: usize, relations: &ExactMatrix) -> Result<QuotientData> {
    if relations.rows != ambient_dim {
        return Err(Error::ShapeMismatch(format!(
            "relations live in dimension {}, ambient is {}",
            relations.rows, ambient_dim
        )));
    }
    // Row-reduce the relation span: rows of `r` are a canonical basis of the
    // subspace, pivot columns are ambient coordinates.
    let (r, pivots) = relations.transpose().rref();
    let rank = pivots.len();
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let qdim = ambient_dim - rank;

    let mut projection = ExactMatrix::zero(qdim, ambient_dim);
    for (j, &fc) in free.iter().enumerate() {
        projection.set(j, fc, Rat::one());
        for (pi, &pc) in pivots.iter().enumerate() {
            projection.set(j, pc, -r.at(pi, fc).clone());
        }
    }
    let mut section = ExactMatrix::zero(ambient_dim, qdim);
    for (j, &fc) in free.iter().enumerate() {
        section.set(fc, j, Rat::one());
    }
    let mut relation_basis = ExactMatrix::zero(ambient_dim, rank);
    for (pi, _) in pivots.iter().enumerate() {
        for c in 0..ambient_dim {
            relation_basis.set(c, pi, r.at(pi, c).clone());
        }
    }
    Ok(QuotientData {
        ambient_dim,
        relation_basis,
        projection,
        section,
        quotient_dim: qdim,
    })
}

/// Sum of absolute values of all entries; handy to detect blowup in tests.
pub fn entry_weight(m: &ExactMatrix) -> Rat {
    m.entries.iter().map(Signed::abs).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::new(rows, cols, vals.iter().map(|&v| rint(v)).collect()).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = ExactMatrix::identity(2).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (2, 0));
    }

    #[test]
    fn kernel_of_zero_is_identity() {
        let k = ExactMatrix::zero(2, 3).kernel_basis();
        assert_eq!(k, ExactMatrix::identity(3));
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        // Hand row reduction: [[1,2],[2,4]] ~ [[1,2],[0,0]], free column 1,
        // kernel vector (-2, 1).
        let a = m(2, 2, &[1, 2, 2, 4]);
        let k = a.kernel_basis();
        assert_eq!(k, m(2, 1, &[-2, 1]));
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_with_identity_returns_rhs() {
        let b = m(2, 1, &[5, -7]);
        assert_eq!(solve_linear(&ExactMatrix::identity(2), &b).unwrap(), b);
    }

    #[test]
    fn solve_zero_system() {
        let x = solve_linear(&ExactMatrix::zero(2, 2), &ExactMatrix::zero(2, 1)).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn solve_detects_inconsistency() {
        // rank [a] = 1, rank [a|b] = 2, so no solution.
        let a = m(2, 1, &[1, 2]);
        let b = m(2, 1, &[1, 1]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.hstack(&b).rank(), 2);
        assert!(matches!(solve_linear(&a, &b), Err(Error::NoSolution)));
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let q = quotient_space(3, &ExactMatrix::zero(3, 0)).unwrap();
        assert_eq!(q.quotient_dim, 3);
        assert_eq!(q.projection, ExactMatrix::identity(3));
    }

    #[test]
    fn quotient_by_everything_is_zero() {
        let q = quotient_space(2, &ExactMatrix::identity(2)).unwrap();
        assert_eq!(q.quotient_dim, 0);
    }

    #[test]
    fn quotient_by_one_relation() {
        // rank 1 relation in ambient 3: quotient dimension 3 - 1 = 2.
        let rel = m(3, 1, &[1, 1, 0]);
        let q = quotient_space(3, &rel).unwrap();
        assert_eq!(q.quotient_dim, 2);
        assert!(q.projection.mul(&rel).is_zero());
        assert!(q.projection.mul(&q.section).is_identity());
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix::from_fn(rows, cols, |_, _| rint(rng.random_range(-3..=3)))
    }

    #[test]
    fn rank_nullity_on_500_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..500 {
            let rows = rng.random_range(0..=8);
            let cols = rng.random_range(0..=8);
            let a = random_matrix(&mut rng, rows, cols);
            let k = a.kernel_basis();
            assert_eq!(a.rank() + k.cols(), a.cols());
            assert!(a.mul(&k).is_zero());
            // kernel columns are independent
            assert_eq!(k.rank(), k.cols());
        }
    }

    #[test]
    fn solve_recovers_consistent_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let rows = rng.random_range(1..=6);
            let cols = rng.random_range(1..=6);
            let a = random_matrix(&mut rng, rows, cols);
            let x = random_matrix(&mut rng, cols, 2);
            let b = a.mul(&x);
            let x2 = solve_linear(&a, &b).unwrap();
            assert_eq!(a.mul(&x2), b);
        }
    }

    #[test]
    fn quotient_invariants_on_random_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let n = rng.random_range(0..=7);
            let k = rng.random_range(0..=7);
            let rel = random_matrix(&mut rng, n, k);
            let q = quotient_space(n, &rel).unwrap();
            assert!(q.projection.mul(&q.section).is_identity());
            assert!(q.projection.mul(&rel).is_zero());
            assert!(q.projection.mul(&q.relation_basis).is_zero());
            assert_eq!(q.quotient_dim, n - rel.rank());
        }
    }

    #[test]
    fn entries_stay_reduced_with_positive_denominators() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 4, 5).scale(&rat(1, 3));
            let (r, _) = a.rref();
            for i in 0..r.rows() {
                for j in 0..r.cols() {
                    let e = r.at(i, j);
                    assert!(e.denom() > &num::BigInt::from(0));
                    assert_eq!(e, &Rat::new(e.numer().clone(), e.denom().clone()));
                }
            }
        }
    }

    #[test]
    fn determinism_bit_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 5, 6);
            assert_eq!(a.rref(), a.rref());
            assert_eq!(a.kernel_basis(), a.kernel_basis());
            let rel = random_matrix(&mut rng, 5, 3);
            assert_eq!(
                quotient_space(5, &rel).unwrap(),
                quotient_space(5, &rel.clone()).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn prop_rank_nullity(rows in 0usize..6, cols in 0usize..6, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, rows, cols);
            prop_assert_eq!(a.rank() + a.kernel_basis().cols(), a.cols());
        }

        #[test]
        fn prop_rref_idempotent(rows in 0usize..5, cols in 0usize..5, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, rows, cols);
            let (r, p) = a.rref();
            let (r2, p2) = r.rref();
            prop_assert_eq!(r, r2);
            prop_assert_eq!(p, p2);
        }
    }
}
