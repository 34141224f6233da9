//! Exact linear algebra: fraction-free (Bareiss) determinants over the
//! Laurent ring, Gaussian elimination over the fraction field, and Smith
//! normal forms of integer matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::laurent::{LaurentPoly, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatError {
    NonSquare,
    ShapeMismatch,
    SingularMatrix,
    /// exact division failed during fraction-free elimination
    Internal(&'static str),
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::NonSquare => write!(f, "matrix is not square"),
            MatError::ShapeMismatch => write!(f, "matrix shapes do not match"),
            MatError::SingularMatrix => write!(f, "singular matrix"),
            MatError::Internal(m) => write!(f, "internal error: {}", m),
        }
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn filled(rows: usize, cols: usize, fill: T) -> Self {
        Mat {
            rows,
            cols,
            data: vec![fill; rows * cols],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<U: Clone, F: FnMut(&T) -> U>(&self, mut f: F) -> Mat<U> {
        Mat::from_fn(self.rows, self.cols, |i, j| f(self.at(i, j)))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Horizontal concatenation [self | other].
    pub fn hconcat(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Mat<T> {
        Mat::from_fn(rows, cols, |i, j| self.at(row0 + i, col0 + j).clone())
    }
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

pub type IntMatrix = Mat<i128>;

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { 1 } else { 0 })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::filled(rows, cols, 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.at(i, k) * other.at(k, j)).sum()
        })
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| self.at(i, k) * v[k]).sum())
            .collect()
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> Result<i128, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if *m.at(k, k) == 0 {
                let pivot = (k + 1..n).find(|&i| *m.at(i, k) != 0);
                match pivot {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                    debug_assert_eq!(v % prev, 0);
                    m.set(i, j, v / prev);
                }
                m.set(i, k, 0);
            }
            prev = *m.at(k, k);
        }
        Ok(sign * *m.at(n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(1) | Ok(-1))
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut prev = 1i128;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&i| *m.at(i, col) != 0);
            let Some(p) = pivot else { continue };
            m.swap_rows(p, rank);
            for i in rank + 1..m.rows {
                for j in col + 1..m.cols {
                    let v = m.at(rank, col) * m.at(i, j) - m.at(i, col) * m.at(rank, j);
                    m.set(i, j, v / prev);
                }
                m.set(i, col, 0);
            }
            prev = *m.at(rank, col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NonSquare);
        }
        let d = self.det()?;
        if d != 1 && d != -1 {
            return Err(MatError::SingularMatrix);
        }
        let n = self.rows;
        let adj = Mat::from_fn(n, n, |i, j| {
            // cofactor C_{j,i}
            let minor = Mat::from_fn(n - 1, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                *self.at(rr, cc)
            });
            let m = minor.det().expect("square minor");
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        });
        Ok(adj.map(|&x| x * d))
    }
}

/// Smith normal form decomposition `m = u * d * v` with `u`, `v` unimodular
/// and `d` diagonal with d1 | d2 | ... . `u_inv` is the exact inverse of `u`,
/// kept because cokernel coordinates read off from it directly.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
}

impl SnfResult {
    /// Diagonal invariant factors, including trailing zeros.
    pub fn invariant_factors(&self) -> Vec<i128> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| *self.d.at(i, i)).collect()
    }

    /// Nonzero invariant factors.
    pub fn nonzero_factors(&self) -> Vec<i128> {
        self.invariant_factors()
            .into_iter()
            .filter(|&x| x != 0)
            .collect()
    }
}

struct SnfWork {
    b: IntMatrix,
    p: IntMatrix, // accumulated row ops: b = p * m * q
    u: IntMatrix, // p^{-1}
    q: IntMatrix,
    v: IntMatrix, // q^{-1}
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, bq: usize) {
        self.b.swap_rows(a, bq);
        self.p.swap_rows(a, bq);
        self.u.swap_cols(a, bq);
    }

    fn swap_cols(&mut self, a: usize, bq: usize) {
        self.b.swap_cols(a, bq);
        self.q.swap_cols(a, bq);
        self.v.swap_rows(a, bq);
    }

    /// row j += k * row i
    fn add_row(&mut self, i: usize, j: usize, k: i128) {
        if k == 0 {
            return;
        }
        for c in 0..self.b.cols() {
            let v = *self.b.at(i, c) * k + *self.b.at(j, c);
            self.b.set(j, c, v);
        }
        for c in 0..self.p.cols() {
            let v = *self.p.at(i, c) * k + *self.p.at(j, c);
            self.p.set(j, c, v);
        }
        // u <- u * E^{-1}: col i -= k * col j
        for r in 0..self.u.rows() {
            let v = *self.u.at(r, i) - k * *self.u.at(r, j);
            self.u.set(r, i, v);
        }
    }

    /// col j += k * col i
    fn add_col(&mut self, i: usize, j: usize, k: i128) {
        if k == 0 {
            return;
        }
        for r in 0..self.b.rows() {
            let v = *self.b.at(r, i) * k + *self.b.at(r, j);
            self.b.set(r, j, v);
        }
        for r in 0..self.q.rows() {
            let v = *self.q.at(r, i) * k + *self.q.at(r, j);
            self.q.set(r, j, v);
        }
        // v <- E^{-1} * v: row i -= k * row j
        for c in 0..self.v.cols() {
            let val = *self.v.at(i, c) - k * *self.v.at(j, c);
            self.v.set(i, c, val);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.b.cols() {
            let v = -*self.b.at(i, c);
            self.b.set(i, c, v);
        }
        for c in 0..self.p.cols() {
            let v = -*self.p.at(i, c);
            self.p.set(i, c, v);
        }
        for r in 0..self.u.rows() {
            let v = -*self.u.at(r, i);
            self.u.set(r, i, v);
        }
    }
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = SnfWork {
        b: m.clone(),
        p: IntMatrix::identity(rows),
        u: IntMatrix::identity(rows),
        q: IntMatrix::identity(cols),
        v: IntMatrix::identity(cols),
    };
    let n = rows.min(cols);
    for t in 0..n {
        'outer: loop {
            // locate a pivot of minimal absolute value in the working block
            let mut best: Option<(usize, usize, i128)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = *w.b.at(i, j);
                    if v != 0 && best.map(|(_, _, bv)| v.abs() < bv.abs()).unwrap_or(true) {
                        best = Some((i, j, v));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            w.swap_rows(pi, t);
            w.swap_cols(pj, t);
            // clear the pivot column and row
            let mut dirty = false;
            for i in t + 1..rows {
                let k = w.b.at(i, t).div_euclid(*w.b.at(t, t));
                w.add_row(t, i, -k);
                if *w.b.at(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let k = w.b.at(t, j).div_euclid(*w.b.at(t, t));
                w.add_col(t, j, -k);
                if *w.b.at(t, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide every remaining entry
            let p = *w.b.at(t, t);
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if *w.b.at(i, j) % p != 0 {
                        w.add_row(i, t, 1);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        if *w.b.at(t, t) < 0 {
            w.negate_row(t);
        }
    }
    SnfResult {
        u: w.u,
        d: w.b,
        v: w.v,
        u_inv: w.p,
    }
}

// ---------------------------------------------------------------------------
// Matrices over Z[H]
// ---------------------------------------------------------------------------

pub type PolyMatrix = Mat<LaurentPoly>;
pub type RatMatrix = Mat<RationalFunction>;

impl PolyMatrix {
    pub fn poly_identity(n: usize, rank: usize) -> Self {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                LaurentPoly::one(rank)
            } else {
                LaurentPoly::zero(rank)
            }
        })
    }

    pub fn poly_mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = LaurentPoly::zero(self.at(i, 0).rank());
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        })
    }

    /// Fraction-free determinant over Z[H] (Bareiss). Pivots are chosen by
    /// fewest monomials; each elimination step performs a verified exact
    /// division.
    pub fn bareiss_det(&self) -> Result<LaurentPoly, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(0));
        }
        let rank = self.at(0, 0).rank();
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = LaurentPoly::one(rank);
        for k in 0..n - 1 {
            let pivot = (k..n)
                .filter(|&i| !m.at(i, k).is_zero())
                .min_by_key(|&i| m.at(i, k).num_terms());
            match pivot {
                Some(i) => {
                    if i != k {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                }
                None => return Ok(LaurentPoly::zero(rank)),
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m
                        .at(k, k)
                        .mul(m.at(i, j))
                        .sub(&m.at(i, k).mul(m.at(k, j)));
                    let q = num
                        .try_div(&prev)
                        .ok_or(MatError::Internal("bareiss exact division failed"))?;
                    m.set(i, j, q);
                }
                m.set(i, k, LaurentPoly::zero(rank));
            }
            prev = m.at(k, k).clone();
        }
        let mut det = m.at(n - 1, n - 1).clone();
        if sign < 0 {
            det = det.neg();
        }
        Ok(det)
    }

    /// Determinant by cofactor expansion; test oracle for `bareiss_det`.
    pub fn cofactor_det(&self) -> Result<LaurentPoly, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(0));
        }
        let rank = self.at(0, 0).rank();
        if n == 1 {
            return Ok(self.at(0, 0).clone());
        }
        let mut acc = LaurentPoly::zero(rank);
        for j in 0..n {
            if self.at(0, j).is_zero() {
                continue;
            }
            let minor = Mat::from_fn(n - 1, n - 1, |r, c| {
                let cc = if c < j { c } else { c + 1 };
                self.at(r + 1, cc).clone()
            });
            let term = self.at(0, j).mul(&minor.cofactor_det()?);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        Ok(acc)
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|p| RationalFunction::from_poly(p.clone()))
    }
}

impl RatMatrix {
    pub fn rat_identity(n: usize, rank: usize) -> Self {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                RationalFunction::one(rank)
            } else {
                RationalFunction::zero(rank)
            }
        })
    }

    pub fn rat_mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RationalFunction::zero(self.at(i, 0).rank());
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        })
    }

    /// Solves `self * x = rhs` by Gauss-Jordan elimination over the fraction
    /// field. Errors with `SingularMatrix` when the determinant vanishes.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NonSquare);
        }
        if rhs.rows != self.rows {
            return Err(MatError::ShapeMismatch);
        }
        let n = self.rows;
        let mut m = self.hconcat(rhs);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&i| !m.at(i, col).is_zero())
                .min_by_key(|&i| m.at(i, col).complexity())
                .ok_or(MatError::SingularMatrix)?;
            m.swap_rows(pivot, col);
            let inv = m.at(col, col).inverse().map_err(|_| MatError::SingularMatrix)?;
            for j in col..m.cols() {
                let v = m.at(col, j).mul(&inv);
                m.set(col, j, v);
            }
            for i in 0..n {
                if i == col || m.at(i, col).is_zero() {
                    continue;
                }
                let factor = m.at(i, col).clone();
                for j in col..m.cols() {
                    let v = m.at(i, j).sub(&factor.mul(m.at(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(m.submatrix(0, n, n, rhs.cols()))
    }

    pub fn inverse(&self) -> Result<RatMatrix, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NonSquare);
        }
        let rank = if self.rows > 0 { self.at(0, 0).rank() } else { 0 };
        self.solve(&RatMatrix::rat_identity(self.rows, rank))
    }

    pub fn rat_det(&self) -> Result<RationalFunction, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        let rank = if n > 0 { self.at(0, 0).rank() } else { 0 };
        if n == 0 {
            return Ok(RationalFunction::one(0));
        }
        let mut m = self.clone();
        let mut det = RationalFunction::one(rank);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&i| !m.at(i, col).is_zero())
                .min_by_key(|&i| m.at(i, col).complexity());
            let Some(p) = pivot else {
                return Ok(RationalFunction::zero(rank));
            };
            if p != col {
                m.swap_rows(p, col);
                det = det.neg();
            }
            let piv = m.at(col, col).clone();
            det = det.mul(&piv);
            let inv = piv.inverse().expect("nonzero pivot");
            for i in col + 1..n {
                if m.at(i, col).is_zero() {
                    continue;
                }
                let factor = m.at(i, col).mul(&inv);
                for j in col..n {
                    let v = m.at(i, j).sub(&factor.mul(m.at(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Applies a unimodular substitution to every entry.
    pub fn substitute(&self, t: &IntMatrix) -> RatMatrix {
        self.map(|f| f.substitute(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use alloc::vec;

    #[test]
    fn snf_trivial_cases() {
        let z = IntMatrix::zeros(2, 3);
        let r = smith_normal_form(&z);
        assert_eq!(r.invariant_factors(), vec![0, 0]);
        assert_eq!(r.u.mul(&r.d).mul(&r.v), z);

        let m = Mat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let r = smith_normal_form(&m);
        assert_eq!(r.invariant_factors(), vec![1, 6]);
        assert_eq!(r.u.mul(&r.d).mul(&r.v), m);
        assert!(r.u.is_unimodular());
        assert!(r.v.is_unimodular());
        assert_eq!(r.u.mul(&r.u_inv), IntMatrix::identity(2));
    }

    #[test]
    fn int_det_and_rank() {
        let m = Mat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(m.det().unwrap(), -3);
        assert_eq!(m.rank(), 3);
        let s = Mat::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det().unwrap(), 0);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn inverse_unimodular_roundtrip() {
        let m = Mat::from_rows(vec![vec![1, 2, 0], vec![0, 1, 3], vec![0, 0, -1]]);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(3));
    }

    #[test]
    fn bareiss_triangular() {
        // [[g1, 1], [0, g2]] -> g1*g2
        let g1 = LaurentPoly::var(2, 0);
        let g2 = LaurentPoly::var(2, 1);
        let m = Mat::from_rows(vec![
            vec![g1.clone(), LaurentPoly::one(2)],
            vec![LaurentPoly::zero(2), g2.clone()],
        ]);
        assert_eq!(m.bareiss_det().unwrap(), g1.mul(&g2));
        let id = PolyMatrix::poly_identity(3, 2);
        assert_eq!(id.bareiss_det().unwrap(), LaurentPoly::one(2));
    }
}
