//! Small dense linear algebra: a row-major matrix, cyclic Jacobi for
//! symmetric eigenproblems and one-sided (Hestenes) Jacobi SVD.
//!
//! Every object handled by this crate is at most a few dozen dimensions, so
//! the routines favour determinism and accuracy over speed.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:>12.6?} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major buffer has wrong length");
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| cols[j][i])
    }

    pub fn diagonal(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[S]) {
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == S::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] = out.data[i * other.cols + j] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `self^T v`.
    pub fn tr_mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.rows, v.len(), "tr_mul_vec shape mismatch");
        let mut out = vec![S::zero(); self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j] = out[j] + self[(i, j)] * v[i];
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_row_major(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_row_major(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        )
    }

    pub fn scale(&self, s: S) -> Self {
        Self::from_row_major(self.rows, self.cols, self.data.iter().map(|&a| a * s).collect())
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// `P^T self P`, i.e. a bilinear form expressed in the basis given by the
    /// columns of `p`.
    pub fn congruence(&self, p: &Self) -> Self {
        p.transpose().matmul(self).matmul(p)
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> S {
        self.data.iter().map(|&a| a * a).sum::<S>().sqrt()
    }

    pub fn max_abs(&self) -> S {
        self.data.iter().fold(S::zero(), |m, &a| m.max(a.abs()))
    }

    pub fn symmetric_part(&self) -> Self {
        let half = S::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| half * (self[(i, j)] + self[(j, i)]))
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> S {
        let mut m = S::zero();
        for i in 0..self.rows {
            for j in 0..i {
                m = m.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        m
    }

    /// Gauss-Jordan inverse with partial pivoting; `None` when a pivot falls
    /// below `rel_tol` times the largest entry.
    pub fn inverse_with_tol(&self, rel_tol: S) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let scale = self.max_abs();
        if scale == S::zero() {
            return if n == 0 { Some(Self::zeros(0, 0)) } else { None };
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].abs().partial_cmp(&a[(y, col)].abs()).unwrap())
                .unwrap();
            if a[(pivot, col)].abs() <= rel_tol * scale {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] = a[(col, j)] / p;
                inv[(col, j)] = inv[(col, j)] / p;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[(i, col)];
                if f == S::zero() {
                    continue;
                }
                for j in 0..n {
                    a[(i, j)] = a[(i, j)] - f * a[(col, j)];
                    inv[(i, j)] = inv[(i, j)] - f * inv[(col, j)];
                }
            }
        }
        Some(inv)
    }

    pub fn inverse(&self) -> Option<Self> {
        self.inverse_with_tol(S::epsilon() * S::lit(64.0))
    }

    /// Determinant by partial-pivoting elimination.
    pub fn determinant(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].abs().partial_cmp(&a[(y, col)].abs()).unwrap())
                .unwrap();
            if a[(pivot, col)] == S::zero() {
                return S::zero();
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[(col, col)];
            det = det * p;
            for i in col + 1..n {
                let f = a[(i, col)] / p;
                for j in col..n {
                    a[(i, j)] = a[(i, j)] - f * a[(col, j)];
                }
            }
        }
        det
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn norm<S: Scalar>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

pub fn max_abs<S: Scalar>(a: &[S]) -> S {
    a.iter().fold(S::zero(), |m, &x| m.max(x.abs()))
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn scaled<S: Scalar>(a: &[S], s: S) -> Vec<S> {
    a.iter().map(|&x| x * s).collect()
}

/// `y += alpha * x`
pub fn axpy<S: Scalar>(alpha: S, x: &[S], y: &mut [S]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + alpha * xi;
    }
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymEigen<S> {
    /// Ascending eigenvalues.
    pub values: Vec<S>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix<S>,
}

/// Cyclic Jacobi iteration on the symmetric part of `m`, run until the
/// off-diagonal Frobenius norm drops below `S::jacobi_tol() * ||m||_F`.
pub fn sym_eigen<S: Scalar>(m: &Matrix<S>) -> SymEigen<S> {
    assert!(m.is_square(), "eigenproblem of non-square matrix");
    let n = m.rows();
    let mut a = m.symmetric_part();
    let mut v = Matrix::identity(n);
    let target = S::jacobi_tol() * a.frobenius_norm();
    let off = |a: &Matrix<S>| {
        let mut s = S::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };
    for _sweep in 0..100 {
        if off(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == S::zero() {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (S::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + S::one()).sqrt());
                let t = if theta == S::zero() { S::one() } else { t };
                let c = S::one() / (t * t + S::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    SymEigen { values, vectors }
}

/// Thin singular value decomposition `A = U diag(sigma) V^T`.
#[derive(Clone, Debug)]
pub struct Svd<S> {
    /// Left singular vectors as columns (zero columns for vanishing sigma).
    pub u: Matrix<S>,
    /// Descending singular values, one per column of `A`.
    pub sigma: Vec<S>,
    /// Right singular vectors as columns.
    pub v: Matrix<S>,
}

impl<S: Scalar> Svd<S> {
    /// Number of singular values above `rel_cutoff * max(sigma_max, floor)`.
    pub fn rank(&self, rel_cutoff: S, floor: S) -> usize {
        let cut = self.cutoff(rel_cutoff, floor);
        self.sigma.iter().filter(|&&s| s > cut).count()
    }

    fn cutoff(&self, rel_cutoff: S, floor: S) -> S {
        let smax = self.sigma.first().copied().unwrap_or(S::zero());
        rel_cutoff * smax.max(floor)
    }

    /// Orthonormal basis of the column space of `A`.
    pub fn range(&self, rel_cutoff: S, floor: S) -> Vec<Vec<S>> {
        let r = self.rank(rel_cutoff, floor);
        (0..r).map(|j| self.u.column(j)).collect()
    }

    /// Orthonormal basis of the null space of `A`.
    pub fn kernel(&self, rel_cutoff: S, floor: S) -> Vec<Vec<S>> {
        let r = self.rank(rel_cutoff, floor);
        (r..self.sigma.len()).map(|j| self.v.column(j)).collect()
    }
}

/// One-sided Jacobi SVD. Singular values come out with relative accuracy,
/// which keeps numerical kernels sharp (no squaring of `A^T A`).
pub fn svd<S: Scalar>(m: &Matrix<S>) -> Svd<S> {
    let (rows, n) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let eps = S::epsilon();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = S::zero();
                let mut beta = S::zero();
                let mut gamma = S::zero();
                for i in 0..rows {
                    let ap = a[(i, p)];
                    let aq = a[(i, q)];
                    alpha = alpha + ap * ap;
                    beta = beta + aq * aq;
                    gamma = gamma + ap * aq;
                }
                if alpha == S::zero() || beta == S::zero() {
                    continue;
                }
                if gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (S::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (S::one() + zeta * zeta).sqrt());
                let t = if zeta == S::zero() { S::one() } else { t };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let ap = a[(i, p)];
                    let aq = a[(i, q)];
                    a[(i, p)] = c * ap - s * aq;
                    a[(i, q)] = s * ap + c * aq;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<S> = (0..n).map(|j| norm(&a.column(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    let sigma: Vec<S> = order.iter().map(|&j| norms[j]).collect();
    let u = Matrix::from_fn(rows, n, |i, j| {
        let s = norms[order[j]];
        if s > S::zero() {
            a[(i, order[j])] / s
        } else {
            S::zero()
        }
    });
    let v = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Svd { u, sigma, v }
}

/// Minimum-norm least-squares solution of `a x = b` through the SVD; singular
/// values below `rel_cutoff * sigma_max` are discarded. Returns the solution
/// and the residual norm `||a x - b||`.
pub fn lstsq<S: Scalar>(a: &Matrix<S>, b: &[S], rel_cutoff: S) -> (Vec<S>, S) {
    let dec = svd(a);
    let n = a.cols();
    let r = dec.rank(rel_cutoff, S::zero());
    let mut x = vec![S::zero(); n];
    for j in 0..r {
        let coef = dot(&dec.u.column(j), b) / dec.sigma[j];
        axpy(coef, &dec.v.column(j), &mut x);
    }
    let res = norm(&sub(&a.mul_vec(&x), b));
    (x, res)
}

/// Solves a square system by Gauss-Jordan elimination.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    a.inverse().map(|inv| inv.mul_vec(b))
}

/// Modified Gram-Schmidt (applied twice) of the given vectors with respect to
/// the Euclidean inner product. Vectors whose residual norm falls below
/// `rel_tol` times their original norm are dropped.
pub fn orthonormalize<S: Scalar>(vectors: &[Vec<S>], rel_tol: S) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::new();
    for v in vectors {
        let orig = norm(v);
        if orig == S::zero() {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = dot(q, &w);
                axpy(-c, q, &mut w);
            }
        }
        let nw = norm(&w);
        if nw > rel_tol * orig {
            out.push(scaled(&w, S::one() / nw));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_diagonalizes_small_symmetric() {
        let m = Matrix::from_rows(&[
            vec![4.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ]);
        let e = sym_eigen(&m);
        // 3 - sqrt(3), 3, 3 + sqrt(3)
        let s3 = 3f64.sqrt();
        let expect = [3.0 - s3, 3.0, 3.0 + s3];
        for (a, b) in e.values.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        let recon = e
            .vectors
            .matmul(&Matrix::diagonal(&e.values))
            .matmul(&e.vectors.transpose());
        assert!(recon.sub(&m).max_abs() < 1e-12);
    }

    #[test]
    fn svd_kernel_of_rank_deficient() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]);
        let d = svd(&m);
        assert_eq!(d.rank(1e-9, 0.0), 1);
        let k = d.kernel(1e-9, 0.0);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(max_abs(&m.mul_vec(&v)) < 1e-12);
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m: Matrix<f64> = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 1.0]]);
        assert!((m.determinant() - 1.0).abs() < 1e-15);
        let inv = m.inverse().unwrap();
        assert!(inv.matmul(&m).sub(&Matrix::identity(2)).max_abs() < 1e-14);
        let sing = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn lstsq_recovers_consistent_solution() {
        let a: Matrix<f64> = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let (x, res) = lstsq(&a, &[1.0, 2.0, 3.0], 1e-12);
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12);
        assert!(res < 1e-12);
    }
}
