//! Finite-dimensional algebras given by structure constants over a fixed
//! basis, their elements and multiplication operators.
//!
//! The product of basis vectors is `e_i e_j = sum_k c[i][j][k] e_k`. Nothing
//! here assumes commutativity unless a method says so; the left skew-symmetric
//! machinery in particular works on arbitrary bilinear products.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{JordanError, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::validation::{Check, ValidationReport};

/// Matrix of a linear map of the algebra in the fixed basis
/// (column `j` is the image of `e_j`).
pub type LinearOperator<S> = Matrix<S>;

/// Coordinates of an algebra element over the fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Element<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![S::zero(); dim])
    }

    /// The basis vector `e_i` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![S::zero(); dim];
        v[i] = S::one();
        Self::new(v)
    }

    pub fn from_f64(coords: &[f64]) -> Self {
        Self::new(coords.iter().map(|&x| S::lit(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn norm(&self) -> S {
        linalg::norm(&self.coords)
    }

    pub fn scale(&self, s: S) -> Self {
        Self::new(linalg::scaled(&self.coords, s))
    }

    /// Largest coordinate difference.
    pub fn distance_max(&self, other: &Self) -> S {
        linalg::max_abs(&linalg::sub(&self.coords, &other.coords))
    }
}

impl<S: Scalar> Add for Element<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(linalg::add(&self.coords, &rhs.coords))
    }
}

impl<S: Scalar> Sub for Element<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(linalg::sub(&self.coords, &rhs.coords))
    }
}

impl<S: Scalar> Neg for Element<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-S::one())
    }
}

impl<S: Scalar> Mul<S> for Element<S> {
    type Output = Self;
    fn mul(self, rhs: S) -> Self {
        self.scale(rhs)
    }
}

/// Bilinear algebra on `R^n` stored as a dense `n x n x n` array.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<S> {
    dim: usize,
    c: Vec<S>,
    label: Option<String>,
}

impl<S: Scalar> Algebra<S> {
    /// Builds an algebra from a flat `c[(i * n + j) * n + k]` array.
    pub fn new(dim: usize, constants: Vec<S>) -> Result<Self> {
        if dim == 0 {
            return Err(JordanError::InvalidStructure("dimension must be positive".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(JordanError::InvalidStructure(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        if constants.iter().any(|x| !x.is_finite()) {
            return Err(JordanError::InvalidStructure("non-finite structure constant".into()));
        }
        Ok(Self {
            dim,
            c: constants,
            label: None,
        })
    }

    /// The algebra with all products zero.
    pub fn zero(dim: usize) -> Self {
        Self::new(dim, vec![S::zero(); dim * dim * dim]).expect("valid zero algebra")
    }

    /// Builds an algebra from a closure giving the coordinates of `e_i e_j`.
    pub fn from_table(dim: usize, mut table: impl FnMut(usize, usize) -> Vec<S>) -> Result<Self> {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let row = table(i, j);
                if row.len() != dim {
                    return Err(JordanError::InvalidStructure(format!(
                        "product e{}e{} has {} coordinates, expected {dim}",
                        i + 1,
                        j + 1,
                        row.len()
                    )));
                }
                c.extend(row);
            }
        }
        Self::new(dim, c)
    }

    /// Builds an algebra from sparse `(i, j, k, value)` entries (0-based);
    /// when `commutative` is set each entry is mirrored to `(j, i, k)`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, f64)], commutative: bool) -> Result<Self> {
        let mut alg = Self::zero(dim);
        for &(i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(JordanError::InvalidStructure(format!(
                    "entry ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            let v = S::lit(v);
            let idx = alg.idx(i, j, k);
            alg.c[idx] = v;
            if commutative {
                let idx = alg.idx(j, i, k);
                alg.c[idx] = v;
            }
        }
        Ok(alg)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// Coefficient of `e_k` in `e_i e_j`.
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> S {
        self.c[self.idx(i, j, k)]
    }

    pub fn constants(&self) -> &[S] {
        &self.c
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<S> {
        let start = self.idx(i, j, 0);
        self.c[start..start + self.dim].to_vec()
    }

    /// `max(1, max |c_ijk|)`; every relative tolerance is measured against it.
    pub fn scale(&self) -> S {
        self.c.iter().fold(S::one(), |m, &x| m.max(x.abs()))
    }

    pub fn is_trivial(&self) -> bool {
        self.c.iter().all(|&x| x == S::zero())
    }

    fn check_element(&self, x: &[S]) -> Result<()> {
        if x.len() != self.dim {
            return Err(JordanError::InvalidElement {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Raw product of coordinate vectors; lengths are assumed to match.
    pub fn product(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim;
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            if x[i] == S::zero() {
                continue;
            }
            for j in 0..n {
                let w = x[i] * y[j];
                if w == S::zero() {
                    continue;
                }
                let base = self.idx(i, j, 0);
                for k in 0..n {
                    out[k] = out[k] + w * self.c[base + k];
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &Element<S>, y: &Element<S>) -> Result<Element<S>> {
        self.check_element(x.coords())?;
        self.check_element(y.coords())?;
        Ok(Element::new(self.product(x.coords(), y.coords())))
    }

    /// Raw left multiplication matrix, `(L_x)_{kj} = sum_i x_i c[i][j][k]`.
    pub fn left_mul_coords(&self, x: &[S]) -> Matrix<S> {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            if x[i] == S::zero() {
                continue;
            }
            for j in 0..n {
                let base = self.idx(i, j, 0);
                for k in 0..n {
                    m[(k, j)] = m[(k, j)] + x[i] * self.c[base + k];
                }
            }
        }
        m
    }

    /// Raw right multiplication matrix, `R_x(y) = y x`.
    pub fn right_mul_coords(&self, x: &[S]) -> Matrix<S> {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            if x[j] == S::zero() {
                continue;
            }
            for i in 0..n {
                let base = self.idx(i, j, 0);
                for k in 0..n {
                    m[(k, i)] = m[(k, i)] + x[j] * self.c[base + k];
                }
            }
        }
        m
    }

    pub fn left_mul(&self, x: &Element<S>) -> Result<LinearOperator<S>> {
        self.check_element(x.coords())?;
        Ok(self.left_mul_coords(x.coords()))
    }

    pub fn right_mul(&self, x: &Element<S>) -> Result<LinearOperator<S>> {
        self.check_element(x.coords())?;
        Ok(self.right_mul_coords(x.coords()))
    }

    /// `L_{e_i}` for every basis vector.
    pub fn left_mul_basis(&self) -> Vec<Matrix<S>> {
        (0..self.dim)
            .map(|i| self.left_mul_coords(Element::<S>::basis(self.dim, i).coords()))
            .collect()
    }

    /// Left-iterated power: `x^0 = identity`, `x^(k+1) = x x^k`.
    pub fn jordan_power(&self, x: &Element<S>, k: usize, identity: Option<&Element<S>>) -> Result<Element<S>> {
        self.check_element(x.coords())?;
        let mut p = match (k, identity) {
            (0, None) => return Err(JordanError::NoIdentity),
            (0, Some(e)) => {
                self.check_element(e.coords())?;
                return Ok(e.clone());
            }
            _ => x.coords().to_vec(),
        };
        for _ in 1..k {
            p = self.product(x.coords(), &p);
        }
        Ok(Element::new(p))
    }

    /// Largest `|c_ijk - c_jik|`.
    pub fn commutativity_residual(&self) -> S {
        let n = self.dim;
        let mut m = S::zero();
        for i in 0..n {
            for j in 0..i {
                for k in 0..n {
                    m = m.max((self.c(i, j, k) - self.c(j, i, k)).abs());
                }
            }
        }
        m
    }

    pub fn is_commutative(&self, tol: S) -> bool {
        self.commutativity_residual() <= tol * self.scale()
    }

    /// `L_{e_i e_j}` for all pairs, indexed `i * n + j`.
    fn left_mul_of_products(&self, l: &[Matrix<S>]) -> Vec<Matrix<S>> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut m = Matrix::zeros(n, n);
                for (k, lk) in l.iter().enumerate() {
                    let w = self.c(i, j, k);
                    if w != S::zero() {
                        m = m.add(&lk.scale(w));
                    }
                }
                out.push(m);
            }
        }
        out
    }

    /// Residual of the fully linearised Jordan identity
    /// `[L_x, L_{yz}] + [L_y, L_{zx}] + [L_z, L_{xy}] = 0` over all basis
    /// triples. The cubic identity `[L_x, L_{x^2}] = 0` holds for every `x`
    /// iff this trilinear expression vanishes on a basis.
    fn linearized_jordan_residual(&self, l: &[Matrix<S>], lp: &[Matrix<S>]) -> S {
        let n = self.dim;
        let mut worst = S::zero();
        for x in 0..n {
            for y in x..n {
                for z in y..n {
                    let r = l[x]
                        .commutator(&lp[y * n + z])
                        .add(&l[y].commutator(&lp[z * n + x]))
                        .add(&l[z].commutator(&lp[x * n + y]));
                    worst = worst.max(r.max_abs());
                }
            }
        }
        worst
    }

    /// Commutativity and the Jordan identity, with thresholds `tol * scale`
    /// and `tol * scale^3` respectively (the identity is cubic in the
    /// structure constants).
    pub fn check_jordan(&self, tol: S) -> ValidationReport {
        let scale = self.scale();
        let l = self.left_mul_basis();
        let lp = self.left_mul_of_products(&l);
        let comm = self.commutativity_residual();
        let jordan = self.linearized_jordan_residual(&l, &lp);
        ValidationReport::new(vec![
            Check::new("commutativity", comm.as_f64(), (tol * scale).as_f64()),
            Check::new("jordan_identity", jordan.as_f64(), (tol * scale.powi(3)).as_f64()),
        ])
    }

    pub fn is_jordan(&self, tol: S) -> bool {
        self.check_jordan(tol).passed()
    }

    /// The three operator identities
    ///
    /// * (i)   `[L_x, L_{y^2}] + 2[L_y, L_{xy}] = 0`
    /// * (ii)  `[L_x, L_{yz}] + [L_y, L_{zx}] + [L_z, L_{xy}] = 0`
    /// * (iii) `L_{x^2 y} - L_{x^2} L_y = 2 (L_{xy} - L_x L_y) L_x`
    ///
    /// on basis pairs / triples; (iii) is also checked in its polarised form
    /// in `x` so that basis evaluation is complete.
    pub fn check_fundamental_identities(&self, tol: S) -> ValidationReport {
        let n = self.dim;
        let scale = self.scale();
        let two = S::lit(2.0);
        let l = self.left_mul_basis();
        let lp = self.left_mul_of_products(&l);
        let left_of = |v: &[S]| self.left_mul_coords(v);

        let mut r1 = S::zero();
        for x in 0..n {
            for y in 0..n {
                let r = l[x]
                    .commutator(&lp[y * n + y])
                    .add(&l[y].commutator(&lp[x * n + y]).scale(two));
                r1 = r1.max(r.max_abs());
            }
        }

        let r2 = self.linearized_jordan_residual(&l, &lp);

        // polarised (iii): x -> (x, w)
        let mut r3 = S::zero();
        for x in 0..n {
            for w in x..n {
                let xw = self.basis_product(x, w);
                let l_xw = &lp[x * n + w];
                for y in 0..n {
                    let xw_y = self.product(&xw, &Element::<S>::basis(n, y).into_coords());
                    let lhs = left_of(&xw_y).sub(&l_xw.matmul(&l[y]));
                    let a = lp[x * n + y].sub(&l[x].matmul(&l[y])).matmul(&l[w]);
                    let b = lp[w * n + y].sub(&l[w].matmul(&l[y])).matmul(&l[x]);
                    let r = lhs.sub(&a.add(&b));
                    r3 = r3.max(r.max_abs());
                }
            }
        }
        let thr = (tol * scale.powi(3)).as_f64();
        ValidationReport::new(vec![
            Check::new("identity_i", r1.as_f64(), thr),
            Check::new("identity_ii", r2.as_f64(), thr),
            Check::new("identity_iii", r3.as_f64(), thr),
        ])
    }

    /// Structure constants in a new basis whose vectors are the columns of
    /// `p` (old coordinates); `p_inv` must be its inverse.
    fn transform(&self, p: &Matrix<S>, p_inv: &Matrix<S>) -> Self {
        let n = self.dim;
        let zero = S::zero();
        // t1[a][j][m] = sum_i p_ia c_ijm
        let mut t1 = vec![zero; n * n * n];
        for i in 0..n {
            for a in 0..n {
                let pia = p[(i, a)];
                if pia == zero {
                    continue;
                }
                for j in 0..n {
                    for m in 0..n {
                        let idx = (a * n + j) * n + m;
                        t1[idx] = t1[idx] + pia * self.c(i, j, m);
                    }
                }
            }
        }
        // t2[a][b][m] = sum_j p_jb t1[a][j][m]
        let mut t2 = vec![zero; n * n * n];
        for a in 0..n {
            for j in 0..n {
                for b in 0..n {
                    let pjb = p[(j, b)];
                    if pjb == zero {
                        continue;
                    }
                    for m in 0..n {
                        let idx = (a * n + b) * n + m;
                        t2[idx] = t2[idx] + pjb * t1[(a * n + j) * n + m];
                    }
                }
            }
        }
        // c'[a][b][k] = sum_m pinv_km t2[a][b][m]
        let mut c = vec![zero; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    let mut s = zero;
                    for m in 0..n {
                        s = s + p_inv[(k, m)] * t2[(a * n + b) * n + m];
                    }
                    c[(a * n + b) * n + k] = s;
                }
            }
        }
        Self {
            dim: n,
            c,
            label: self.label.clone(),
        }
    }

    /// Re-expresses the algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix<S>) -> Result<Self> {
        self.check_square(p)?;
        let p_inv = p.inverse().ok_or(JordanError::SingularMatrix)?;
        Ok(self.transform(p, &p_inv))
    }

    /// The GL(n) action `(g.mu)(x, y) = g mu(g^-1 x, g^-1 y)`.
    pub fn base_change(&self, g: &Matrix<S>) -> Result<Self> {
        self.check_square(g)?;
        let g_inv = g.inverse().ok_or(JordanError::SingularMatrix)?;
        Ok(self.transform(&g_inv, g))
    }

    fn check_square(&self, m: &Matrix<S>) -> Result<()> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(JordanError::DimensionMismatch(format!(
                "expected {n}x{n} matrix, got {}x{}",
                m.rows(),
                m.cols(),
                n = self.dim
            )));
        }
        Ok(())
    }

    /// Solves `L_e = Id` for `e` in the least-squares sense and returns `e`
    /// when the residual is at most `tol * scale`.
    pub fn identity_element(&self, tol: S) -> Option<Element<S>> {
        let n = self.dim;
        let mut m = Matrix::zeros(n * n, n);
        let mut rhs = vec![S::zero(); n * n];
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    m[(j * n + k, i)] = self.c(i, j, k);
                }
                if j == k {
                    rhs[j * n + k] = S::one();
                }
            }
        }
        let (e, res) = linalg::lstsq(&m, &rhs, S::epsilon() * S::lit(1e3));
        if res <= tol * self.scale() {
            Some(Element::new(e))
        } else {
            None
        }
    }

    /// Residual of `(x.y).z - x.(y.z) + (y.x).z - y.(x.z) = 0` over basis
    /// triples (associator antisymmetric in its first two slots).
    pub fn lssa_residual(&self) -> S {
        let n = self.dim;
        let e = |i: usize| Element::<S>::basis(n, i).into_coords();
        let mut worst = S::zero();
        for x in 0..n {
            for y in 0..n {
                let xy = self.basis_product(x, y);
                let yx = self.basis_product(y, x);
                for z in 0..n {
                    let ez = e(z);
                    let a = self.product(&xy, &ez);
                    let b = self.product(&e(x), &self.basis_product(y, z));
                    let c = self.product(&yx, &ez);
                    let d = self.product(&e(y), &self.basis_product(x, z));
                    for k in 0..n {
                        worst = worst.max((a[k] - b[k] + c[k] - d[k]).abs());
                    }
                }
            }
        }
        worst
    }

    pub fn check_lssa(&self, tol: S) -> ValidationReport {
        let scale = self.scale();
        ValidationReport::new(vec![Check::new(
            "lssa_identity",
            self.lssa_residual().as_f64(),
            (tol * scale * scale).as_f64(),
        )])
    }

    /// The product `x . y + y . x`.
    pub fn symmetrize_product(&self) -> Self {
        let n = self.dim;
        let mut c = vec![S::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[self.idx(i, j, k)] = self.c(i, j, k) + self.c(j, i, k);
                }
            }
        }
        Self {
            dim: n,
            c,
            label: self.label.as_ref().map(|l| format!("sym({l})")),
        }
    }

    /// Direct product of two algebras (block-diagonal structure constants).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut out = Self::zero(n);
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    let idx = out.idx(i, j, k);
                    out.c[idx] = self.c(i, j, k);
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    let idx = out.idx(n1 + i, n1 + j, n1 + k);
                    out.c[idx] = other.c(i, j, k);
                }
            }
        }
        out
    }

    /// Largest entry-wise difference of structure constants.
    pub fn distance(&self, other: &Self) -> S {
        assert_eq!(self.dim, other.dim);
        self.c
            .iter()
            .zip(&other.c)
            .fold(S::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn psi1_orthogonal_idempotents() {
        let a = catalog::psi1::<f64>();
        let p = a.multiply(&Element::basis(2, 0), &Element::basis(2, 1)).unwrap();
        assert_eq!(p.coords(), &[0.0, 0.0]);
        let sq = a.jordan_power(&Element::basis(2, 0), 2, None).unwrap();
        assert_eq!(sq.coords(), &[1.0, 0.0]);
    }

    #[test]
    fn zero_times_anything_is_zero() {
        let a = catalog::sym2::<f64>();
        let y = Element::from_f64(&[0.3, -1.0, 2.0]);
        let p = a.multiply(&Element::zero(3), &y).unwrap();
        assert!(p.coords().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn sym2_e3_squared() {
        let a = catalog::sym2::<f64>();
        let e3 = Element::basis(3, 2);
        assert_eq!(a.multiply(&e3, &e3).unwrap().coords(), &[1.0, 1.0, 0.0]);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = catalog::psi1::<f64>();
        let err = a.multiply(&Element::zero(3), &Element::zero(2)).unwrap_err();
        assert_eq!(err, JordanError::InvalidElement { expected: 2, found: 3 });
        assert!(a.left_mul(&Element::zero(1)).is_err());
    }

    #[test]
    fn left_mul_examples() {
        let psi2 = catalog::psi2::<f64>();
        let l = psi2.left_mul(&Element::basis(2, 0)).unwrap();
        assert_eq!(l, Matrix::identity(2));

        let triv = Algebra::<f64>::zero(3);
        let l = triv.left_mul(&Element::from_f64(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(l.max_abs(), 0.0);

        let sym2 = catalog::sym2::<f64>();
        let l = sym2.left_mul(&Element::basis(3, 2)).unwrap();
        let expect = Matrix::from_rows(&[
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![0.5, 0.5, 0.0],
        ]);
        assert_eq!(l, expect);
    }

    #[test]
    fn jordan_power_examples() {
        let psi2 = catalog::psi2::<f64>();
        let e2 = Element::basis(2, 1);
        assert_eq!(psi2.jordan_power(&e2, 2, None).unwrap().coords(), &[-1.0, 0.0]);
        assert_eq!(psi2.jordan_power(&e2, 1, None).unwrap(), e2);
        assert_eq!(psi2.jordan_power(&e2, 0, None), Err(JordanError::NoIdentity));
        let e = Element::basis(2, 0);
        assert_eq!(psi2.jordan_power(&e2, 0, Some(&e)).unwrap(), e);
    }

    #[test]
    fn check_jordan_examples() {
        let r = catalog::sym2::<f64>().check_jordan(1e-9);
        assert!(r.passed());
        assert_eq!(r.max_residual(), 0.0);
        assert!(Algebra::<f64>::zero(4).check_jordan(1e-9).passed());

        // c[1][1][1] = 1, c[1][2][2] = 1, c[2][1][2] = 0
        let nc = Algebra::<f64>::from_entries(2, &[(0, 0, 0, 1.0), (0, 1, 1, 1.0)], false).unwrap();
        let r = nc.check_jordan(1e-9);
        assert!(!r.passed());
        assert_eq!(r.residual("commutativity"), Some(1.0));
    }

    #[test]
    fn fundamental_identities_examples() {
        for a in [catalog::psi2::<f64>(), catalog::sym2(), Algebra::zero(3)] {
            let r = a.check_fundamental_identities(1e-9);
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(Algebra::<f64>::zero(3).check_fundamental_identities(1e-9).max_residual(), 0.0);
    }

    #[test]
    fn fundamental_identities_fail_on_non_jordan() {
        // commutative but not Jordan: e1e1 = e2, e1e2 = e1
        let a = Algebra::<f64>::from_entries(2, &[(0, 0, 1, 1.0), (0, 1, 0, 1.0)], true).unwrap();
        assert!(!a.check_jordan(1e-9).passed());
        assert!(!a.check_fundamental_identities(1e-9).passed());
    }

    #[test]
    fn base_change_examples() {
        let psi1 = catalog::psi1::<f64>();
        assert_eq!(psi1.base_change(&Matrix::identity(2)).unwrap(), psi1);

        let g = Matrix::diagonal(&[2.0, 1.0]);
        let b = psi1.base_change(&g).unwrap();
        // (g.mu)(e1, e1) = g mu(e1/2, e1/2) = g e1 / 4 = e1 / 2
        assert_eq!(b.basis_product(0, 0), vec![0.5, 0.0]);
        let back = b.base_change(&g.inverse().unwrap()).unwrap();
        assert!(back.distance(&psi1) < 1e-15);

        let sing = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        assert_eq!(psi1.base_change(&sing), Err(JordanError::SingularMatrix));
    }

    #[test]
    fn sym2_in_spin_factor_basis() {
        // E, e1 - e2, e3 turn Sym(2) into the spin factor with f = Id
        let a = catalog::sym2::<f64>();
        let p = Matrix::from_columns(&[vec![1.0, 1.0, 0.0], vec![1.0, -1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let b = a.change_basis(&p).unwrap();
        assert!((b.c(0, 0, 0) - 1.0).abs() < 1e-15);
        assert!((b.c(1, 1, 0) - 1.0).abs() < 1e-15);
        assert!((b.c(0, 1, 1) - 1.0).abs() < 1e-15);
        assert!((b.c(2, 2, 0) - 1.0).abs() < 1e-15);
        assert!(b.c(1, 2, 2).abs() < 1e-15);
    }

    #[test]
    fn identity_element_examples() {
        let e = catalog::psi2::<f64>().identity_element(1e-9).unwrap();
        assert!(e.distance_max(&Element::basis(2, 0)) < 1e-12);
        assert!(Algebra::<f64>::zero(2).identity_element(1e-9).is_none());
        let e = catalog::sym2::<f64>().identity_element(1e-9).unwrap();
        assert!(e.distance_max(&Element::from_f64(&[1.0, 1.0, 0.0])) < 1e-12);
        let e = catalog::remark_two_dim::<f64>().identity_element(1e-9).unwrap();
        assert!(e.distance_max(&Element::basis(2, 0)) < 1e-12);
    }

    #[test]
    fn lssa_examples() {
        assert!(catalog::one_dim::<f64>().check_lssa(1e-9).passed());
        // 2x2 matrices are associative
        assert!(catalog::matrix_algebra::<f64>(2).check_lssa(1e-9).passed());
        // e1.e1 = e1, e1.e2 = e2 is associative as well: (e1 e1) e2 = e2 = e1 (e1 e2)
        let r = catalog::lsa_two_dim::<f64>().check_lssa(1e-9);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn symmetrize_product_examples() {
        let t = Algebra::<f64>::zero(3).symmetrize_product();
        assert!(t.is_trivial());
        let m = catalog::matrix_algebra::<f64>(2);
        let j = m.symmetrize_product();
        assert!(j.check_jordan(1e-9).passed());
        // E11 . E12 + E12 . E11 = E12
        assert_eq!(j.basis_product(0, 1), vec![0.0, 1.0, 0.0, 0.0]);
    }
}
