//! Metric invariants of a commutative algebra with an inner product: the
//! Jordan-Levi-Civita connection, Jordan curvature tensor, Jordan sectional
//! curvature, Ricci tensors, mean curvature vector and moment map.
//!
//! Curvature quantities are computed in an orthonormal basis. The algebra is
//! first re-expressed in that basis, after which the metric is the identity
//! and `c[i][j][k] = <e_i e_j, e_k>`.

use crate::algebra::{Algebra, Element};
use crate::error::{JordanError, Result};
use crate::linalg::{self, Matrix};
use crate::random;
use crate::scalar::Scalar;
use crate::structure::{self, BilinearForm};
use crate::validation::{Check, ValidationReport};

/// Symmetric positive definite Gram matrix over the algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct<S> {
    g: Matrix<S>,
}

impl<S: Scalar> InnerProduct<S> {
    pub fn new(g: Matrix<S>) -> Result<Self> {
        if !g.is_square() {
            return Err(JordanError::DimensionMismatch("Gram matrix must be square".into()));
        }
        let scale = g.max_abs();
        if scale == S::zero() || g.asymmetry() > S::lit(1e-10).max(S::epsilon() * S::lit(64.0)) * scale {
            return Err(JordanError::NotPositiveDefinite);
        }
        let g = g.symmetric_part();
        let ev = linalg::sym_eigen(&g).values;
        let lmax = *ev.last().unwrap();
        if lmax <= S::zero() || ev[0] <= S::lit(1e-10) * lmax {
            return Err(JordanError::NotPositiveDefinite);
        }
        Ok(Self { g })
    }

    pub fn identity(n: usize) -> Self {
        Self { g: Matrix::identity(n) }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| S::lit(x)).collect())
                .collect::<Vec<Vec<S>>>(),
        );
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn eval(&self, x: &[S], y: &[S]) -> S {
        linalg::dot(x, &self.g.mul_vec(y))
    }

    pub fn as_form(&self) -> BilinearForm<S> {
        BilinearForm::new(self.g.clone()).expect("inner product is symmetric")
    }

    /// Gram-Schmidt (two passes) of the standard basis. Columns of the
    /// result are orthonormal for this inner product.
    pub fn orthonormal_basis(&self) -> Matrix<S> {
        let n = self.dim();
        let mut cols: Vec<Vec<S>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut w = Element::<S>::basis(n, i).into_coords();
            for _ in 0..2 {
                for q in &cols {
                    let c = self.eval(q, &w);
                    linalg::axpy(-c, q, &mut w);
                }
            }
            let nw = self.eval(&w, &w).sqrt();
            cols.push(linalg::scaled(&w, S::one() / nw));
        }
        Matrix::from_columns(&cols)
    }

    /// Largest `|b_i^T g b_j - delta_ij|` for the columns of `basis`.
    pub fn orthonormality_residual(&self, basis: &Matrix<S>) -> S {
        self.g.congruence(basis).sub(&Matrix::identity(self.dim())).max_abs()
    }
}

fn check_dims<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>) -> Result<()> {
    if a.dim() != g.dim() {
        return Err(JordanError::DimensionMismatch(format!(
            "algebra has dimension {} but metric has dimension {}",
            a.dim(),
            g.dim()
        )));
    }
    Ok(())
}

/// Coefficients `gamma[i][j][k]`: the `k`-th coordinate of `nabla_{e_i} e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<S> {
    dim: usize,
    gamma: Vec<S>,
}

impl<S: Scalar> Connection<S> {
    pub fn from_gamma(dim: usize, gamma: Vec<S>) -> Result<Self> {
        if gamma.len() != dim * dim * dim {
            return Err(JordanError::InvalidStructure("connection needs n^3 coefficients".into()));
        }
        Ok(Self { dim, gamma })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> S {
        self.gamma[(i * self.dim + j) * self.dim + k]
    }

    pub fn coefficients(&self) -> &[S] {
        &self.gamma
    }

    pub fn coefficients_mut(&mut self) -> &mut [S] {
        &mut self.gamma
    }

    /// `nabla_x y`.
    pub fn apply(&self, x: &[S], y: &[S]) -> Vec<S> {
        self.as_algebra().product(x, y)
    }

    /// Matrix of `nabla_{e_i}` (column `j` is `nabla_{e_i} e_j`).
    pub fn operator(&self, i: usize) -> Matrix<S> {
        let n = self.dim;
        Matrix::from_fn(n, n, |l, k| self.gamma(i, k, l))
    }

    /// The product `x . y = nabla_x y`.
    pub fn as_algebra(&self) -> Algebra<S> {
        Algebra::new(self.dim, self.gamma.clone()).expect("finite coefficients")
    }

    /// Largest violation of `nabla_x y + nabla_y x = x y` on basis pairs.
    pub fn torsion_residual(&self, a: &Algebra<S>) -> S {
        let n = self.dim;
        let mut worst = S::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = self.gamma(i, j, k) + self.gamma(j, i, k) - a.c(i, j, k);
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }

    /// Largest violation of `<nabla_x y, z> = <y, nabla_x z>` on basis triples.
    pub fn metric_residual(&self, g: &InnerProduct<S>) -> S {
        let n = self.dim;
        let gm = g.matrix();
        // k[i][j][l] = <nabla_i e_j, e_l>
        let mut kk = vec![S::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let mut s = S::zero();
                    for m in 0..n {
                        s = s + self.gamma(i, j, m) * gm[(m, l)];
                    }
                    kk[(i * n + j) * n + l] = s;
                }
            }
        }
        let mut worst = S::zero();
        for i in 0..n {
            for j in 0..n {
                for l in 0..j {
                    worst = worst.max((kk[(i * n + j) * n + l] - kk[(i * n + l) * n + j]).abs());
                }
            }
        }
        worst
    }
}

/// The Jordan-Levi-Civita connection, from
/// `<nabla_x y, z> = (<xy, z> - <yz, x> + <zx, y>) / 2`.
pub fn levi_civita<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>) -> Result<Connection<S>> {
    check_dims(a, g)?;
    let n = a.dim();
    let gm = g.matrix();
    let ginv = gm.inverse().ok_or(JordanError::NotPositiveDefinite)?;
    // p[i][j][l] = <e_i e_j, e_l>
    let mut p = vec![S::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let row = gm.tr_mul_vec(&a.basis_product(i, j));
            p[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&row);
        }
    }
    let half = S::lit(0.5);
    let pp = |i: usize, j: usize, l: usize| p[(i * n + j) * n + l];
    let mut gamma = vec![S::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let kvec: Vec<S> = (0..n).map(|l| half * (pp(i, j, l) - pp(j, l, i) + pp(l, i, j))).collect();
            let col = ginv.mul_vec(&kvec);
            gamma[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&col);
        }
    }
    Ok(Connection { dim: n, gamma })
}

/// Algebra and connection expressed in an orthonormal basis.
struct OnFrame<S> {
    basis: Matrix<S>,
    alg: Algebra<S>,
    conn: Connection<S>,
}

fn on_frame<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>, basis: Option<&Matrix<S>>) -> Result<OnFrame<S>> {
    check_dims(a, g)?;
    if !a.is_commutative(S::default_tol()) {
        return Err(JordanError::InvalidStructure("metric invariants need a commutative product".into()));
    }
    let basis = match basis {
        Some(b) => {
            if b.rows() != a.dim() || b.cols() != a.dim() {
                return Err(JordanError::DimensionMismatch("basis must be n x n".into()));
            }
            let r = g.orthonormality_residual(b);
            let lim = S::default_tol();
            if r > lim {
                return Err(JordanError::Inconsistent {
                    what: "supplied basis is not orthonormal".into(),
                    residual: r.as_f64(),
                });
            }
            b.clone()
        }
        None => g.orthonormal_basis(),
    };
    let alg = a.change_basis(&basis)?;
    let conn = levi_civita(&alg, &InnerProduct::identity(a.dim()))?;
    Ok(OnFrame { basis, alg, conn })
}

/// Jordan curvature tensor `R[i][j][k][l] = <R(b_i, b_j) b_k, b_l>` in the
/// orthonormal basis `basis` (columns, algebra coordinates), with
/// `R(x, y) = nabla_{xy} - nabla_x nabla_y - nabla_y nabla_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curvature4<S> {
    dim: usize,
    r: Vec<S>,
    basis: Matrix<S>,
}

impl<S: Scalar> Curvature4<S> {
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        let n = self.dim;
        self.r[((i * n + j) * n + k) * n + l]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn entries(&self) -> &[S] {
        &self.r
    }

    pub fn max_abs(&self) -> S {
        linalg::max_abs(&self.r)
    }

    /// `R(b_i, b_j) b_k` in orthonormal coordinates.
    pub fn apply_basis(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        (0..self.dim).map(|l| self.get(i, j, k, l)).collect()
    }

    /// `(max |R_ijkl - R_jikl|, max |R_ijkl - R_ijlk|)`.
    pub fn symmetry_residuals(&self) -> (S, S) {
        let n = self.dim;
        let (mut a, mut b) = (S::zero(), S::zero());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(i, j, k, l);
                        a = a.max((v - self.get(j, i, k, l)).abs());
                        b = b.max((v - self.get(i, j, l, k)).abs());
                    }
                }
            }
        }
        (a, b)
    }

    /// `max |R_ijkl - R_klij|`; not zero in general.
    pub fn pair_symmetry_violation(&self) -> S {
        let n = self.dim;
        let mut m = S::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        m = m.max((self.get(i, j, k, l) - self.get(k, l, i, j)).abs());
                    }
                }
            }
        }
        m
    }

    /// `R(b_i, b_j) b_k + R(b_j, b_k) b_i + R(b_k, b_i) b_j`.
    pub fn cyclic_sum(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        (0..self.dim)
            .map(|l| self.get(i, j, k, l) + self.get(j, k, i, l) + self.get(k, i, j, l))
            .collect()
    }

    /// Largest entry of the cyclic sum over basis triples.
    pub fn cyclic_residual(&self) -> S {
        let n = self.dim;
        let mut m = S::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m = m.max(linalg::max_abs(&self.cyclic_sum(i, j, k)));
                }
            }
        }
        m
    }

    /// `<R(x, y) z, w>` for vectors in orthonormal coordinates.
    pub fn eval_on(&self, x: &[S], y: &[S], z: &[S], w: &[S]) -> S {
        let n = self.dim;
        let mut s = S::zero();
        for i in 0..n {
            for j in 0..n {
                let xy = x[i] * y[j];
                if xy == S::zero() {
                    continue;
                }
                for k in 0..n {
                    let xyz = xy * z[k];
                    if xyz == S::zero() {
                        continue;
                    }
                    for l in 0..n {
                        s = s + xyz * w[l] * self.get(i, j, k, l);
                    }
                }
            }
        }
        s
    }
}

fn curvature_on<S: Scalar>(alg: &Algebra<S>, conn: &Connection<S>, basis: Matrix<S>) -> Curvature4<S> {
    let n = alg.dim();
    let ops: Vec<Matrix<S>> = (0..n).map(|i| conn.operator(i)).collect();
    let mut r = vec![S::zero(); n * n * n * n];
    for i in 0..n {
        for j in i..n {
            let mut m = Matrix::zeros(n, n);
            for (k, op) in ops.iter().enumerate() {
                let w = alg.c(i, j, k);
                if w != S::zero() {
                    m = m.add(&op.scale(w));
                }
            }
            let m = m.sub(&ops[i].matmul(&ops[j])).sub(&ops[j].matmul(&ops[i]));
            for k in 0..n {
                for l in 0..n {
                    r[((i * n + j) * n + k) * n + l] = m[(l, k)];
                    r[((j * n + i) * n + k) * n + l] = m[(l, k)];
                }
            }
        }
    }
    Curvature4 { dim: n, r, basis }
}

pub fn curvature<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>) -> Result<Curvature4<S>> {
    let f = on_frame(a, g, None)?;
    Ok(curvature_on(&f.alg, &f.conn, f.basis))
}

/// Curvature in a caller-supplied orthonormal basis.
pub fn curvature_in_basis<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>, basis: &Matrix<S>) -> Result<Curvature4<S>> {
    let f = on_frame(a, g, Some(basis))?;
    Ok(curvature_on(&f.alg, &f.conn, f.basis))
}

/// `<R(x, y) x, y> / (<x, x><y, y> - <x, y>^2)` for algebra-coordinate `x, y`.
pub fn jordan_sectional<S: Scalar>(r: &Curvature4<S>, g: &InnerProduct<S>, x: &Element<S>, y: &Element<S>) -> Result<S> {
    let n = r.dim();
    for v in [x, y] {
        if v.dim() != n {
            return Err(JordanError::InvalidElement {
                expected: n,
                found: v.dim(),
            });
        }
    }
    let (xx, yy, xy) = (g.eval(x.coords(), x.coords()), g.eval(y.coords(), y.coords()), g.eval(x.coords(), y.coords()));
    let den = xx * yy - xy * xy;
    if den <= S::lit(1e-12) * xx * yy || den <= S::zero() {
        return Err(JordanError::DegeneratePair);
    }
    let pinv = r.basis().inverse().ok_or(JordanError::SingularMatrix)?;
    let xo = pinv.mul_vec(x.coords());
    let yo = pinv.mul_vec(y.coords());
    Ok(r.eval_on(&xo, &yo, &xo, &yo) / den)
}

/// Moment map of the product at the given metric, in orthonormal
/// coordinates of `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentMap<S> {
    pub basis: Matrix<S>,
    /// Operator form `sum L L^t - sum L^t L - sum R^t R`.
    pub m_mu: Matrix<S>,
    /// The same map from the bilinear formula.
    pub m_mu_bilinear: Matrix<S>,
    /// `||mu||^2`.
    pub norm_sq: S,
    /// `m_mu / ||mu||^2`.
    pub m: Matrix<S>,
}

impl<S: Scalar> MomentMap<S> {
    pub fn agreement_residual(&self) -> S {
        self.m_mu.sub(&self.m_mu_bilinear).max_abs()
    }
}

fn moment_operator<S: Scalar>(alg: &Algebra<S>) -> Matrix<S> {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        let e = Element::<S>::basis(n, i).into_coords();
        let l = alg.left_mul_coords(&e);
        let r = alg.right_mul_coords(&e);
        m = m
            .add(&l.matmul(&l.transpose()))
            .sub(&l.transpose().matmul(&l))
            .sub(&r.transpose().matmul(&r));
    }
    m
}

fn moment_bilinear<S: Scalar>(alg: &Algebra<S>) -> Matrix<S> {
    let n = alg.dim();
    Matrix::from_fn(n, n, |a, b| {
        let mut s = S::zero();
        for i in 0..n {
            for j in 0..n {
                s = s + alg.c(i, j, a) * alg.c(i, j, b) - alg.c(i, a, j) * alg.c(i, b, j) - alg.c(a, i, j) * alg.c(b, i, j);
            }
        }
        s
    })
}

fn moment_on<S: Scalar>(alg: &Algebra<S>, basis: Matrix<S>) -> Result<MomentMap<S>> {
    let norm_sq: S = alg.constants().iter().map(|&c| c * c).sum();
    if norm_sq == S::zero() {
        return Err(JordanError::ZeroAlgebra);
    }
    let m_mu = moment_operator(alg);
    let m_mu_bilinear = moment_bilinear(alg);
    let m = m_mu.scale(S::one() / norm_sq);
    Ok(MomentMap {
        basis,
        m_mu,
        m_mu_bilinear,
        norm_sq,
        m,
    })
}

/// The moment map `M_mu` at `g`. Works for any bilinear product.
pub fn moment_map<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>) -> Result<MomentMap<S>> {
    check_dims(a, g)?;
    let basis = g.orthonormal_basis();
    let alg = a.change_basis(&basis)?;
    moment_on(&alg, basis)
}

/// Ricci-type invariants in the orthonormal basis `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciData<S> {
    pub basis: Matrix<S>,
    /// `ric(u, v) = Tr(x -> R(u, x) v)`.
    pub ric: Matrix<S>,
    /// Symmetrisation of `ric`.
    pub ric_sym: Matrix<S>,
    /// The closed formula `-1/2 sum <XE_i,E_j><YE_i,E_j> + 1/4 sum <E_iE_j,X><E_iE_j,Y> + B/2 - <H,XY>/4`.
    pub ric_formula: Matrix<S>,
    /// The analogous closed formula for the non-symmetric `ric`, with
    /// `-<H, nabla_X Y>/2` as last term.
    pub ric_nonsym_formula: Matrix<S>,
    pub sc: S,
    pub sc_formula: S,
    /// Mean curvature vector `sum E_i^2`, algebra coordinates.
    pub h: Element<S>,
    /// Mean curvature vector in orthonormal coordinates.
    pub h_on: Vec<S>,
    /// `M = M_mu / 4`, the moment-map part of the Ricci operator.
    pub m: Matrix<S>,
    pub moment: MomentMap<S>,
    pub killing: Matrix<S>,
    /// `<S_H x, y> = <H, xy>`.
    pub s_h: Matrix<S>,
    pub einstein_constant: Option<S>,
    /// `||Ric - (sc/n) I||_F`.
    pub einstein_residual: S,
    pub checks: ValidationReport,
}

impl<S: Scalar> RicciData<S> {
    pub fn dim(&self) -> usize {
        self.ric.rows()
    }

    /// `Ric` as a bilinear form on algebra coordinates.
    pub fn ric_in_algebra_coords(&self) -> Matrix<S> {
        let pinv = self.basis.inverse().expect("orthonormal basis is invertible");
        self.ric_sym.congruence(&pinv)
    }

    /// `M + B/2 - S_H/4`.
    pub fn operator_formula(&self) -> Matrix<S> {
        let half = S::lit(0.5);
        let quarter = S::lit(0.25);
        self.m.add(&self.killing.scale(half)).sub(&self.s_h.scale(quarter))
    }

    /// `||Ric - c g|| / ||g||` for the best constant `c = sc / n`.
    pub fn relative_einstein_residual(&self) -> S {
        self.einstein_residual / S::from_usize_lossy(self.dim()).sqrt()
    }
}

fn ricci_on<S: Scalar>(f: OnFrame<S>) -> RicciData<S> {
    let OnFrame { basis, alg, conn } = f;
    let n = alg.dim();
    let c = |i: usize, j: usize, k: usize| alg.c(i, j, k);
    let scale = alg.scale();
    let curv = curvature_on(&alg, &conn, basis.clone());

    let ric = Matrix::from_fn(n, n, |u, v| (0..n).map(|i| curv.get(u, i, v, i)).sum());
    let ric_sym = ric.symmetric_part();

    let h_on: Vec<S> = (0..n).map(|k| (0..n).map(|i| c(i, i, k)).sum()).collect();
    let killing = structure::killing_form(&alg).into_matrix();
    let s_h = Matrix::from_fn(n, n, |a, b| (0..n).map(|k| h_on[k] * c(a, b, k)).sum());
    let quarter = S::lit(0.25);
    let half = S::lit(0.5);
    let m_ricci = Matrix::from_fn(n, n, |a, b| {
        let mut s1 = S::zero();
        let mut s2 = S::zero();
        for i in 0..n {
            for j in 0..n {
                s1 = s1 + c(a, i, j) * c(b, i, j);
                s2 = s2 + c(i, j, a) * c(i, j, b);
            }
        }
        -half * s1 + quarter * s2
    });
    let ric_formula = m_ricci.add(&killing.scale(half)).sub(&s_h.scale(quarter));
    let h_nabla = Matrix::from_fn(n, n, |a, b| (0..n).map(|k| h_on[k] * conn.gamma(a, b, k)).sum());
    let ric_nonsym_formula = m_ricci.add(&killing.scale(half)).sub(&h_nabla.scale(half));

    let sc = ric_sym.trace();
    let c2: S = alg.constants().iter().map(|&v| v * v).sum();
    let hh = linalg::dot(&h_on, &h_on);
    let sc_formula = -quarter * c2 + half * killing.trace() - quarter * hh;

    let moment = match moment_on(&alg, basis.clone()) {
        Ok(m) => m,
        Err(_) => MomentMap {
            basis: basis.clone(),
            m_mu: Matrix::zeros(n, n),
            m_mu_bilinear: Matrix::zeros(n, n),
            norm_sq: S::zero(),
            m: Matrix::zeros(n, n),
        },
    };
    let m = moment.m_mu.scale(quarter);

    let nn = S::from_usize_lossy(n);
    let cst = sc / nn;
    let einstein_residual = ric_sym.sub(&Matrix::identity(n).scale(cst)).frobenius_norm();
    let s2 = scale * scale;
    let einstein_constant = if einstein_residual <= S::lit(1e-8) * nn.sqrt() * s2 {
        Some(cst)
    } else {
        None
    };

    let tol = S::default_tol() * s2;
    let h = Element::new(basis.mul_vec(&h_on));
    let operator_formula = m.add(&killing.scale(half)).sub(&s_h.scale(quarter));
    let checks = ValidationReport::new(vec![
        Check::new(
            "ricci_closed_formula",
            ric_sym.sub(&ric_formula).max_abs().as_f64(),
            tol.as_f64(),
        ),
        Check::new(
            "ric_closed_formula",
            ric.sub(&ric_nonsym_formula).max_abs().as_f64(),
            tol.as_f64(),
        ),
        Check::new("scalar_curvature_formula", (sc - sc_formula).abs().as_f64(), (tol * nn).as_f64()),
        Check::new(
            "moment_map_forms",
            moment.agreement_residual().as_f64(),
            tol.as_f64(),
        ),
        Check::new(
            "ricci_operator_identity",
            ric_sym.sub(&operator_formula).max_abs().as_f64(),
            tol.as_f64(),
        ),
    ]);

    RicciData {
        basis,
        ric,
        ric_sym,
        ric_formula,
        ric_nonsym_formula,
        sc,
        sc_formula,
        h,
        h_on,
        m,
        moment,
        killing,
        s_h,
        einstein_constant,
        einstein_residual,
        checks,
    }
}

pub fn ricci<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>) -> Result<RicciData<S>> {
    Ok(ricci_on(on_frame(a, g, None)?))
}

/// Ricci data in a caller-supplied orthonormal basis (columns, algebra
/// coordinates).
pub fn ricci_in_basis<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>, basis: &Matrix<S>) -> Result<RicciData<S>> {
    Ok(ricci_on(on_frame(a, g, Some(basis))?))
}

/// Flatness and the left skew-symmetric structure carried by a flat
/// connection.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatLssaReport {
    pub curvature_max: f64,
    pub flat: bool,
    /// `None` when the metric is not flat.
    pub lssa_residual: Option<f64>,
    /// Largest deviation of `x.y + y.x` from the product; `None` when not flat.
    pub symmetrization_residual: Option<f64>,
    pub threshold: f64,
}

impl FlatLssaReport {
    pub fn lssa_passed(&self) -> Option<bool> {
        self.lssa_residual.map(|r| r <= self.threshold)
    }

    pub fn symmetrization_passed(&self) -> Option<bool> {
        self.symmetrization_residual.map(|r| r <= self.threshold)
    }

    pub fn to_report(&self) -> ValidationReport {
        let mut checks = vec![Check::new("flat", self.curvature_max, self.threshold)];
        if let Some(r) = self.lssa_residual {
            checks.push(Check::new("lssa_identity", r, self.threshold));
        }
        if let Some(r) = self.symmetrization_residual {
            checks.push(Check::new("symmetrization_recovers_product", r, self.threshold));
        }
        ValidationReport::new(checks)
    }
}

pub fn check_flat_lssa<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>) -> Result<FlatLssaReport> {
    let f = on_frame(a, g, None)?;
    let curv = curvature_on(&f.alg, &f.conn, f.basis.clone());
    let s = a.scale().max(f.alg.scale());
    let threshold = (S::default_tol() * s * s).as_f64();
    let curvature_max = curv.max_abs().as_f64();
    let flat = curvature_max <= threshold;
    let (lssa_residual, symmetrization_residual) = if flat {
        let conn = levi_civita(a, g)?;
        let diamond = conn.as_algebra();
        let sym = diamond.symmetrize_product();
        (
            Some(diamond.lssa_residual().as_f64()),
            Some(sym.distance(a).as_f64()),
        )
    } else {
        (None, None)
    };
    Ok(FlatLssaReport {
        curvature_max,
        flat,
        lssa_residual,
        symmetrization_residual,
        threshold,
    })
}

/// Sampled evidence for non-positive Jordan curvature under an associative
/// metric.
#[derive(Clone, Debug, PartialEq)]
pub struct NonpositivityReport {
    pub trials: usize,
    /// Largest `<xy, xy> - <x^2, y^2>` over unit pairs.
    pub max_gap: f64,
    /// Largest and smallest sampled Jordan sectional curvature; `None` in
    /// dimension one.
    pub max_jordan_curvature: Option<f64>,
    pub min_jordan_curvature: Option<f64>,
    /// Largest cyclic sum `R(x,y)z + R(y,z)x + R(z,x)y` on basis triples.
    pub bianchi_residual: f64,
    /// Largest `|nabla_x y - xy/2|` on basis pairs.
    pub half_product_residual: f64,
    pub gap_threshold: f64,
    pub curvature_threshold: f64,
}

impl NonpositivityReport {
    pub fn passed(&self) -> bool {
        self.max_gap <= self.gap_threshold
            && self.max_jordan_curvature.is_none_or(|j| j <= self.curvature_threshold)
            && self.bianchi_residual <= self.curvature_threshold
    }
}

/// Samples `trials` random pairs of unit vectors and records the Lemma
/// `<xy, xy> <= <x^2, y^2>` gap and the Jordan sectional curvature. Trial
/// `k` draws from its own sub-stream of `seed`.
pub fn sample_nonpositivity<S: Scalar>(
    a: &Algebra<S>,
    g: &InnerProduct<S>,
    trials: usize,
    seed: u64,
) -> Result<NonpositivityReport> {
    check_dims(a, g)?;
    let form = g.as_form();
    let assoc = form.associativity_residual(a);
    if assoc > S::default_tol() * a.scale() * form.norm().max(S::one()) {
        return Err(JordanError::NotAssociativeMetric { residual: assoc.as_f64() });
    }
    if !structure::is_formally_real(a, S::default_tol()) {
        return Err(JordanError::NotFormallyReal);
    }
    let f = on_frame(a, g, None)?;
    let n = a.dim();
    let alg = &f.alg;
    let conn = &f.conn;
    let s = alg.scale();
    let tol = S::default_tol();

    let curv = curvature_on(alg, conn, f.basis.clone());
    let bianchi = curv.cyclic_residual();
    let mut half_res = S::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                half_res = half_res.max((conn.gamma(i, j, k) - S::lit(0.5) * alg.c(i, j, k)).abs());
            }
        }
    }

    let mut max_gap = S::neg_infinity();
    let mut max_j: Option<S> = None;
    let mut min_j: Option<S> = None;
    for t in 0..trials {
        let mut rng = random::substream(seed, t as u64);
        let x = random::gaussian_vec::<S, _>(&mut rng, n);
        let x = linalg::scaled(&x, S::one() / linalg::norm(&x));
        let y = random::gaussian_vec::<S, _>(&mut rng, n);
        let y = linalg::scaled(&y, S::one() / linalg::norm(&y));
        let xy = alg.product(&x, &y);
        let x2 = alg.product(&x, &x);
        let y2 = alg.product(&y, &y);
        let gap = linalg::dot(&xy, &xy) - linalg::dot(&x2, &y2);
        max_gap = max_gap.max(gap);
        if n < 2 {
            continue;
        }
        let c = linalg::dot(&x, &y);
        let den = S::one() - c * c;
        if den <= S::lit(1e-12) {
            continue;
        }
        // R(x, y) x = nabla_{xy} x - nabla_x nabla_y x - nabla_y nabla_x x
        let nyx = conn.apply(&y, &x);
        let nxx = conn.apply(&x, &x);
        let mut rxy = conn.apply(&xy, &x);
        linalg::axpy(-S::one(), &conn.apply(&x, &nyx), &mut rxy);
        linalg::axpy(-S::one(), &conn.apply(&y, &nxx), &mut rxy);
        let j = linalg::dot(&rxy, &y) / den;
        max_j = Some(max_j.map_or(j, |m| m.max(j)));
        min_j = Some(min_j.map_or(j, |m| m.min(j)));
    }
    Ok(NonpositivityReport {
        trials,
        max_gap: if trials == 0 { 0.0 } else { max_gap.as_f64() },
        max_jordan_curvature: max_j.map(|v| v.as_f64()),
        min_jordan_curvature: min_j.map(|v| v.as_f64()),
        bianchi_residual: bianchi.as_f64(),
        half_product_residual: half_res.as_f64(),
        gap_threshold: (tol * s.powi(4)).as_f64(),
        curvature_threshold: (tol * s * s).as_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn id(n: usize) -> InnerProduct<f64> {
        InnerProduct::identity(n)
    }

    #[test]
    fn orthonormal_basis_examples() {
        assert_eq!(id(3).orthonormal_basis(), Matrix::identity(3));
        let g = InnerProduct::new(Matrix::diagonal(&[4.0, 1.0])).unwrap();
        let b = g.orthonormal_basis();
        assert!(b.sub(&Matrix::diagonal(&[0.5, 1.0])).max_abs() < 1e-15);
        assert_eq!(
            InnerProduct::new(Matrix::diagonal(&[1.0, -1.0])),
            Err(JordanError::NotPositiveDefinite)
        );
    }

    #[test]
    fn remark_connection_table() {
        let a = catalog::remark_two_dim::<f64>();
        let c = levi_civita(&a, &id(2)).unwrap();
        // nabla_{e1} e1 = e1 e1 / 2 is forced by the torsion condition
        let expect = [[[0.5, 0.0], [0.0, 1.0]], [[0.0, 0.0], [0.0, 0.0]]];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert!((c.gamma(i, j, k) - expect[i][j][k]).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn remark_curvature() {
        let a = catalog::remark_two_dim::<f64>();
        let r = curvature(&a, &id(2)).unwrap();
        assert_eq!(r.apply_basis(0, 0, 1), vec![0.0, -1.0]);
        assert_eq!(r.apply_basis(0, 1, 0), vec![0.0, 0.0]);
        assert_eq!(r.apply_basis(1, 1, 1), vec![0.0, 0.0]);
        // R(e1,e1)e2 + R(e1,e2)e1 + R(e2,e1)e1 = -e2
        assert_eq!(r.cyclic_sum(0, 0, 1), vec![0.0, -1.0]);
        assert!(r.pair_symmetry_violation() > 0.5);
        assert_eq!(r.symmetry_residuals(), (0.0, 0.0));
    }

    #[test]
    fn trivial_algebra_is_flat() {
        let a = Algebra::<f64>::zero(3);
        let g = InnerProduct::new(Matrix::diagonal(&[1.0, 2.0, 3.0])).unwrap();
        let c = levi_civita(&a, &g).unwrap();
        assert!(c.coefficients().iter().all(|&v| v == 0.0));
        assert_eq!(curvature(&a, &g).unwrap().max_abs(), 0.0);
        let r = curvature(&a, &id(3)).unwrap();
        let x = Element::basis(3, 0);
        let y = Element::basis(3, 1);
        assert_eq!(jordan_sectional(&r, &id(3), &x, &y).unwrap(), 0.0);
        assert_eq!(jordan_sectional(&r, &id(3), &x, &x), Err(JordanError::DegeneratePair));
        assert_eq!(moment_map(&a, &id(3)).unwrap_err(), JordanError::ZeroAlgebra);
    }

    #[test]
    fn connection_invariants_under_random_metric() {
        let a = catalog::sym2::<f64>();
        let g = InnerProduct::new(catalog::random_metric(&mut random::seeded(2), 3)).unwrap();
        let c = levi_civita(&a, &g).unwrap();
        assert!(c.torsion_residual(&a) < 1e-12);
        assert!(c.metric_residual(&g) < 1e-12);
    }

    #[test]
    fn associative_metric_gives_half_product() {
        let a = catalog::sym2::<f64>();
        let tau = structure::tau_form(&a).into_matrix();
        let c = levi_civita(&a, &InnerProduct::new(tau).unwrap()).unwrap();
        for (x, y) in c.coefficients().iter().zip(a.constants()) {
            assert!((x - 0.5 * y).abs() < 1e-14);
        }
    }

    #[test]
    fn psi_examples() {
        let r1 = ricci(&catalog::psi1::<f64>(), &id(2)).unwrap();
        assert!(r1.ric_sym.max_abs() < 1e-14);
        assert_eq!(r1.einstein_constant, Some(0.0));
        let r2 = ricci(&catalog::psi2::<f64>(), &id(2)).unwrap();
        // from the trace definition and the closed formula alike
        assert!(r2.ric_sym.sub(&Matrix::diagonal(&[0.5, -1.5])).max_abs() < 1e-14);
        assert_eq!(r2.einstein_constant, None);
        assert!(r1.checks.passed() && r2.checks.passed(), "{:?}", r2.checks);
    }

    #[test]
    fn example_59_is_flat_einstein() {
        for n in 2..6 {
            let r = ricci(&catalog::example_59::<f64>(n), &id(n)).unwrap();
            assert!(r.ric_sym.max_abs() < 1e-14);
            assert!(r.checks.passed());
        }
    }

    #[test]
    fn moment_map_psi1() {
        let m = moment_map(&catalog::psi1::<f64>(), &id(2)).unwrap();
        assert_eq!(m.m_mu, Matrix::diagonal(&[-1.0, -1.0]));
        assert_eq!(m.agreement_residual(), 0.0);
        assert_eq!(m.norm_sq, 2.0);
    }

    #[test]
    fn flat_lssa_examples() {
        let b = catalog::half_unit::<f64>(3);
        let rep = check_flat_lssa(&b, &id(3)).unwrap();
        assert!(rep.flat && rep.lssa_passed() == Some(true) && rep.symmetrization_passed() == Some(true));
        let a = catalog::orthogonal_idempotents::<f64>(3);
        let rep = check_flat_lssa(&a, &id(3)).unwrap();
        assert!(rep.flat && rep.lssa_passed() == Some(true));
        // Ricci-flat but not flat
        let rep = check_flat_lssa(&catalog::example_59::<f64>(3), &id(3)).unwrap();
        assert!(!rep.flat);
        let rep = check_flat_lssa(&catalog::psi2::<f64>(), &id(2)).unwrap();
        assert!(!rep.flat && rep.lssa_residual.is_none());
    }

    #[test]
    fn nonpositivity_small_cases() {
        let one = catalog::one_dim::<f64>();
        let rep = sample_nonpositivity(&one, &id(1), 50, 1).unwrap();
        assert!(rep.max_jordan_curvature.is_none());
        assert!(rep.max_gap.abs() < 1e-15);

        let p1 = catalog::psi1::<f64>();
        let rep = sample_nonpositivity(&p1, &id(2), 200, 1).unwrap();
        assert!(rep.max_gap.abs() < 1e-14);
        assert!(rep.max_jordan_curvature.unwrap().abs() < 1e-12);
        assert!(rep.min_jordan_curvature.unwrap().abs() < 1e-12);

        assert!(matches!(
            sample_nonpositivity(&catalog::sym2::<f64>(), &id(3), 10, 1),
            Err(JordanError::NotAssociativeMetric { .. })
        ));
    }
}
