//! Jordan-Einstein metrics on simple formally real Jordan algebras by
//! deforming the trace metric along the identity, and the obstruction
//! certificate for nilpotent algebras.

use crate::algebra::{Algebra, Element};
use crate::error::{JordanError, Result};
use crate::geometry::{self, InnerProduct, RicciData};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::structure::{self, PeirceData};
use crate::validation::{Check, ValidationReport};

fn check_tol<S: Scalar>() -> S {
    S::default_tol() * S::lit(10.0)
}

/// The trace metric `<X, Y>_0 = tr(XY) = (r/n) tau(X, Y)`.
pub fn canonical_metric<S: Scalar>(a: &Algebra<S>, r: usize) -> Result<InnerProduct<S>> {
    if r == 0 || r > a.dim() {
        return Err(JordanError::NotApplicable(format!("rank {r} is out of range")));
    }
    let tau = structure::tau_form(a).into_matrix();
    let ratio = S::from_usize_lossy(r) / S::from_usize_lossy(a.dim());
    InnerProduct::new(tau.scale(ratio))
}

fn identity_of<S: Scalar>(a: &Algebra<S>) -> Result<Element<S>> {
    a.identity_element(S::default_tol()).ok_or(JordanError::NoIdentity)
}

/// `-(rd/16) g_0 + (d/16) tr (x) tr`, algebra coordinates.
pub fn ric0_closed_form<S: Scalar>(g0: &InnerProduct<S>, tr: &[S], r: usize, d: usize) -> Matrix<S> {
    let n = g0.dim();
    let rd = S::from_usize_lossy(r * d) / S::lit(16.0);
    let d16 = S::from_usize_lossy(d) / S::lit(16.0);
    Matrix::from_fn(n, n, |i, j| -rd * g0.matrix()[(i, j)] + d16 * tr[i] * tr[j])
}

/// Checks the mean curvature vector and Ricci tensor of the trace metric
/// against their closed forms. Checks: `mean_curvature`, `ricci_closed_form`,
/// `ricci_kills_identity`.
pub fn ric0_check<S: Scalar>(a: &Algebra<S>, g0: &InnerProduct<S>, frame: &[Element<S>]) -> Result<ValidationReport> {
    let tol = S::default_tol().max(S::lit(1e-10));
    let peirce = structure::peirce_decompose(a, frame, tol)?;
    let (r, d, n) = (peirce.rank, peirce.d, a.dim());
    let e = identity_of(a)?;
    let ric = geometry::ricci(a, g0)?;
    let scale = a.scale().max(S::one());
    let lim = check_tol::<S>() * scale * scale;

    let h_expect = e.scale(S::from_usize_lossy(n) / S::from_usize_lossy(r));
    let h_res = ric.h.distance_max(&h_expect);

    let ric_alg = ric.ric_in_algebra_coords();
    let tr = peirce.reduced_trace();
    let closed = ric0_closed_form(g0, &tr, r, d);
    let form_res = ric_alg.sub(&closed).max_abs();

    let kill = linalg::max_abs(&ric_alg.mul_vec(e.coords()));

    Ok(ValidationReport::new(vec![
        Check::new("mean_curvature", h_res.as_f64(), (lim * S::from_usize_lossy(n)).as_f64()),
        Check::new("ricci_closed_form", form_res.as_f64(), lim.as_f64()),
        Check::new("ricci_kills_identity", kill.as_f64(), lim.as_f64()),
    ]))
}

/// `B(X, Y) = (1 + (r-2)d/4) tr(XY) + (d/4) tr(X) tr(Y)` on algebra
/// coordinates, with `tr(XY) = <X, Y>_0`.
pub fn killing_closed_form<S: Scalar>(g0: &InnerProduct<S>, tr: &[S], r: usize, d: usize) -> Matrix<S> {
    let n = g0.dim();
    let a = S::one() + S::from_usize_lossy(r) * S::from_usize_lossy(d) / S::lit(4.0)
        - S::from_usize_lossy(2 * d) / S::lit(4.0);
    let b = S::from_usize_lossy(d) / S::lit(4.0);
    Matrix::from_fn(n, n, |i, j| a * g0.matrix()[(i, j)] + b * tr[i] * tr[j])
}

/// `1/2 ln(1 - rd / (8 + 4(r-1)d))`.
pub fn t_star_closed_form(r: usize, d: usize) -> f64 {
    let (r, d) = (r as f64, d as f64);
    0.5 * (1.0 - r * d / (8.0 + 4.0 * (r - 1.0) * d)).ln()
}

/// Difference of the two sides of the scalar equation whose root is the
/// deformation parameter.
pub fn einstein_equation_residual(t: f64, r: usize, d: usize, n: usize) -> f64 {
    let (r, d, n) = (r as f64, d as f64, n as f64);
    let e2 = (2.0 * t).exp();
    let lhs = (n - 1.0) / (4.0 * r) * (e2 - 1.0);
    let rhs = -(n + 1.0) / (4.0 * r) * e2 + 1.0 / (4.0 * r) + 0.25 + (r - 2.0) * d / 16.0;
    lhs - rhs
}

/// `(n-1)/(4r) (e^{2t} - 1)`, the Einstein constant at the root.
pub fn einstein_constant_closed_form(t: f64, r: usize, n: usize) -> f64 {
    (n as f64 - 1.0) / (4.0 * r as f64) * ((2.0 * t).exp() - 1.0)
}

/// Diagonals of the Lemma blocks at parameter `t`, in the basis
/// `G_1, ..., G_r, E_ij^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaBlocks {
    pub h_coefficient: f64,
    pub m: Vec<f64>,
    pub half_killing: Vec<f64>,
    pub quarter_s_h: Vec<f64>,
}

pub fn lemma_blocks(t: f64, r: usize, d: usize, n: usize) -> LemmaBlocks {
    let (rf, df, nf) = (r as f64, d as f64, n as f64);
    let (em, ep) = ((-2.0 * t).exp(), (2.0 * t).exp());
    let c = 2.0 / rf - 1.0 - (rf - 2.0) * df / 4.0;
    let h = (em + nf - 1.0) / rf;
    let mut m = vec![0.25 * (-(2.0 * nf - 1.0) / rf * em + (nf - 1.0) / rf * ep)];
    let mut b = vec![0.5 * (1.0 + (rf - 1.0) * df / 2.0) * em];
    let mut s = vec![-(em + nf - 1.0) / (4.0 * rf)];
    for _ in 1..n {
        m.push(0.25 * (-2.0 / rf * ep + c));
        b.push(0.5 * (1.0 + (rf - 2.0) * df / 4.0));
        s.push(-(em + nf - 1.0) / (4.0 * rf) * ep);
    }
    LemmaBlocks {
        h_coefficient: h,
        m,
        half_killing: b,
        quarter_s_h: s,
    }
}

#[derive(Clone, Debug)]
pub struct DeformationResult<S> {
    pub algebra: Algebra<S>,
    pub frame: PeirceData<S>,
    pub identity: Element<S>,
    pub canonical: InnerProduct<S>,
    /// Orthonormal basis `H_1..H_r, E_ij^k` of the trace metric (columns).
    pub e_basis: Matrix<S>,
    /// Orthonormal basis `F_1 = E / sqrt(r), F_2..F_r, E_ij^k` (columns).
    pub f_basis: Matrix<S>,
    pub t_star: f64,
    pub ricci_at_t_star: RicciData<S>,
    pub einstein_constant: S,
    pub checks: ValidationReport,
}

impl<S: Scalar> DeformationResult<S> {
    pub fn rank(&self) -> usize {
        self.frame.rank
    }

    pub fn d(&self) -> usize {
        self.frame.d
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Gram matrix of `<x, y>_t = <g_t^{-1} x, g_t^{-1} y>_0`, where `g_t`
    /// scales `F_1` by `e^{-t}` and fixes the other basis vectors.
    pub fn metric_t(&self, t: S) -> InnerProduct<S> {
        let qinv = self.f_basis.inverse().expect("orthonormal basis is invertible");
        let n = self.dim();
        let mut w = vec![S::one(); n];
        w[0] = (t + t).exp();
        InnerProduct::new(Matrix::diagonal(&w).congruence(&qinv)).expect("deformed metric is positive definite")
    }

    /// The orthonormal basis `G_1 = e^{-t} F_1, G_j = F_j, E_ij^k` of
    /// `metric_t(t)`.
    pub fn g_basis(&self, t: S) -> Matrix<S> {
        let mut g = self.f_basis.clone();
        let c0: Vec<S> = g.column(0).iter().map(|&v| v * (-t).exp()).collect();
        g.set_column(0, &c0);
        g
    }

    pub fn ricci_at(&self, t: S) -> Result<RicciData<S>> {
        geometry::ricci_in_basis(&self.algebra, &self.metric_t(t), &self.g_basis(t))
    }

    /// Compares the mean curvature vector and the `M`, `B/2`, `S_H/4`
    /// blocks at `t` with their closed forms.
    pub fn lemma_check(&self, t: S) -> Result<ValidationReport> {
        let ric = self.ricci_at(t)?;
        let (r, d, n) = (self.rank(), self.d(), self.dim());
        let blocks = lemma_blocks(t.as_f64(), r, d, n);
        let diag = |v: &[f64]| Matrix::diagonal(&v.iter().map(|&x| S::lit(x)).collect::<Vec<S>>());
        let scale = self.algebra.scale().max(S::one());
        let lim = (check_tol::<S>() * scale * scale).as_f64();
        let h_expect = self.identity.scale(S::lit(blocks.h_coefficient));
        let half = S::lit(0.5);
        let quarter = S::lit(0.25);
        Ok(ValidationReport::new(vec![
            Check::new("mean_curvature", ric.h.distance_max(&h_expect).as_f64(), lim),
            Check::new("moment_block", ric.m.sub(&diag(&blocks.m)).max_abs().as_f64(), lim),
            Check::new(
                "killing_block",
                ric.killing.scale(half).sub(&diag(&blocks.half_killing)).max_abs().as_f64(),
                lim,
            ),
            Check::new(
                "mean_curvature_block",
                ric.s_h.scale(-quarter).sub(&diag(&blocks.quarter_s_h)).max_abs().as_f64(),
                lim,
            ),
        ]))
    }

    /// `(t, ||Ric_t - c g_t|| / ||g_t||, sc)` at `steps` evenly spaced points
    /// of `[t0, t1]`.
    pub fn scan(&self, t0: f64, t1: f64, steps: usize) -> Result<Vec<ScanRow>> {
        let mut out = Vec::with_capacity(steps);
        for k in 0..steps {
            let t = if steps == 1 {
                t0
            } else {
                t0 + (t1 - t0) * k as f64 / (steps - 1) as f64
            };
            let ric = geometry::ricci(&self.algebra, &self.metric_t(S::lit(t)))?;
            out.push(ScanRow {
                t,
                residual: ric.relative_einstein_residual().as_f64(),
                sc: ric.sc.as_f64(),
            });
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub t: f64,
    pub residual: f64,
    pub sc: f64,
}

/// Orthonormalises `vectors` in order under `g`.
fn gram_schmidt<S: Scalar>(g: &InnerProduct<S>, vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = g.eval(q, &w);
                linalg::axpy(-c, q, &mut w);
            }
        }
        let nw = g.eval(&w, &w).sqrt();
        out.push(linalg::scaled(&w, S::one() / nw));
    }
    out
}

/// Deforms the trace metric along the identity to a Jordan-Einstein metric.
pub fn deform_to_einstein<S: Scalar>(a: &Algebra<S>, frame: &[Element<S>]) -> Result<DeformationResult<S>> {
    let tol = S::default_tol().max(S::lit(1e-10));
    let peirce = structure::peirce_decompose(a, frame, tol)?;
    let (r, d, n) = (peirce.rank, peirce.d, a.dim());
    if r < 2 {
        return Err(JordanError::RankOne);
    }
    let e = identity_of(a)?;
    let g0 = canonical_metric(a, r)?;

    let mut e_cols: Vec<Vec<S>> = peirce.frame.iter().map(|h| h.coords().to_vec()).collect();
    let mut off_cols: Vec<Vec<S>> = Vec::new();
    for ((i, j), b) in &peirce.blocks {
        if i != j {
            let vs: Vec<Vec<S>> = b.iter().map(|v| v.coords().to_vec()).collect();
            off_cols.extend(gram_schmidt(&g0, &vs));
        }
    }
    e_cols.extend(off_cols.iter().cloned());
    let e_basis = Matrix::from_columns(&e_cols);

    let mut span: Vec<Vec<S>> = vec![e.coords().to_vec()];
    span.extend(peirce.frame[..r - 1].iter().map(|h| h.coords().to_vec()));
    let mut f_cols = gram_schmidt(&g0, &span);
    f_cols.extend(off_cols);
    let f_basis = Matrix::from_columns(&f_cols);

    let scale = a.scale().max(S::one());
    let lim = check_tol::<S>() * scale;
    let tr = peirce.reduced_trace();
    let f1_expect = e.scale(S::one() / S::from_usize_lossy(r).sqrt());
    let f1_res = linalg::max_abs(&linalg::sub(&f_basis.column(0), f1_expect.coords()));
    let tr_res = (1..r)
        .map(|j| linalg::dot(&tr, &f_basis.column(j)).abs())
        .fold(S::zero(), S::max);

    let t_star = t_star_closed_form(r, d);
    let mut result = DeformationResult {
        algebra: a.clone(),
        frame: peirce,
        identity: e,
        canonical: g0,
        e_basis,
        f_basis,
        t_star,
        ricci_at_t_star: geometry::ricci(a, &InnerProduct::identity(n))?,
        einstein_constant: S::zero(),
        checks: ValidationReport::new(Vec::new()),
    };
    let ric = result.ricci_at(S::lit(t_star))?;
    let lemma = result.lemma_check(S::lit(t_star))?;

    let mut checks = vec![
        Check::new(
            "e_basis_orthonormal",
            result.canonical.orthonormality_residual(&result.e_basis).as_f64(),
            lim.as_f64(),
        ),
        Check::new(
            "f_basis_orthonormal",
            result.canonical.orthonormality_residual(&result.f_basis).as_f64(),
            lim.as_f64(),
        ),
        Check::new("first_f_is_scaled_identity", f1_res.as_f64(), lim.as_f64()),
        Check::new("f_traceless", tr_res.as_f64(), lim.as_f64()),
        Check::new(
            "t_star_equation",
            einstein_equation_residual(t_star, r, d, n).abs(),
            1e-12,
        ),
        Check::new(
            "einstein_residual",
            ric.relative_einstein_residual().as_f64(),
            (check_tol::<S>() * scale * scale).as_f64(),
        ),
    ];
    checks.extend(lemma.checks.into_iter().map(|mut c| {
        c.name = format!("lemma_{}", c.name);
        c
    }));
    let checks = ValidationReport::new(checks);

    let c = match ric.einstein_constant {
        Some(c) => c,
        None => {
            return Err(JordanError::Inconsistent {
                what: "deformed metric is not Einstein".into(),
                residual: ric.relative_einstein_residual().as_f64(),
            });
        }
    };
    result.einstein_constant = c;
    result.ricci_at_t_star = ric;
    result.checks = checks;
    Ok(result)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignReport {
    pub einstein_constant: f64,
    pub scalar_curvature: f64,
    pub negative: bool,
}

pub fn einstein_constant_sign<S: Scalar>(result: &DeformationResult<S>) -> SignReport {
    let c = result.einstein_constant.as_f64();
    let sc = result.ricci_at_t_star.sc.as_f64();
    SignReport {
        einstein_constant: c,
        scalar_curvature: sc,
        negative: c < 0.0 && sc < 0.0,
    }
}

/// Quantities showing that a metric on a nilpotent Jordan algebra is not
/// Einstein: the Ricci trace is negative while `Ric(z, z) >= 0` on the
/// annihilator.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentCertificate<S> {
    pub trace_ric: S,
    pub trace_m: S,
    pub h_norm_sq: S,
    /// Basis of `{z : z A = 0}`, algebra coordinates.
    pub annihilator: Vec<Element<S>>,
    /// `Ric(z, z)` for each annihilator basis vector.
    pub ric_on_annihilator: Vec<S>,
    /// `<M z, z>` for each annihilator basis vector.
    pub m_on_annihilator: Vec<S>,
    pub tolerance: S,
}

impl<S: Scalar> NilpotentCertificate<S> {
    pub fn trace_negative(&self) -> bool {
        self.trace_ric < -self.tolerance
    }

    pub fn annihilator_nonnegative(&self) -> bool {
        !self.annihilator.is_empty() && self.ric_on_annihilator.iter().all(|&v| v >= -self.tolerance)
    }

    /// `false` also when the annihilator came out empty, which only
    /// happens through numerical trouble.
    pub fn rules_out_einstein(&self) -> bool {
        self.trace_negative() && self.annihilator_nonnegative()
    }
}

pub fn nilpotent_no_einstein_certificate<S: Scalar>(a: &Algebra<S>, g: &InnerProduct<S>) -> Result<NilpotentCertificate<S>> {
    let tol = S::default_tol().max(S::lit(1e-10));
    let jordan = a.check_jordan(tol);
    if !jordan.passed() {
        return Err(JordanError::NotJordan {
            residual: jordan.max_residual(),
        });
    }
    if a.is_trivial() {
        return Err(JordanError::TrivialAlgebra);
    }
    if !structure::is_nilpotent(a, tol) {
        return Err(JordanError::NotNilpotent);
    }
    let ric = geometry::ricci(a, g)?;
    let n = a.dim();
    let trace_m = ric.m.trace();
    let h_norm_sq = linalg::dot(&ric.h_on, &ric.h_on);

    // rows (j, k): sum_i z_i c_ijk
    let stacked = Matrix::from_fn(n * n, n, |row, i| a.c(i, row / n, row % n));
    let kernel = linalg::svd(&stacked).kernel(S::lit(1e-9), S::epsilon() * S::lit(64.0));
    let ric_alg = ric.ric_in_algebra_coords();
    let pinv = ric.basis.inverse().ok_or(JordanError::SingularMatrix)?;
    let mut ric_z = Vec::new();
    let mut m_z = Vec::new();
    let annihilator: Vec<Element<S>> = kernel.into_iter().map(Element::new).collect();
    for z in &annihilator {
        ric_z.push(linalg::dot(z.coords(), &ric_alg.mul_vec(z.coords())));
        let zo = pinv.mul_vec(z.coords());
        m_z.push(linalg::dot(&zo, &ric.m.mul_vec(&zo)));
    }
    let s = a.scale().max(ric.basis.max_abs()).max(S::one());
    Ok(NilpotentCertificate {
        trace_ric: ric.sc,
        trace_m,
        h_norm_sq,
        annihilator,
        ric_on_annihilator: ric_z,
        m_on_annihilator: m_z,
        tolerance: tol * s * s,
    })
}
