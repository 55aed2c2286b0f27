//! Structural invariants of Jordan algebras: trace and Killing forms, the
//! radical, nilpotency, rank and reduced trace, spectral decompositions,
//! Jordan frames and the Peirce decomposition.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element};
use crate::error::{JordanError, Result};
use crate::linalg::{self, Matrix};
use crate::random;
use crate::scalar::Scalar;
use crate::validation::{Check, ValidationReport};

/// Symmetric bilinear form given by its Gram matrix over the algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<S> {
    g: Matrix<S>,
}

impl<S: Scalar> BilinearForm<S> {
    /// Wraps a Gram matrix; it must be symmetric within `1e-12 ||g||`
    /// relative (looser for single precision).
    pub fn new(g: Matrix<S>) -> Result<Self> {
        if !g.is_square() {
            return Err(JordanError::DimensionMismatch("Gram matrix must be square".into()));
        }
        let tol = S::epsilon().sqrt().min(S::lit(1e-12).max(S::epsilon() * S::lit(64.0)));
        if g.asymmetry() > tol * g.frobenius_norm().max(S::one()) {
            return Err(JordanError::InvalidStructure("bilinear form is not symmetric".into()));
        }
        Ok(Self { g: g.symmetric_part() })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.g
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.g
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn eval(&self, x: &[S], y: &[S]) -> S {
        linalg::dot(x, &self.g.mul_vec(y))
    }

    pub fn norm(&self) -> S {
        self.g.frobenius_norm()
    }

    pub fn eigenvalues(&self) -> Vec<S> {
        linalg::sym_eigen(&self.g).values
    }

    /// Largest `|f(e_i e_j, e_k) - f(e_i, e_j e_k)|` over basis triples.
    pub fn associativity_residual(&self, a: &Algebra<S>) -> S {
        let n = a.dim();
        let mut worst = S::zero();
        for i in 0..n {
            for j in 0..n {
                let ij = a.basis_product(i, j);
                let gij = self.g.tr_mul_vec(&ij);
                for k in 0..n {
                    let jk = a.basis_product(j, k);
                    let lhs = gij[k];
                    let rhs = linalg::dot(&self.g.row(i), &jk);
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
        worst
    }

    pub fn is_associative(&self, a: &Algebra<S>, tol: S) -> bool {
        let s = self.norm().max(S::one()) * a.scale();
        self.associativity_residual(a) <= tol * s
    }
}

/// `tau(x, y) = Tr L_{xy}`.
pub fn tau_form<S: Scalar>(a: &Algebra<S>) -> BilinearForm<S> {
    let n = a.dim();
    // Tr L_{e_k} = sum_j c[k][j][j]
    let tr_l: Vec<S> = (0..n).map(|k| (0..n).map(|j| a.c(k, j, j)).sum()).collect();
    let g = Matrix::from_fn(n, n, |i, j| {
        let p = a.basis_product(i, j);
        linalg::dot(&p, &tr_l)
    });
    BilinearForm { g: g.symmetric_part() }
}

/// `B(x, y) = Tr L_x L_y`.
pub fn killing_form<S: Scalar>(a: &Algebra<S>) -> BilinearForm<S> {
    let l = a.left_mul_basis();
    let n = a.dim();
    let g = Matrix::from_fn(n, n, |i, j| l[i].matmul(&l[j]).trace());
    BilinearForm { g: g.symmetric_part() }
}

/// Orthonormal basis of the kernel of `tau`, which for a Jordan algebra is
/// its radical.
pub fn radical<S: Scalar>(a: &Algebra<S>, tol: S) -> Vec<Element<S>> {
    let tau = tau_form(a);
    let cut = tol * tau.norm();
    let eig = linalg::sym_eigen(tau.matrix());
    eig.values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v.abs() <= cut)
        .map(|(j, _)| Element::new(eig.vectors.column(j)))
        .collect()
}

/// Outcome of the lower power chain `A^0 = A`, `A^(k+1) = A A^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// First `m` with `A^m = 0`.
    pub degree: Option<usize>,
    /// Numerical dimensions of `A^0, A^1, ...`.
    pub chain: Vec<usize>,
}

pub fn nilpotency<S: Scalar>(a: &Algebra<S>, tol: S) -> Nilpotency {
    let n = a.dim();
    let floor = a.scale();
    let mut basis: Vec<Vec<S>> = (0..n).map(|i| Element::<S>::basis(n, i).into_coords()).collect();
    let mut chain = vec![n];
    loop {
        let mut rows = Vec::with_capacity(n * basis.len());
        for i in 0..n {
            let ei = Element::<S>::basis(n, i).into_coords();
            for v in &basis {
                rows.push(a.product(&ei, v));
            }
        }
        let m = Matrix::from_rows(&rows);
        let dec = linalg::svd(&m);
        let r = dec.rank(tol, floor);
        chain.push(r);
        if r == 0 {
            return Nilpotency {
                nilpotent: true,
                degree: Some(chain.len() - 1),
                chain,
            };
        }
        if r >= basis.len() {
            return Nilpotency {
                nilpotent: false,
                degree: None,
                chain,
            };
        }
        basis = (0..r).map(|j| dec.v.column(j)).collect();
    }
}

pub fn is_nilpotent<S: Scalar>(a: &Algebra<S>, tol: S) -> bool {
    nilpotency(a, tol).nilpotent
}

pub fn is_semisimple<S: Scalar>(a: &Algebra<S>, tol: S) -> bool {
    let tau = tau_form(a);
    let norm = tau.norm();
    norm > S::zero() && tau.eigenvalues().iter().all(|v| v.abs() > tol * norm)
}

pub fn is_formally_real<S: Scalar>(a: &Algebra<S>, tol: S) -> bool {
    let tau = tau_form(a);
    let norm = tau.norm();
    norm > S::zero() && tau.eigenvalues()[0] > tol * norm
}

/// Orthonormal basis of `R[y] = span{e, y, y^2, ...}` built as the Krylov
/// space of `L_y` started at `e`.
fn krylov_basis<S: Scalar>(a: &Algebra<S>, y: &[S], e: &[S], tol: S) -> Vec<Vec<S>> {
    let n = a.dim();
    let ly = a.left_mul_coords(y);
    let cut = tol * ly.frobenius_norm().max(S::epsilon());
    let mut q = vec![linalg::scaled(e, S::one() / linalg::norm(e))];
    while q.len() < n {
        let mut w = ly.mul_vec(q.last().unwrap());
        for _ in 0..2 {
            for v in &q {
                let c = linalg::dot(v, &w);
                linalg::axpy(-c, v, &mut w);
            }
        }
        let nw = linalg::norm(&w);
        if nw <= cut {
            break;
        }
        q.push(linalg::scaled(&w, S::one() / nw));
    }
    q
}

/// Sum of the roots of the minimal polynomial of `y`: the trace of
/// multiplication by `y` on `R[y]`.
fn trace_on_krylov<S: Scalar>(a: &Algebra<S>, y: &[S], q: &[Vec<S>]) -> S {
    let ly = a.left_mul_coords(y);
    q.iter().map(|v| linalg::dot(v, &ly.mul_vec(v))).sum()
}

/// Rank and reduced trace (as a covector) of a unital semisimple algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct RankTrace<S> {
    pub rank: usize,
    pub trace: Vec<S>,
}

impl<S: Scalar> RankTrace<S> {
    pub fn eval(&self, x: &[S]) -> S {
        linalg::dot(&self.trace, x)
    }
}

/// Estimates the rank as the largest `dim R[y]` over Gaussian samples and
/// recovers the reduced trace functional from regular samples, where it is
/// the sum of the roots of the minimal polynomial, by a least-squares fit.
pub fn rank_and_trace<S: Scalar>(a: &Algebra<S>, samples: usize, seed: u64, tol: S) -> Result<RankTrace<S>> {
    let e = a.identity_element(tol).ok_or(JordanError::NoIdentity)?;
    if !is_semisimple(a, tol) {
        return Err(JordanError::NotApplicable("reduced trace needs a semisimple algebra".into()));
    }
    let n = a.dim();
    let mut rng = random::seeded(seed);
    let want = samples.max(2 * n + 4);
    let mut draws: Vec<(Vec<S>, usize, S)> = Vec::with_capacity(want);
    let mut rank = 0;
    let mut attempts = 0;
    loop {
        while draws.len() < want + attempts {
            let y = random::gaussian_vec::<S, _>(&mut rng, n);
            let y = linalg::scaled(&y, S::one() / linalg::norm(&y));
            let q = krylov_basis(a, &y, e.coords(), tol);
            let t = trace_on_krylov(a, &y, &q);
            rank = rank.max(q.len());
            draws.push((y, q.len(), t));
        }
        let regular: Vec<&(Vec<S>, usize, S)> = draws.iter().filter(|d| d.1 == rank).collect();
        if regular.len() > n {
            let rows: Vec<Vec<S>> = regular.iter().map(|d| d.0.clone()).collect();
            let rhs: Vec<S> = regular.iter().map(|d| d.2).collect();
            let (trace, _) = linalg::lstsq(&Matrix::from_rows(&rows), &rhs, S::epsilon() * S::lit(1e3));
            return Ok(RankTrace { rank, trace });
        }
        attempts += want;
        if attempts > 10 * want {
            return Err(JordanError::MaxResamples(draws.len()));
        }
    }
}

/// `x = sum_i lambda_i C_i` with orthogonal idempotents `C_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition<S> {
    /// Distinct spectral values, descending.
    pub eigenvalues: Vec<S>,
    pub idempotents: Vec<Element<S>>,
}

impl<S: Scalar> SpectralDecomposition<S> {
    pub fn reconstruct(&self) -> Vec<S> {
        let n = self.idempotents.first().map_or(0, |c| c.dim());
        let mut out = vec![S::zero(); n];
        for (l, c) in self.eigenvalues.iter().zip(&self.idempotents) {
            linalg::axpy(*l, c.coords(), &mut out);
        }
        out
    }
}

fn poly_eval<S: Scalar>(coef: &[S], x: S) -> (S, S) {
    // coef[k] is the coefficient of x^k; returns (p(x), p'(x)).
    let mut p = S::zero();
    let mut dp = S::zero();
    for &c in coef.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Real roots located by sign scanning on `[-bound, bound]`, bisection and a
/// Newton polish. Only roots of odd multiplicity are seen.
fn scan_real_roots<S: Scalar>(coef: &[S], bound: S) -> Vec<S> {
    const STEPS: usize = 10_000;
    let mut roots = Vec::new();
    let h = (bound + bound) / S::from_usize_lossy(STEPS);
    let mut x0 = -bound;
    let mut p0 = poly_eval(coef, x0).0;
    for k in 1..=STEPS {
        let x1 = -bound + h * S::from_usize_lossy(k);
        let p1 = poly_eval(coef, x1).0;
        if p0 == S::zero() {
            roots.push(x0);
        } else if p0 * p1 < S::zero() {
            let (mut lo, mut hi, mut plo) = (x0, x1, p0);
            for _ in 0..200 {
                let mid = (lo + hi) * S::lit(0.5);
                if mid <= lo || mid >= hi {
                    break;
                }
                let pm = poly_eval(coef, mid).0;
                if pm == S::zero() {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (pm < S::zero()) == (plo < S::zero()) {
                    lo = mid;
                    plo = pm;
                } else {
                    hi = mid;
                }
            }
            let mut r = (lo + hi) * S::lit(0.5);
            for _ in 0..3 {
                let (p, dp) = poly_eval(coef, r);
                if dp == S::zero() {
                    break;
                }
                let step = r - p / dp;
                if step >= x0 && step <= x1 {
                    r = step;
                }
            }
            roots.push(r);
        }
        x0 = x1;
        p0 = p1;
    }
    if p0 == S::zero() {
        roots.push(x0);
    }
    roots
}

/// Divides the monic-or-not polynomial by `(x - r)`.
fn deflate<S: Scalar>(coef: &[S], r: S) -> Vec<S> {
    let d = coef.len() - 1;
    let mut q = vec![S::zero(); d];
    let mut carry = S::zero();
    for k in (0..d).rev() {
        carry = coef[k + 1] + carry * r;
        q[k] = carry;
    }
    q
}

/// Spectral decomposition of `x` in a unital formally real algebra through
/// its minimal polynomial and Lagrange idempotents. Every idempotent must be
/// primitive, so `x` must be regular.
pub fn spectral_decompose<S: Scalar>(a: &Algebra<S>, x: &Element<S>, tol: S) -> Result<SpectralDecomposition<S>> {
    let n = a.dim();
    if x.dim() != n {
        return Err(JordanError::InvalidElement {
            expected: n,
            found: x.dim(),
        });
    }
    let e = a.identity_element(tol).ok_or(JordanError::NoIdentity)?;
    let s = x.norm();
    let y: Vec<S> = if s > S::zero() {
        linalg::scaled(x.coords(), S::one() / s)
    } else {
        vec![S::zero(); n]
    };
    let m = krylov_basis(a, &y, e.coords(), tol).len();

    // powers y^0..y^m and the relation y^m = sum_k a_k y^k
    let mut powers = vec![e.coords().to_vec()];
    for _ in 0..m {
        let next = a.product(&y, powers.last().unwrap());
        powers.push(next);
    }
    let basis = Matrix::from_columns(&powers[..m]);
    let (alpha, _) = linalg::lstsq(&basis, &powers[m], S::epsilon() * S::lit(1e3));
    // monic minimal polynomial p(t) = t^m - sum_k alpha_k t^k
    let mut coef: Vec<S> = alpha.iter().map(|&v| -v).collect();
    coef.push(S::one());

    let bound = S::one() + alpha.iter().fold(S::zero(), |mx, v| mx.max(v.abs()));
    let sep = tol.sqrt();
    let mut roots: Vec<S> = Vec::new();
    let mut rest = coef.clone();
    loop {
        let found = scan_real_roots(&rest, bound);
        if found.is_empty() {
            break;
        }
        for &r in &found {
            if roots.iter().any(|&q| (q - r).abs() < sep) {
                return Err(JordanError::RepeatedEigenvalues);
            }
        }
        for &r in &found {
            if rest.len() > 1 {
                rest = deflate(&rest, r);
            }
        }
        roots.extend(found);
        if rest.len() <= 1 {
            break;
        }
    }
    if roots.len() < m {
        return Err(JordanError::NotFormallyReal);
    }
    roots.sort_by(|p, q| q.partial_cmp(p).unwrap());
    if roots.windows(2).any(|w| (w[0] - w[1]).abs() < sep) {
        return Err(JordanError::RepeatedEigenvalues);
    }

    let mut idempotents = Vec::with_capacity(m);
    for (i, &li) in roots.iter().enumerate() {
        let mut c = e.coords().to_vec();
        for (j, &lj) in roots.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut factor = y.clone();
            linalg::axpy(-lj, e.coords(), &mut factor);
            c = linalg::scaled(&a.product(&factor, &c), S::one() / (li - lj));
        }
        idempotents.push(Element::new(c));
    }
    let dec = SpectralDecomposition {
        eigenvalues: roots.iter().map(|&l| l * s).collect(),
        idempotents,
    };

    let check_tol = S::default_tol() * S::lit(10.0);
    for (i, c) in dec.idempotents.iter().enumerate() {
        let sq = a.product(c.coords(), c.coords());
        let r = linalg::max_abs(&linalg::sub(&sq, c.coords()));
        if r > check_tol * c.norm().max(S::one()) {
            return Err(JordanError::Inconsistent {
                what: "idempotency of spectral projection".into(),
                residual: r.as_f64(),
            });
        }
        for c2 in &dec.idempotents[i + 1..] {
            let r = linalg::max_abs(&a.product(c.coords(), c2.coords()));
            if r > check_tol * c.norm().max(S::one()) {
                return Err(JordanError::Inconsistent {
                    what: "orthogonality of spectral projections".into(),
                    residual: r.as_f64(),
                });
            }
        }
        if eigenspace_dim(a, c.coords(), S::one(), tol) != 1 {
            return Err(JordanError::RepeatedEigenvalues);
        }
    }
    let rec = linalg::max_abs(&linalg::sub(&dec.reconstruct(), x.coords()));
    if rec > check_tol * s.max(S::one()) {
        return Err(JordanError::Inconsistent {
            what: "spectral reconstruction".into(),
            residual: rec.as_f64(),
        });
    }
    Ok(dec)
}

/// Dimension of the eigenspace `A(c, lambda)` of `L_c`.
fn eigenspace_dim<S: Scalar>(a: &Algebra<S>, c: &[S], lambda: S, tol: S) -> usize {
    let n = a.dim();
    let m = a.left_mul_coords(c).sub(&Matrix::identity(n).scale(lambda));
    let cut = tol.sqrt().max(S::epsilon() * S::lit(1e3));
    n - linalg::svd(&m).rank(cut, S::one())
}

/// Samples Gaussian elements until one is regular, and returns its
/// spectral idempotents as a Jordan frame (ordered by descending spectral
/// value of the sample).
pub fn jordan_frame<S: Scalar>(a: &Algebra<S>, tol: S, seed: u64) -> Result<Vec<Element<S>>> {
    const MAX_SAMPLES: usize = 100;
    a.identity_element(tol).ok_or(JordanError::NoIdentity)?;
    if !is_formally_real(a, tol) {
        return Err(JordanError::NotFormallyReal);
    }
    let mut rng = random::seeded(seed);
    for _ in 0..MAX_SAMPLES {
        let x = Element::new(random::gaussian_vec::<S, _>(&mut rng, a.dim()));
        match spectral_decompose(a, &x, tol) {
            Ok(dec) => return Ok(dec.idempotents),
            Err(JordanError::RepeatedEigenvalues) | Err(JordanError::Inconsistent { .. }) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(JordanError::MaxResamples(MAX_SAMPLES))
}

/// Peirce decomposition of a unital formally real algebra with respect to
/// a Jordan frame.
#[derive(Clone, Debug, PartialEq)]
pub struct PeirceData<S> {
    pub frame: Vec<Element<S>>,
    pub rank: usize,
    pub d: usize,
    /// Bases of `A_ij` for `i <= j` (0-based); `(i, i)` holds `[H_i]`.
    pub blocks: BTreeMap<(usize, usize), Vec<Element<S>>>,
}

impl<S: Scalar> PeirceData<S> {
    /// Columns `H_1..H_r` followed by the off-diagonal block bases in
    /// lexicographic `(i, j)` order.
    pub fn basis_matrix(&self) -> Matrix<S> {
        let mut cols: Vec<Vec<S>> = self.frame.iter().map(|h| h.coords().to_vec()).collect();
        for ((i, j), b) in &self.blocks {
            if i != j {
                cols.extend(b.iter().map(|v| v.coords().to_vec()));
            }
        }
        Matrix::from_columns(&cols)
    }

    /// Block label of every column of [`basis_matrix`](Self::basis_matrix).
    pub fn column_blocks(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.rank).map(|i| (i, i)).collect();
        for ((i, j), b) in &self.blocks {
            if i != j {
                out.extend(std::iter::repeat_n((*i, *j), b.len()));
            }
        }
        out
    }

    pub fn off_diagonal_dim(&self) -> usize {
        self.blocks.iter().filter(|((i, j), _)| i != j).map(|(_, b)| b.len()).sum()
    }

    /// The reduced trace as a covector: the sum of the frame coordinates.
    pub fn reduced_trace(&self) -> Vec<S> {
        let p = self.basis_matrix();
        let pinv = p.inverse().expect("Peirce basis is invertible");
        let n = p.rows();
        (0..n).map(|k| (0..self.rank).map(|i| pinv[(i, k)]).sum()).collect()
    }

    /// Checks `A_ij A_kl` against the Peirce multiplication rules on every
    /// pair of block basis vectors.
    pub fn check_multiplication_rules(&self, a: &Algebra<S>, tol: S) -> ValidationReport {
        let p = self.basis_matrix();
        let pinv = match p.inverse() {
            Some(m) => m,
            None => return ValidationReport::new(vec![Check::new("peirce_basis_invertible", f64::INFINITY, 0.0)]),
        };
        let labels = self.column_blocks();
        let n = p.rows();
        let mut worst = S::zero();
        for s in 0..n {
            for t in s..n {
                let allowed = product_blocks(labels[s], labels[t]);
                let prod = a.product(&p.column(s), &p.column(t));
                let coords = pinv.mul_vec(&prod);
                for (k, lbl) in labels.iter().enumerate() {
                    if !allowed.contains(lbl) {
                        worst = worst.max(coords[k].abs());
                    }
                }
            }
        }
        ValidationReport::new(vec![Check::new(
            "peirce_multiplication_rules",
            worst.as_f64(),
            (tol * a.scale() * S::lit(10.0)).as_f64(),
        )])
    }
}

/// Blocks that may receive the product of `A_s` and `A_t` (labels `i <= j`).
fn product_blocks(s: (usize, usize), t: (usize, usize)) -> Vec<(usize, usize)> {
    let set = |b: (usize, usize)| if b.0 == b.1 { vec![b.0] } else { vec![b.0, b.1] };
    let (ss, ts) = (set(s), set(t));
    let common: Vec<usize> = ss.iter().copied().filter(|i| ts.contains(i)).collect();
    let ordered = |i: usize, j: usize| if i <= j { (i, j) } else { (j, i) };
    if common.is_empty() {
        return vec![];
    }
    if s == t {
        return if ss.len() == 1 {
            vec![s]
        } else {
            vec![(ss[0], ss[0]), (ss[1], ss[1])]
        };
    }
    if ss.len() == 1 {
        return vec![t];
    }
    if ts.len() == 1 {
        return vec![s];
    }
    let sym: Vec<usize> = ss.iter().chain(&ts).copied().filter(|i| !common.contains(i)).collect();
    vec![ordered(sym[0], sym[1])]
}

pub fn peirce_decompose<S: Scalar>(a: &Algebra<S>, frame: &[Element<S>], tol: S) -> Result<PeirceData<S>> {
    let n = a.dim();
    let r = frame.len();
    if r == 0 {
        return Err(JordanError::BadFrame("empty frame".into()));
    }
    for h in frame {
        if h.dim() != n {
            return Err(JordanError::InvalidElement {
                expected: n,
                found: h.dim(),
            });
        }
    }
    let e = a.identity_element(tol).ok_or(JordanError::NoIdentity)?;
    let frame_tol = S::default_tol() * S::lit(100.0);
    let mut sum = vec![S::zero(); n];
    for (i, h) in frame.iter().enumerate() {
        let sq = a.product(h.coords(), h.coords());
        if linalg::max_abs(&linalg::sub(&sq, h.coords())) > frame_tol * h.norm().max(S::one()) {
            return Err(JordanError::BadFrame(format!("H{} is not idempotent", i + 1)));
        }
        for (j, h2) in frame.iter().enumerate().skip(i + 1) {
            if linalg::max_abs(&a.product(h.coords(), h2.coords())) > frame_tol {
                return Err(JordanError::BadFrame(format!("H{} H{} is not zero", i + 1, j + 1)));
            }
        }
        linalg::axpy(S::one(), h.coords(), &mut sum);
    }
    if e.distance_max(&Element::new(sum)) > frame_tol {
        return Err(JordanError::BadFrame("frame does not sum to the identity".into()));
    }

    // tau-orthonormal coordinates make every L_{H_i} symmetric
    let tau = tau_form(a);
    let te = linalg::sym_eigen(tau.matrix());
    if te.values[0] <= tol * tau.norm() {
        return Err(JordanError::NotFormallyReal);
    }
    let t = Matrix::from_fn(n, n, |i, j| te.vectors[(i, j)] / te.values[j].sqrt());
    let tinv = Matrix::from_fn(n, n, |i, j| te.vectors[(j, i)] * te.values[i].sqrt());
    let ops: Vec<Matrix<S>> = frame
        .iter()
        .map(|h| tinv.matmul(&a.left_mul_coords(h.coords())).matmul(&t).symmetric_part())
        .collect();

    let gap = S::lit(1.0 / 6.0);
    let snap = |v: S| -> Option<u8> {
        [(S::zero(), 0u8), (S::lit(0.5), 1), (S::one(), 2)]
            .iter()
            .find(|(c, _)| (v - *c).abs() < gap)
            .map(|&(_, k)| k)
    };
    for (i, op) in ops.iter().enumerate() {
        for v in linalg::sym_eigen(op).values {
            if snap(v).is_none() {
                return Err(JordanError::BadFrame(format!(
                    "L_H{} has eigenvalue {} away from 0, 1/2, 1",
                    i + 1,
                    v.as_f64()
                )));
            }
        }
    }

    let mut combined = Matrix::zeros(n, n);
    let mut w = S::one();
    for op in &ops {
        combined = combined.add(&op.scale(w));
        w = w + w;
    }
    let ce = linalg::sym_eigen(&combined);
    let mut blocks: BTreeMap<(usize, usize), Vec<Element<S>>> = BTreeMap::new();
    for i in 0..r {
        for j in i..r {
            blocks.insert((i, j), Vec::new());
        }
    }
    for col in 0..n {
        let v = ce.vectors.column(col);
        let mut ones = Vec::new();
        let mut halves = Vec::new();
        for (i, op) in ops.iter().enumerate() {
            let rq = linalg::dot(&v, &op.mul_vec(&v));
            match snap(rq) {
                Some(2) => ones.push(i),
                Some(1) => halves.push(i),
                Some(_) => {}
                None => {
                    return Err(JordanError::BadFrame(format!(
                        "mixed Peirce eigenvector (Rayleigh quotient {})",
                        rq.as_f64()
                    )))
                }
            }
        }
        let key = match (ones.as_slice(), halves.as_slice()) {
            ([i], []) => (*i, *i),
            ([], [i, j]) => (*i, *j),
            _ => {
                return Err(JordanError::BadFrame(format!(
                    "eigenvector with pattern ones={ones:?} halves={halves:?}"
                )))
            }
        };
        blocks.get_mut(&key).unwrap().push(Element::new(t.mul_vec(&v)));
    }
    for i in 0..r {
        let b = blocks.get_mut(&(i, i)).unwrap();
        if b.len() != 1 {
            return Err(JordanError::BadFrame(format!(
                "A({},{}) has dimension {}; H{} is not primitive",
                i + 1,
                i + 1,
                b.len(),
                i + 1
            )));
        }
        *b = vec![frame[i].clone()];
    }
    let d = match r {
        1 => 0,
        2 => n - 2,
        _ => {
            let dims: Vec<usize> = blocks.iter().filter(|((i, j), _)| i != j).map(|(_, b)| b.len()).collect();
            if dims.iter().any(|&k| k != dims[0]) {
                return Err(JordanError::BadFrame(format!("unequal Peirce block dimensions {dims:?}")));
            }
            dims[0]
        }
    };
    Ok(PeirceData {
        frame: frame.to_vec(),
        rank: r,
        d,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn tau_examples() {
        assert_eq!(tau_form(&Algebra::<f64>::zero(3)).matrix().max_abs(), 0.0);
        assert_eq!(tau_form(&catalog::psi1::<f64>()).matrix(), &Matrix::identity(2));
        // tr-form Gram of Sym(2) in {E11, E22, E12+E21} is diag(1, 1, 2)
        let t = tau_form(&catalog::sym2::<f64>());
        let expect = Matrix::diagonal(&[1.0, 1.0, 2.0]).scale(1.5);
        assert!(t.matrix().sub(&expect).max_abs() < 1e-14);
    }

    #[test]
    fn killing_examples() {
        assert_eq!(killing_form(&Algebra::<f64>::zero(2)).matrix().max_abs(), 0.0);
        assert_eq!(killing_form(&catalog::psi1::<f64>()).matrix(), &Matrix::identity(2));
    }

    #[test]
    fn radical_examples() {
        assert!(radical(&catalog::psi1::<f64>(), 1e-9).is_empty());
        assert_eq!(radical(&Algebra::<f64>::zero(3), 1e-9).len(), 3);
        let rad = radical(&catalog::example_59::<f64>(4), 1e-9);
        assert_eq!(rad.len(), 3);
        for v in rad {
            assert!(v.coords()[0].abs() < 1e-12);
        }
    }

    #[test]
    fn nilpotency_examples() {
        let t = nilpotency(&Algebra::<f64>::zero(3), 1e-9);
        assert!(t.nilpotent);
        assert_eq!(t.degree, Some(1));
        let sq = nilpotency(&catalog::square_zero_pair::<f64>(), 1e-9);
        assert!(sq.nilpotent);
        assert_eq!(sq.degree, Some(2));
        assert_eq!(sq.chain, vec![2, 1, 0]);
        assert!(!is_nilpotent(&catalog::psi2::<f64>(), 1e-9));
    }

    #[test]
    fn semisimplicity_examples() {
        let p1 = catalog::psi1::<f64>();
        assert!(is_semisimple(&p1, 1e-9) && is_formally_real(&p1, 1e-9));
        let p2 = catalog::psi2::<f64>();
        assert!(is_semisimple(&p2, 1e-9) && !is_formally_real(&p2, 1e-9));
        assert_eq!(tau_form(&p2).matrix()[(1, 1)], -2.0);
        let ex = catalog::example_59::<f64>(3);
        assert!(!is_semisimple(&ex, 1e-9) && !is_formally_real(&ex, 1e-9));
    }

    #[test]
    fn rank_and_trace_examples() {
        let rt = rank_and_trace(&catalog::psi1::<f64>(), 20, 3, 1e-9).unwrap();
        assert_eq!(rt.rank, 2);
        assert!((rt.trace[0] - 1.0).abs() < 1e-9 && (rt.trace[1] - 1.0).abs() < 1e-9);

        let a = catalog::sym2::<f64>();
        let rt = rank_and_trace(&a, 20, 3, 1e-9).unwrap();
        assert_eq!(rt.rank, 2);
        assert!((rt.eval(&[1.0, 1.0, 0.0]) - 2.0).abs() < 1e-9);
        assert!(rt.trace[2].abs() < 1e-9);

        assert_eq!(rank_and_trace(&catalog::one_dim::<f64>(), 5, 3, 1e-9).unwrap().rank, 1);
        assert_eq!(
            rank_and_trace(&Algebra::<f64>::zero(2), 5, 3, 1e-9),
            Err(JordanError::NoIdentity)
        );
        assert!(matches!(
            rank_and_trace(&catalog::example_59::<f64>(3), 5, 3, 1e-9),
            Err(JordanError::NotApplicable(_))
        ));
    }

    #[test]
    fn spectral_examples() {
        let a = catalog::sym2::<f64>();
        let e = Element::from_f64(&[1.0, 1.0, 0.0]);
        assert_eq!(spectral_decompose(&a, &e, 1e-9), Err(JordanError::RepeatedEigenvalues));

        let p1 = catalog::psi1::<f64>();
        let dec = spectral_decompose(&p1, &Element::from_f64(&[1.0, -1.0]), 1e-9).unwrap();
        assert!((dec.eigenvalues[0] - 1.0).abs() < 1e-12 && (dec.eigenvalues[1] + 1.0).abs() < 1e-12);
        assert!(dec.idempotents[0].distance_max(&Element::basis(2, 0)) < 1e-12);
        assert!(dec.idempotents[1].distance_max(&Element::basis(2, 1)) < 1e-12);

        let dec = spectral_decompose(&a, &Element::from_f64(&[2.0, 1.0, 0.0]), 1e-9).unwrap();
        assert!((dec.eigenvalues[0] - 2.0).abs() < 1e-12 && (dec.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert!(dec.idempotents[0].distance_max(&Element::basis(3, 0)) < 1e-12);
        assert!(dec.idempotents[1].distance_max(&Element::basis(3, 1)) < 1e-12);
    }

    #[test]
    fn spectral_rejects_complex_roots() {
        // in psi2 the element e2 satisfies e2^2 = -e1 = -E
        let p2 = catalog::psi2::<f64>();
        assert_eq!(
            spectral_decompose(&p2, &Element::basis(2, 1), 1e-9),
            Err(JordanError::NotFormallyReal)
        );
    }

    #[test]
    fn frame_examples() {
        let f = jordan_frame(&catalog::psi1::<f64>(), 1e-9, 11).unwrap();
        assert_eq!(f.len(), 2);
        let mut hits = [false; 2];
        for h in &f {
            for (k, hit) in hits.iter_mut().enumerate() {
                if h.distance_max(&Element::basis(2, k)) < 1e-10 {
                    *hit = true;
                }
            }
        }
        assert!(hits[0] && hits[1]);

        let f = jordan_frame(&catalog::one_dim::<f64>(), 1e-9, 11).unwrap();
        assert_eq!(f.len(), 1);
        assert!((f[0].coords()[0] - 1.0).abs() < 1e-12);

        let a = catalog::sym2::<f64>();
        let f = jordan_frame(&a, 1e-9, 11).unwrap();
        assert_eq!(f.len(), 2);
        let p = peirce_decompose(&a, &f, 1e-9).unwrap();
        assert_eq!((p.rank, p.d), (2, 1));
    }

    #[test]
    fn peirce_examples() {
        let a = catalog::sym2::<f64>();
        let frame = vec![Element::basis(3, 0), Element::basis(3, 1)];
        let p = peirce_decompose(&a, &frame, 1e-9).unwrap();
        assert_eq!((p.rank, p.d), (2, 1));
        let b = &p.blocks[&(0, 1)];
        assert_eq!(b.len(), 1);
        assert!(b[0].coords()[0].abs() < 1e-12 && b[0].coords()[1].abs() < 1e-12);
        assert!(p.check_multiplication_rules(&a, 1e-9).passed());
        let tr = p.reduced_trace();
        assert!((tr[0] - 1.0).abs() < 1e-12 && (tr[1] - 1.0).abs() < 1e-12 && tr[2].abs() < 1e-12);

        let p1 = catalog::psi1::<f64>();
        let p = peirce_decompose(&p1, &[Element::basis(2, 0), Element::basis(2, 1)], 1e-9).unwrap();
        assert_eq!((p.rank, p.d), (2, 0));
        assert!(p.blocks[&(0, 1)].is_empty());
    }

    #[test]
    fn peirce_rejects_non_primitive_frame() {
        let a = catalog::sym2::<f64>();
        let err = peirce_decompose(&a, &[Element::from_f64(&[1.0, 1.0, 0.0])], 1e-9).unwrap_err();
        assert!(matches!(err, JordanError::BadFrame(_)));
        let err = peirce_decompose(&a, &[Element::basis(3, 0), Element::basis(3, 0)], 1e-9).unwrap_err();
        assert!(matches!(err, JordanError::BadFrame(_)));
    }

    #[test]
    fn product_block_rules() {
        assert_eq!(product_blocks((0, 1), (2, 3)), vec![]);
        assert_eq!(product_blocks((0, 0), (0, 0)), vec![(0, 0)]);
        assert_eq!(product_blocks((0, 0), (1, 1)), vec![]);
        assert_eq!(product_blocks((0, 1), (0, 1)), vec![(0, 0), (1, 1)]);
        assert_eq!(product_blocks((0, 0), (0, 2)), vec![(0, 2)]);
        assert_eq!(product_blocks((0, 1), (1, 2)), vec![(0, 2)]);
        assert_eq!(product_blocks((1, 2), (0, 2)), vec![(0, 1)]);
    }
}
