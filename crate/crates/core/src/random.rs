//! Seeded Gaussian sampling shared by the sampling-based routines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for item `index` of a seeded run, so that
/// per-item results do not depend on iteration order.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

pub fn gaussian<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    let x: f64 = rng.sample(StandardNormal);
    S::lit(x)
}

pub fn gaussian_vec<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<S> {
    (0..n).map(|_| gaussian(rng)).collect()
}

pub fn gaussian_matrix<S: Scalar, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Random matrix `I + s G` with `G` Gaussian, rejected until its 2-norm
/// condition number is below `max_cond`.
pub fn well_conditioned_matrix<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, max_cond: f64) -> Matrix<S> {
    let spread = S::lit(0.6) / S::from_usize_lossy(n).sqrt();
    loop {
        let g = gaussian_matrix::<S, _>(rng, n, n).scale(spread).add(&Matrix::identity(n));
        let sv = crate::linalg::svd(&g).sigma;
        let smin = *sv.last().unwrap();
        if smin > S::zero() && (sv[0] / smin).as_f64() < max_cond {
            return g;
        }
    }
}

/// Random symmetric positive definite matrix `Q diag(w) Q^T` with
/// eigenvalues drawn from `[lo, hi]`.
pub fn spd_matrix<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Matrix<S> {
    let g = gaussian_matrix::<S, _>(rng, n, n);
    let q = crate::linalg::sym_eigen(&g.add(&g.transpose())).vectors;
    let w: Vec<S> = (0..n).map(|_| S::lit(rng.random_range(lo..=hi))).collect();
    Matrix::diagonal(&w).congruence(&q.transpose())
}
