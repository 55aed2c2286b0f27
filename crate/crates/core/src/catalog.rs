//! Named small algebras and seeded random corpora used by tests, examples
//! and the command-line front end.
//!
//! Indices in the doc comments are 1-based to match the usual notation; the
//! tables themselves are 0-based.

use rand::Rng;

use crate::algebra::Algebra;
use crate::classical::{self, ClassicalSpec, Family};
use crate::linalg::Matrix;
use crate::random;
use crate::scalar::Scalar;

fn build<S: Scalar>(dim: usize, entries: &[(usize, usize, usize, f64)], label: &str) -> Algebra<S> {
    Algebra::from_entries(dim, entries, true)
        .expect("catalog table is well formed")
        .with_label(label)
}

/// `e1 e1 = e1`.
pub fn one_dim<S: Scalar>() -> Algebra<S> {
    build(1, &[(0, 0, 0, 1.0)], "R")
}

/// `e1 e1 = e1, e2 e2 = e2`.
pub fn psi1<S: Scalar>() -> Algebra<S> {
    build(2, &[(0, 0, 0, 1.0), (1, 1, 1, 1.0)], "psi1")
}

/// `e1 e1 = e1, e2 e2 = -e1, e1 e2 = e2`.
pub fn psi2<S: Scalar>() -> Algebra<S> {
    build(2, &[(0, 0, 0, 1.0), (1, 1, 0, -1.0), (0, 1, 1, 1.0)], "psi2")
}

/// 2x2 real symmetric matrices in the basis `E11, E22, E12 + E21`.
pub fn sym2<S: Scalar>() -> Algebra<S> {
    build(
        3,
        &[
            (0, 0, 0, 1.0),
            (1, 1, 1, 1.0),
            (0, 2, 2, 0.5),
            (1, 2, 2, 0.5),
            (2, 2, 0, 1.0),
            (2, 2, 1, 1.0),
        ],
        "Sym(2,R)",
    )
}

/// `e1 e1 = e1, e1 e2 = e2`: a unital-free 2-dim Jordan algebra whose
/// cyclic curvature sum does not vanish.
pub fn remark_two_dim<S: Scalar>() -> Algebra<S> {
    build(2, &[(0, 0, 0, 1.0), (0, 1, 1, 1.0)], "e1e1=e1,e1e2=e2")
}

/// `e1 e1 = e1, e1 e_j = e_j` for `j = 2..n`.
pub fn example_59<S: Scalar>(n: usize) -> Algebra<S> {
    let mut entries = vec![(0, 0, 0, 1.0)];
    entries.extend((1..n).map(|j| (0, j, j, 1.0)));
    build(n, &entries, &format!("unit-plus-null({n})"))
}

/// `e_i e_i = e_i`, all other products zero.
pub fn orthogonal_idempotents<S: Scalar>(n: usize) -> Algebra<S> {
    let entries: Vec<_> = (0..n).map(|i| (i, i, i, 1.0)).collect();
    build(n, &entries, &format!("R^{n}"))
}

/// `e1 e1 = e1, e1 e_j = e_j / 2` for `j = 2..n`.
pub fn half_unit<S: Scalar>(n: usize) -> Algebra<S> {
    let mut entries = vec![(0, 0, 0, 1.0)];
    entries.extend((1..n).map(|j| (0, j, j, 0.5)));
    build(n, &entries, &format!("half-unit({n})"))
}

/// `e1 e1 = e2`.
pub fn square_zero_pair<S: Scalar>() -> Algebra<S> {
    build(2, &[(0, 0, 1, 1.0)], "e1e1=e2")
}

/// `e1 e1 = e2, e1 e2 = e3` (commutative closure). Nilpotent Jordan.
pub fn filiform3<S: Scalar>() -> Algebra<S> {
    build(3, &[(0, 0, 1, 1.0), (0, 1, 2, 1.0)], "e1e1=e2,e1e2=e3")
}

/// `e1 e1 = e2, e1 e2 = e3, e2 e2 = e3`. Not power-associative, hence not
/// Jordan: `e1^2 e1^2 = e3` but `(e1^2 e1) e1 = 0`.
pub fn not_jordan3<S: Scalar>() -> Algebra<S> {
    build(3, &[(0, 0, 1, 1.0), (0, 1, 2, 1.0), (1, 1, 2, 1.0)], "e1e1=e2,e1e2=e3,e2e2=e3")
}

/// `x R[x] / (x^(k+1))` in the basis `x, x^2, ..., x^k`.
pub fn truncated_polynomial<S: Scalar>(k: usize) -> Algebra<S> {
    let mut entries = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i + j + 2 <= k {
                entries.push((i, j, i + j + 1, 1.0));
            }
        }
    }
    build(k, &entries, &format!("xR[x]/x^{}", k + 1))
}

/// Polynomials in `x, y` without constant term modulo `y^2` and degree 3,
/// in the basis `x, y, x^2, xy`.
pub fn two_variable_nilpotent<S: Scalar>() -> Algebra<S> {
    build(4, &[(0, 0, 2, 1.0), (0, 1, 3, 1.0)], "(x,y)/(y^2,deg3)")
}

/// Strictly upper triangular 3x3 matrices with `a o b = (ab + ba) / 2`,
/// basis `E12, E13, E23`.
pub fn strict_upper3_jordan<S: Scalar>() -> Algebra<S> {
    build(3, &[(0, 2, 1, 0.5)], "n3+")
}

/// Associative algebra of `n x n` real matrices, basis `E_ij` at index
/// `i * n + j`. Not commutative.
pub fn matrix_algebra<S: Scalar>(n: usize) -> Algebra<S> {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // E_ij E_jk = E_ik
                entries.push((i * n + j, j * n + k, i * n + k, 1.0));
            }
        }
    }
    Algebra::from_entries(n * n, &entries, false)
        .expect("matrix algebra table")
        .with_label(format!("M({n},R)"))
}

/// Upper triangular 2x2 matrices (associative, not commutative), basis
/// `E11, E12, E22`.
pub fn upper_triangular2<S: Scalar>() -> Algebra<S> {
    let entries = [
        (0, 0, 0, 1.0),
        (0, 1, 1, 1.0),
        (1, 2, 1, 1.0),
        (2, 2, 2, 1.0),
    ];
    Algebra::from_entries(3, &entries, false)
        .expect("triangular table")
        .with_label("T(2,R)")
}

/// `e1 . e1 = e1, e1 . e2 = e2` with `e2 . e1 = e2 . e2 = 0`.
pub fn lsa_two_dim<S: Scalar>() -> Algebra<S> {
    Algebra::from_entries(2, &[(0, 0, 0, 1.0), (0, 1, 1, 1.0)], false)
        .expect("table")
        .with_label("left-unit")
}

/// Hand-listed Jordan algebras of dimension at most 5, the seeds of the
/// random corpus.
pub fn jordan_templates<S: Scalar>() -> Vec<Algebra<S>> {
    let spin = |n| classical::build_classical::<S>(&ClassicalSpec::new(Family::Spin, n)).unwrap().algebra;
    vec![
        one_dim(),
        psi1(),
        psi2(),
        sym2(),
        remark_two_dim(),
        example_59(3),
        example_59(5),
        orthogonal_idempotents(3),
        half_unit(3),
        half_unit(4),
        square_zero_pair(),
        truncated_polynomial(3),
        truncated_polynomial(4),
        two_variable_nilpotent(),
        strict_upper3_jordan(),
        matrix_algebra(2).symmetrize_product(),
        upper_triangular2().symmetrize_product(),
        spin(4),
        spin(5),
        psi1().direct_sum(&sym2()),
        one_dim().direct_sum(&psi2()),
        remark_two_dim().direct_sum(&one_dim()),
        Algebra::zero(3),
    ]
}

/// Nilpotent Jordan templates of dimension at most 4.
pub fn nilpotent_templates<S: Scalar>() -> Vec<Algebra<S>> {
    vec![
        square_zero_pair(),
        truncated_polynomial(3),
        truncated_polynomial(4),
        two_variable_nilpotent(),
        strict_upper3_jordan(),
        square_zero_pair().direct_sum(&Algebra::zero(1)),
        square_zero_pair().direct_sum(&square_zero_pair()),
    ]
}

/// A random isomorphic copy `g . A` with `cond(g) < 1e3`.
pub fn random_conjugate<S: Scalar, R: Rng + ?Sized>(a: &Algebra<S>, rng: &mut R) -> Algebra<S> {
    let g = random::well_conditioned_matrix::<S, _>(rng, a.dim(), 1e3);
    let mut b = a.base_change(&g).expect("well-conditioned matrix is invertible");
    if let Some(l) = a.label() {
        b = b.with_label(format!("g.{l}"));
    }
    b
}

/// Random Jordan algebra: a random template moved by a random element of
/// GL(n).
pub fn random_jordan<S: Scalar, R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> Algebra<S> {
    let templates: Vec<Algebra<S>> = jordan_templates().into_iter().filter(|a| a.dim() <= max_dim).collect();
    let t = &templates[rng.random_range(0..templates.len())];
    random_conjugate(t, rng)
}

/// Random nilpotent Jordan algebra of dimension at most `max_dim`.
pub fn random_nilpotent<S: Scalar, R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> Algebra<S> {
    let templates: Vec<Algebra<S>> = nilpotent_templates().into_iter().filter(|a| a.dim() <= max_dim).collect();
    let t = &templates[rng.random_range(0..templates.len())];
    random_conjugate(t, rng)
}

/// Random inner product with eigenvalues in `[0.3, 3]`.
pub fn random_metric<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<S> {
    random::spd_matrix(rng, n, 0.3, 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure;

    #[test]
    fn templates_are_jordan() {
        for a in jordan_templates::<f64>() {
            assert!(a.check_jordan(1e-9).passed(), "{:?}", a.label());
        }
    }

    #[test]
    fn nilpotent_templates_are_nilpotent_jordan() {
        for a in nilpotent_templates::<f64>() {
            assert!(a.check_jordan(1e-9).passed(), "{:?}", a.label());
            assert!(structure::is_nilpotent(&a, 1e-9), "{:?}", a.label());
            assert!(!a.is_trivial());
        }
    }

    #[test]
    fn filiform_is_jordan_and_variant_is_not() {
        assert!(filiform3::<f64>().check_jordan(1e-9).passed());
        assert!(structure::is_nilpotent(&filiform3::<f64>(), 1e-9));
        assert!(!not_jordan3::<f64>().check_jordan(1e-9).passed());
    }

    #[test]
    fn random_conjugates_stay_jordan() {
        let mut rng = random::seeded(5);
        for _ in 0..20 {
            let a = random_jordan::<f64, _>(&mut rng, 5);
            assert!(a.check_jordan(1e-9).passed());
        }
    }
}
