use jordanis::catalog;
use jordanis::geometry::{self, InnerProduct};
use jordanis::linalg::{self, Matrix};
use jordanis::random;
use jordanis::structure;
use jordanis::{build_classical, ClassicalSpec, Element, Family};
use proptest::prelude::*;

fn corpus_case(seed: u64) -> (jordanis::Algebra<f64>, InnerProduct<f64>) {
    let mut rng = random::seeded(seed);
    let a = catalog::random_jordan::<f64, _>(&mut rng, 5);
    let g = InnerProduct::new(catalog::random_metric(&mut rng, a.dim())).unwrap();
    (a, g)
}

fn sorted_eigs(m: &Matrix<f64>) -> Vec<f64> {
    linalg::sym_eigen(&m.symmetric_part()).values
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_conjugates_are_jordan(seed in any::<u64>()) {
        let (a, _) = corpus_case(seed);
        prop_assert!(a.check_jordan(1e-9).passed());
        prop_assert!(a.check_fundamental_identities(1e-9).passed());
    }

    #[test]
    fn change_basis_round_trip(seed in any::<u64>()) {
        let (a, _) = corpus_case(seed);
        let p = random::well_conditioned_matrix::<f64, _>(&mut random::seeded(seed ^ 1), a.dim(), 100.0);
        let back = a.change_basis(&p).unwrap().change_basis(&p.inverse().unwrap()).unwrap();
        prop_assert!(back.distance(&a) < 1e-9 * a.scale().max(1.0));
    }

    #[test]
    fn nilpotency_is_basis_independent(seed in any::<u64>()) {
        let (a, _) = corpus_case(seed);
        let g = random::well_conditioned_matrix::<f64, _>(&mut random::seeded(seed ^ 2), a.dim(), 100.0);
        let b = a.base_change(&g).unwrap();
        let (na, nb) = (structure::nilpotency(&a, 1e-9), structure::nilpotency(&b, 1e-9));
        prop_assert_eq!(na.nilpotent, nb.nilpotent);
        prop_assert_eq!(na.chain, nb.chain);
    }

    #[test]
    fn connection_is_torsion_free_and_metric(seed in any::<u64>()) {
        let (a, g) = corpus_case(seed);
        let c = geometry::levi_civita(&a, &g).unwrap();
        let s = a.scale().max(1.0);
        prop_assert!(c.torsion_residual(&a) < 1e-10 * s);
        prop_assert!(c.metric_residual(&g) < 1e-10 * s * 3.0);
    }

    #[test]
    fn curvature_slot_symmetries(seed in any::<u64>()) {
        let (a, g) = corpus_case(seed);
        let r = geometry::curvature(&a, &g).unwrap();
        let (first, last) = r.symmetry_residuals();
        let s = a.scale().max(1.0).powi(2);
        prop_assert!(first < 1e-12 * s);
        prop_assert!(last < 1e-9 * s);
    }

    #[test]
    fn ricci_is_invariant_under_isometric_base_change(seed in any::<u64>()) {
        let (a, g) = corpus_case(seed);
        let h = random::well_conditioned_matrix::<f64, _>(&mut random::seeded(seed ^ 3), a.dim(), 50.0);
        // moving the algebra by h and the metric by h^{-T} g h^{-1} is an isometry
        let b = a.base_change(&h).unwrap();
        let hinv = h.inverse().unwrap();
        let gb = InnerProduct::new(g.matrix().congruence(&hinv)).unwrap();
        let ra = geometry::ricci(&a, &g).unwrap();
        let rb = geometry::ricci(&b, &gb).unwrap();
        let s = a.scale().max(1.0).powi(2) * 1e3;
        for (x, y) in sorted_eigs(&ra.ric_sym).iter().zip(sorted_eigs(&rb.ric_sym)) {
            prop_assert!((x - y).abs() < 1e-8 * s, "{} vs {}", x, y);
        }
        prop_assert!((ra.sc - rb.sc).abs() < 1e-8 * s);
    }

    #[test]
    fn scalar_curvature_is_ricci_trace(seed in any::<u64>()) {
        let (a, g) = corpus_case(seed);
        let r = geometry::ricci(&a, &g).unwrap();
        prop_assert!((r.sc - r.ric_sym.trace()).abs() < 1e-12);
        prop_assert!((r.sc - r.sc_formula).abs() < 1e-9 * a.scale().max(1.0).powi(2));
        prop_assert!(r.checks.passed());
    }

    #[test]
    fn normalized_moment_map_is_scale_invariant(seed in any::<u64>(), k in 0.2f64..5.0) {
        let (a, g) = corpus_case(seed);
        prop_assume!(!a.is_trivial());
        let m1 = geometry::moment_map(&a, &g).unwrap();
        let scaled = jordanis::Algebra::new(a.dim(), a.constants().iter().map(|c| c * k).collect()).unwrap();
        let m2 = geometry::moment_map(&scaled, &g).unwrap();
        prop_assert!(m1.m.sub(&m2.m).max_abs() < 1e-10);
        // Tr m = -1 for the normalized map
        prop_assert!((m1.m.trace() + 1.0).abs() < 1e-10);
    }

    #[test]
    fn spectral_decomposition_reconstructs(seed in any::<u64>(), which in 0usize..4) {
        let spec = [
            ClassicalSpec::new(Family::SymR, 3),
            ClassicalSpec::new(Family::HermC, 2),
            ClassicalSpec::new(Family::HermH, 2),
            ClassicalSpec::new(Family::Spin, 5),
        ][which].clone();
        let c = build_classical::<f64>(&spec).unwrap();
        let x = Element::new(random::gaussian_vec::<f64, _>(&mut random::seeded(seed), c.algebra.dim()));
        let sd = structure::spectral_decompose(&c.algebra, &x, 1e-9).unwrap();
        prop_assert_eq!(sd.idempotents.len(), c.expected.rank);
        let back = sd.reconstruct();
        prop_assert!(linalg::max_abs(&linalg::sub(&back, x.coords())) < 1e-8 * x.norm().max(1.0));
        for w in sd.eigenvalues.windows(2) {
            prop_assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn nonpositivity_sampling_is_deterministic(seed in any::<u64>()) {
        let c = build_classical::<f64>(&ClassicalSpec::new(Family::SymR, 2)).unwrap();
        let g = jordanis::canonical_metric(&c.algebra, 2).unwrap();
        let a = geometry::sample_nonpositivity(&c.algebra, &g, 30, seed).unwrap();
        let b = geometry::sample_nonpositivity(&c.algebra, &g, 30, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn single_precision_agrees_with_double() {
    let a64 = catalog::sym2::<f64>();
    let a32 = catalog::sym2::<f32>();
    let r64 = geometry::ricci(&a64, &InnerProduct::identity(3)).unwrap();
    let r32 = geometry::ricci(&a32, &InnerProduct::identity(3)).unwrap();
    for (x, y) in r64.ric_sym.as_slice().iter().zip(r32.ric_sym.as_slice()) {
        assert!((x - *y as f64).abs() < 1e-5);
    }
    assert!(a32.check_jordan(f32::EPSILON.sqrt()).passed());
}

#[test]
fn deformed_family_is_einstein_only_at_root() {
    let c = build_classical::<f64>(&ClassicalSpec::new(Family::SymR, 3)).unwrap();
    let res = jordanis::deform_to_einstein(&c.algebra, &c.frame).unwrap();
    let rows = res.scan(res.t_star - 0.2, res.t_star + 0.2, 5).unwrap();
    assert!(rows[2].residual < 1e-12);
    assert!(rows[0].residual > 1e-3 && rows[4].residual > 1e-3);
    assert!((res.t_star - 0.5 * (13.0f64 / 16.0).ln()).abs() < 1e-15);
}
