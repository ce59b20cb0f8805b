mod common;

use proptest::prelude::*;
use wprod_core::classify::is_psd_multiple;
use wprod_core::matcore::{eig_general, eig_hermitian, hermitian_part, unitary_conjugate};
use wprod_core::numrange::{compute_range, Membership};
use wprod_core::productset::{product_membership, DEFAULT_GRID, DEFAULT_TOL};
use wprod_core::random::{random_complex_matrix, random_psd_multiple, random_unitary, seeded};
use wprod_core::witness::{falsify, verify_certificate};
use wprod_core::{CMatrix, C64};

fn matrix(max_n: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n)
            .prop_map(move |e| CMatrix::from_row_major(n, e.into_iter().map(|(r, i)| C64::new(r, i)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(48) })]

    #[test]
    fn json_round_trip_is_exact(a in matrix(5)) {
        prop_assert_eq!(CMatrix::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn jacobi_matches_characteristic_roots(a in matrix(6)) {
        let h = hermitian_part(&a, 0.0);
        let lib: Vec<f64> = eig_hermitian(&h).unwrap().iter().map(|p| p.value).collect();
        let want = common::hermitian_eigs_oracle(&h);
        for (x, y) in lib.iter().zip(&want) {
            prop_assert!((x - y).abs() < 1e-8 * (1.0 + y.abs()), "{:?} vs {:?}", lib, want);
        }
    }

    #[test]
    fn spectrum_lies_in_range(a in matrix(5)) {
        let r = compute_range(&a, 180).unwrap();
        let scale = r.operator_norm.max(1e-12);
        for z in eig_general(&a).unwrap().eigenvalues {
            prop_assert!(common::polygon_distance(r.outer_polygon.vertices(), z) <= 1e-9 * scale);
        }
    }

    #[test]
    fn inner_polygon_inside_outer(a in matrix(4)) {
        let r = compute_range(&a, 180).unwrap();
        let tol = 1e-9 * (1.0 + r.operator_norm);
        for &p in r.inner_polygon.vertices() {
            prop_assert!(common::polygon_distance(r.outer_polygon.vertices(), p) <= tol);
        }
    }

    #[test]
    fn range_is_unitarily_invariant(a in matrix(4), seed in 0u64..1000) {
        let u = random_unitary(&mut seeded(seed), a.dim());
        let b = unitary_conjugate(&a, &u).unwrap();
        let ra = compute_range(&a, 360).unwrap();
        let rb = compute_range(&b, 360).unwrap();
        for (x, y) in ra.support_values.iter().zip(&rb.support_values) {
            prop_assert!((x - y).abs() < 1e-9 * (1.0 + ra.operator_norm));
        }
    }

    #[test]
    fn products_of_range_points_are_members(seed in 0u64..1000, i in 0usize..64, j in 0usize..64) {
        let mut rng = seeded(seed);
        let n = 2 + (seed as usize % 3);
        let a = random_complex_matrix(&mut rng, n);
        let b = random_complex_matrix(&mut rng, n);
        let ra = compute_range(&a, 64).unwrap();
        let rb = compute_range(&b, 64).unwrap();
        let (za, zb) = (ra.boundary_points[i], rb.boundary_points[j]);
        // On the true boundary the inner polygons may fall short by the
        // chord sag, so only soundness is required there.
        let v = product_membership(&a, &b, za * zb, DEFAULT_TOL, DEFAULT_GRID).unwrap();
        prop_assert_ne!(v.verdict, Membership::Out);
        let ca = ra.inner_polygon.centroid();
        let cb = rb.inner_polygon.centroid();
        let lambda = (ca + (za - ca) * 0.99) * (cb + (zb - cb) * 0.99);
        let v = product_membership(&a, &b, lambda, DEFAULT_TOL, DEFAULT_GRID).unwrap();
        prop_assert_eq!(v.verdict, Membership::In);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(16) })]

    #[test]
    fn psd_factor_contains_spectrum(seed in 0u64..10_000) {
        let mut rng = seeded(seed);
        let n = 2 + (seed as usize % 4);
        let a = random_psd_multiple(&mut rng, n, 0.0, 2.0);
        let b = random_complex_matrix(&mut rng, n);
        for lambda in eig_general(&(&a * &b)).unwrap().eigenvalues {
            let v = product_membership(&a, &b, lambda, DEFAULT_TOL, DEFAULT_GRID).unwrap();
            prop_assert_ne!(v.verdict, Membership::Out);
        }
    }

    #[test]
    fn certificates_verify(seed in 0u64..10_000) {
        let mut rng = seeded(seed);
        let n = 2 + (seed as usize % 3);
        let a = random_complex_matrix(&mut rng, n);
        prop_assume!(!is_psd_multiple(&a, 1e-8).unwrap().0);
        if let Ok(Some(cert)) = falsify(&a) {
            prop_assert!(verify_certificate(&a, &cert).is_ok());
            let t = common::trace_product(&a, &cert.b);
            prop_assert!((t - cert.lambda).norm() <= 1e-9 * (1.0 + t.norm()));
        }
    }
}
