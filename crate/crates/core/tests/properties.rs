use lambda_commute::commutation::{
    detect_factor, match_multisets, solve_lambda_commutant, spectrum_rotation_check, FactorStatus,
};
use lambda_commute::families::{chained_normal, lambda_pair, norm_condition_pair};
use lambda_commute::intertwiner::{check_norm_condition, construct_intertwiner, gudder_nagy_check};
use lambda_commute::linalg::{eigenvalues, hermitian_eig, svd};
use lambda_commute::random::{ginibre, hermitian, psd, rng_from_seed};
use lambda_commute::realizations::{clock_shift_pair, q_bracket, uq_sl2_module, verify_uq_relations};
use lambda_commute::resolvent::{exact_projection, resolvent};
use lambda_commute::{ComplexMatrix, Error, OperatorPair, C64};
use proptest::prelude::*;

fn unit_phase() -> impl Strategy<Value = C64> {
    (0.5f64..2.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn q_value() -> impl Strategy<Value = C64> {
    prop_oneof![
        (1.1f64..2.0).prop_map(|x| C64::new(x, 0.0)),
        (0.5f64..0.9).prop_map(|x| C64::new(x, 0.0)),
        (0.5f64..2.0, 0.3f64..2.8).prop_map(|(r, t)| C64::from_polar(r, t)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>(), r in 1usize..7, c in 1usize..7) {
        let m = ginibre(&mut rng_from_seed(seed), r, c);
        prop_assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn product_spectra_coincide(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = rng_from_seed(seed);
        let (a, b) = (ginibre(&mut rng, n, n), ginibre(&mut rng, n, n));
        let ab = eigenvalues(&a.dot(&b)).unwrap();
        let ba = eigenvalues(&b.dot(&a)).unwrap();
        prop_assert!(match_multisets(&ab.values, &ba.values, 1e-7).matched);
    }

    #[test]
    fn hermitian_eig_reconstructs(seed in any::<u64>(), n in 1usize..9) {
        let m = hermitian(&mut rng_from_seed(seed), n);
        let (values, u) = hermitian_eig(&m, 1e-9).unwrap();
        let d = ComplexMatrix::from_real_diag(&values);
        prop_assert!(u.dot(&d).dot(&u.adjoint()).distance(&m) <= 1e-9 * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn svd_reconstructs(seed in any::<u64>(), r in 1usize..7, c in 1usize..7) {
        let m = ginibre(&mut rng_from_seed(seed), r, c);
        let s = svd(&m).unwrap();
        prop_assert!(s.reconstruct().distance(&m) <= 1e-9 * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn factor_is_scale_invariant(seed in any::<u64>(), alpha in unit_phase(), beta in unit_phase()) {
        let p = lambda_pair(&mut rng_from_seed(seed), 8);
        let r = detect_factor(&p, 1e-9).unwrap();
        let s = detect_factor(&p.scaled(alpha, beta), 1e-9).unwrap();
        prop_assert_eq!(r.status, s.status);
        let (l, m) = (r.lambda_hat.unwrap(), s.lambda_hat.unwrap());
        prop_assert!((l - m).norm() <= 1e-12 * l.norm().max(1.0));
    }

    #[test]
    fn swapping_inverts_the_factor(seed in any::<u64>()) {
        let p = lambda_pair(&mut rng_from_seed(seed), 8);
        let r = detect_factor(&p, 1e-9).unwrap();
        let s = detect_factor(&p.swapped(), 1e-9).unwrap();
        prop_assert_eq!(s.status, FactorStatus::Unique);
        let inv = r.lambda_hat.unwrap().inv();
        prop_assert!((s.lambda_hat.unwrap() - inv).norm() <= 1e-10 * inv.norm().max(1.0));
    }

    #[test]
    fn unimodular_or_nilpotent(seed in any::<u64>()) {
        let p = lambda_pair(&mut rng_from_seed(seed), 8);
        let l = p.declared_lambda().unwrap();
        let ab = p.ab();
        let radius = eigenvalues(&ab).unwrap().spectral_radius();
        if (l.norm() - 1.0).abs() > 1e-6 {
            prop_assert!(radius <= 1e-7 * ab.frobenius_norm().max(1.0));
        } else {
            let rot = spectrum_rotation_check(&eigenvalues(&ab).unwrap(), l, 1e-7 * ab.frobenius_norm().max(1.0));
            prop_assert!(rot.matched);
        }
    }

    #[test]
    fn commutant_elements_satisfy_relation(seed in any::<u64>()) {
        let (a, l) = chained_normal(&mut rng_from_seed(seed), 7);
        let basis = solve_lambda_commutant(&a, l, 1e-9).unwrap();
        prop_assert!(!basis.is_empty());
        for b in &basis {
            prop_assert!(a.dot(b).distance(&b.dot(&a).scale(l)) <= 1e-8 * a.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn psd_anticommutant_is_annihilated(seed in any::<u64>(), n in 1usize..7, rank_frac in 0.0f64..1.0) {
        let rank = 1 + ((n - 1) as f64 * rank_frac) as usize;
        let a = psd(&mut rng_from_seed(seed), n, rank);
        for b in solve_lambda_commutant(&a, C64::new(-1.0, 0.0), 1e-9).unwrap() {
            prop_assert!(a.dot(&b).frobenius_norm() <= 1e-9);
        }
    }

    #[test]
    fn norm_condition_gives_unitary_intertwiner(seed in any::<u64>()) {
        let p = norm_condition_pair(&mut rng_from_seed(seed), 8);
        prop_assert!(check_norm_condition(&p, 1e-9).unwrap());
        let w = construct_intertwiner(&p, 1e-9).unwrap();
        let ab = p.ab();
        let scale = ab.frobenius_norm().max(1.0);
        prop_assert!(w.residual_unitary <= 1e-9);
        prop_assert!(ab.distance(&w.u.dot(&p.ba())) <= 1e-8 * scale);
        prop_assert!(ab.commutator(&w.u).frobenius_norm() <= 1e-8 * scale);
        let pap = w.p.dot(p.a()).dot(&w.p);
        let pbp = w.p.dot(p.b()).dot(&w.p);
        prop_assert!(ab.distance(&pap.dot(&pbp)) <= 1e-8 * scale);
    }

    #[test]
    fn gudder_nagy_sides_agree(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let p = OperatorPair::of(hermitian(&mut rng, n), hermitian(&mut rng, n)).unwrap();
        prop_assert!(gudder_nagy_check(&p, 1e-8).unwrap().consistent);
        let q = norm_condition_pair(&mut rng, 8);
        let r = gudder_nagy_check(&q, 1e-8).unwrap();
        prop_assert!(r.consistent && r.lhs_holds);
    }

    #[test]
    fn q_bracket_is_inversion_symmetric(q in q_value(), m in 0u32..13) {
        let a = q_bracket(m, q).unwrap();
        let b = q_bracket(m, q.inv()).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn uq_modules_satisfy_relations(q in q_value(), n in 0usize..11, plus in any::<bool>()) {
        let m = uq_sl2_module(n, q, if plus { 1 } else { -1 }).unwrap();
        prop_assert!(verify_uq_relations(&m, 1e-9).unwrap().max_residual() <= 1e-9);
        prop_assert!(m.e.pow(n as u32 + 1).frobenius_norm() <= 1e-10);
        prop_assert!(m.f.pow(n as u32 + 1).frobenius_norm() <= 1e-10);
    }

    #[test]
    fn clock_shift_factor_is_nth_root(n in 2usize..11) {
        let r = detect_factor(&clock_shift_pair(n).unwrap(), 1e-9).unwrap();
        prop_assert!((r.lambda_hat.unwrap().powu(n as u32) - 1.0).norm() <= 1e-9);
    }

    #[test]
    fn spectral_projection_is_orthogonal(seed in any::<u64>(), n in 1usize..8, lo in -3.0f64..2.0, len in 0.1f64..4.0) {
        let a = hermitian(&mut rng_from_seed(seed), n);
        match exact_projection(&a, (lo, lo + len), 1e-9) {
            Err(Error::EndpointOnSpectrum { .. }) => {}
            other => {
                let p = other.unwrap();
                prop_assert!(p.dot(&p).distance(&p) <= 1e-10);
                prop_assert!(p.hermitian_deviation() <= 1e-10);
                let (values, _) = hermitian_eig(&a, 1e-9).unwrap();
                let count = values.iter().filter(|&&v| v > lo && v < lo + len).count() as f64;
                prop_assert!((p.trace().re - count).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn resolvent_identity_holds(
        seed in any::<u64>(), n in 1usize..8,
        x1 in -4.0f64..4.0, y1 in 0.1f64..2.0, x2 in -4.0f64..4.0, y2 in -2.0f64..-0.1,
    ) {
        let a = hermitian(&mut rng_from_seed(seed), n);
        let (w1, w2) = (C64::new(x1, y1), C64::new(x2, y2));
        let r1 = resolvent(&a, w1, 1e-9).unwrap();
        let r2 = resolvent(&a, w2, 1e-9).unwrap();
        let lhs = &r1 - &r2;
        prop_assert!(lhs.distance(&r1.dot(&r2).scale(w1 - w2)) <= 1e-9 * lhs.frobenius_norm().max(1.0));
    }
}
