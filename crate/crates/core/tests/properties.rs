use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use squeeze_jump::bch::{self, AlgebraSign, LambdaSet, DEFAULT_DEGENERACY_TOL};
use squeeze_jump::fock::{self, FockVector, Propagator, TruncationPolicy};
use squeeze_jump::protocol::{self, JumpProtocol};
use squeeze_jump::squeezed::SqueezedState;
use squeeze_jump::C64;

fn complex(range: f64) -> impl Strategy<Value = C64> {
    (-range..range, -range..range).prop_map(|(re, im)| C64::new(re, im))
}

fn sign() -> impl Strategy<Value = AlgebraSign> {
    prop_oneof![Just(AlgebraSign::SuOneOne), Just(AlgebraSign::SuTwo)]
}

/// `(ω₀, ω₁, τ)` covering up- and down-jumps.
fn protocol_params() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.5..2.0f64, 0.2..5.0f64, 0.05..2.0 * PI).prop_map(|(w0, ratio, tau)| (w0, w0 * ratio, tau))
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn factorization_ignores_root_choice(plus in complex(2.0), minus in complex(2.0), three in complex(2.0), s in sign()) {
        let l = LambdaSet::new(plus, minus, three, s).unwrap();
        let nu = bch::nu_of(&l);
        let a = bch::factorize_on_branch(&l, nu, DEFAULT_DEGENERACY_TOL);
        let b = bch::factorize_on_branch(&l, -nu, DEFAULT_DEGENERACY_TOL);
        prop_assume!(a.is_ok());
        let (a, b) = (a.unwrap(), b.unwrap());
        prop_assert!(close(a.plus, b.plus, 1e-13));
        prop_assert!(close(a.minus, b.minus, 1e-13));
        prop_assert!(close(a.three, b.three, 1e-13));
        prop_assert!(close(a.log_three, b.log_three, 1e-13));
    }

    #[test]
    fn nu_squared_recomputes(plus in complex(3.0), minus in complex(3.0), three in complex(3.0), s in sign()) {
        let l = LambdaSet::new(plus, minus, three, s).unwrap();
        let nu = bch::nu_of(&l);
        let direct = three * three / 4.0 - s.epsilon() * plus * minus;
        prop_assert!(close(nu * nu, direct, 1e-14));
    }

    #[test]
    fn identity_law_on_physical_family((w0, w1, tau) in protocol_params(), frac in 0.0..1.0f64) {
        let p = JumpProtocol::new(w0, w1, tau).unwrap();
        let fe = bch::factorize(&protocol::lambdas_interval1(&p, frac * tau).unwrap()).unwrap();
        prop_assert!((fe.three.norm() + fe.plus.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tiny_nu_matches_limit(plus in complex(1.0), minus in complex(1.0), theta in 0.0..2.0 * PI, s in sign()) {
        let three = 2.0 * (s.epsilon() * plus * minus).sqrt();
        let d = C64::new(1.0, 0.0) - three / 2.0;
        prop_assume!(d.norm() > 0.1);
        let l = LambdaSet::new(plus, minus, three, s).unwrap();
        let fe = bch::factorize_on_branch(&l, C64::from_polar(1e-10, theta), DEFAULT_DEGENERACY_TOL).unwrap();
        prop_assert!(close(fe.plus, plus / d, 1e-8));
        prop_assert!(close(fe.minus, minus / d, 1e-8));
        prop_assert!(close(fe.three, (d * d).inv(), 1e-8));
    }

    #[test]
    fn su2_spin_half_law(plus in complex(2.0), minus in complex(2.0), three in complex(2.0)) {
        let l = LambdaSet::new(plus, minus, three, AlgebraSign::SuTwo).unwrap();
        let fe = bch::factorize(&l);
        prop_assume!(fe.is_ok());
        let dev = bch::verify_in(&l, &fe.unwrap(), &bch::Representation::SpinHalf).unwrap();
        prop_assert!(dev < 1e-12, "{}", dev);
    }

    #[test]
    fn heisenberg_bound(r in 0.0..3.0f64, phi in -PI..PI, lambda in -PI..PI) {
        let s = SqueezedState::new(r, phi, 1.0).unwrap();
        let product = s.variance(lambda) * s.variance(lambda + FRAC_PI_2);
        prop_assert!(product >= 0.25 - 1e-12);
        let aligned = s.phi() / 2.0 + FRAC_PI_2 * (lambda * 4.0 / PI).round();
        let floor = s.variance(aligned) * s.variance(aligned + FRAC_PI_2);
        prop_assert!((floor - 0.25).abs() < 1e-9 * (2.0 * r).exp());
    }

    #[test]
    fn variance_is_pi_periodic_and_bounded(r in 0.0..3.0f64, phi in -PI..PI, lambda in -PI..PI) {
        let s = SqueezedState::new(r, phi, 1.0).unwrap();
        let v = s.variance(lambda);
        prop_assert!((v - s.variance(lambda + PI)).abs() < 1e-12 * (2.0 * r).exp());
        prop_assert!(v >= s.min_variance() * (1.0 - 1e-12) && v <= s.max_variance() * (1.0 + 1e-12));
    }

    #[test]
    fn fock_expansion_is_even_and_normalized(r in 0.0..1.5f64, phi in -PI..PI) {
        let s = SqueezedState::new(r, phi, 1.0).unwrap();
        let v = s.to_fock(256, 1e-10).unwrap();
        prop_assert!(v.amplitudes().iter().skip(1).step_by(2).all(|c| *c == C64::new(0.0, 0.0)));
        prop_assert!((v.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn r_periodic_in_first_interval(w1 in 0.2..5.0f64, t in 0.0..3.0f64) {
        let period = PI / w1;
        let p = JumpProtocol::new(1.0, w1, t + period).unwrap();
        let a = protocol::squeezing_parameter(&p, t).unwrap();
        let b = protocol::squeezing_parameter(&p, t + period).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn r_frozen_after_second_jump((w0, w1, tau) in protocol_params(), dt in 0.0..20.0f64) {
        let p = JumpProtocol::new(w0, w1, tau).unwrap();
        let at_tau = protocol::state_at(&p, tau).unwrap().squeezed.r();
        let later = protocol::state_at(&p, tau + dt).unwrap().squeezed.r();
        prop_assert_eq!(at_tau, later);
        prop_assert!((at_tau - protocol::squeezing_parameter(&p, tau).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn continuity_at_second_jump((w0, w1, tau) in protocol_params(), lambda in 0.0..PI) {
        let p = JumpProtocol::new(w0, w1, tau).unwrap();
        let before = protocol::variance_at(&p, tau, lambda).unwrap();
        let after = protocol::variance_at(&p, tau * (1.0 + 1e-14), lambda).unwrap();
        prop_assert!((before - after).abs() < 1e-9);
    }

    #[test]
    fn consistency_triangle((w0, w1, tau) in protocol_params()) {
        let p = JumpProtocol::new(w0, w1, tau).unwrap();
        let z = protocol::persistence(&p);
        let sech = protocol::squeezing_parameter(&p, tau).unwrap().cosh().recip();
        let p0 = protocol::even_photon_probabilities(&p, 1)[0];
        prop_assert!((z - sech).abs() < 1e-12);
        prop_assert!((z - p0).abs() < 1e-12);
        prop_assert!((z + protocol::excitation_probability(&p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn heisenberg_floor_along_protocol((w0, w1, tau) in protocol_params(), frac in 0.0..3.0f64, lambda in 0.0..PI) {
        let p = JumpProtocol::new(w0, w1, tau).unwrap();
        let t = frac * tau;
        let product = protocol::variance_at(&p, t, lambda).unwrap()
            * protocol::variance_at(&p, t, lambda + FRAC_PI_2).unwrap();
        prop_assert!(product >= 0.25 - 1e-12);
    }

    #[test]
    fn minimum_uncertainty_at_peak(w1 in 0.2..5.0f64, lambda in prop_oneof![Just(0.0), Just(FRAC_PI_2)]) {
        let t = PI / (2.0 * w1);
        let p = JumpProtocol::new(1.0, w1, t).unwrap();
        let product = protocol::variance_at(&p, t, lambda).unwrap()
            * protocol::variance_at(&p, t, lambda + FRAC_PI_2).unwrap();
        prop_assert!((product - 0.25).abs() < 1e-9, "{}", product);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn representation_law_at_64(w1 in 0.5..2.0f64, t in 0.0..6.0f64) {
        let p = JumpProtocol::new(1.0, w1, t.max(1e-9)).unwrap();
        let l = protocol::lambdas_interval1(&p, t).unwrap();
        let dev = bch::verify_factorization(&l, &bch::factorize(&l).unwrap(), 64);
        prop_assert!(dev < 1e-8, "{}", dev);
    }

    #[test]
    fn propagation_is_unitary_and_parity_preserving(n in 16usize..=128, w in 0.2..5.0f64, t in -10.0..10.0f64) {
        let h = fock::hamiltonian(w, 1.0, n).unwrap();
        prop_assert!(h.is_hermitian());
        let prop = Propagator::new(&h, TruncationPolicy::default()).unwrap();
        let out = prop.evolve_unchecked(&FockVector::vacuum(n).unwrap(), t).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
        prop_assert!(out.odd_mass() < 1e-12);
    }

    #[test]
    fn oracle_variance_agreement(r in 0.0..2.0f64, phi in -PI..PI, lambda in 0.0..PI) {
        let s = SqueezedState::new(r, phi, 1.0).unwrap();
        let v = s.to_fock(800, 1e-10).unwrap();
        let numeric = fock::variance_of_quadrature(&v, lambda);
        prop_assert!((numeric - s.variance(lambda)).abs() < 1e-8, "{} vs {}", numeric, s.variance(lambda));
    }
}
