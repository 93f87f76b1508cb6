mod common;

use std::f64::consts::TAU;

use common::mirror;
use dubwind::rootfind::{solve_envelope, solve_quadcos, solve_sinusoid, EnvelopeCoeffs, QuadCosCoeffs, SinusoidCoeffs};
use dubwind::{integrate, plan, RelativeState, Scenario, ToleranceSet, Vec2, WindVector};
use proptest::prelude::*;

fn scenario() -> impl Strategy<Value = Scenario> {
    (
        0.0..0.9f64,
        0.0..TAU,
        -10.0..10.0f64,
        -10.0..10.0f64,
        0.0..TAU,
        0.3..3.0f64,
    )
        .prop_map(|(speed, dir, x, y, theta_f, rho)| {
            Scenario::new(
                WindVector::new(speed * dir.cos(), speed * dir.sin()).unwrap(),
                Vec2::new(x * rho, y * rho),
                theta_f,
                rho,
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mirror_equivariance(sc in scenario()) {
        let a = plan(&sc).unwrap();
        let b = plan(&mirror(&sc)).unwrap();
        let (x, y) = (a.best.unwrap(), b.best.unwrap());
        prop_assert!((x.total_time - y.total_time).abs() <= 1e-9);
        prop_assert_eq!(x.variant().mirrored(), y.variant());
    }

    #[test]
    fn scale_covariance(sc in scenario(), k in 0.2..5.0f64) {
        let scaled = Scenario::new(sc.wind, sc.target * k, sc.theta_f, sc.rho * k);
        let a = plan(&sc).unwrap();
        let b = plan(&scaled).unwrap();
        let (ta, tb) = (a.t_f.unwrap(), b.t_f.unwrap());
        prop_assert!((tb - k * ta).abs() <= 1e-9 * (1.0 + k * ta), "{} vs {}", tb, k * ta);
    }

    #[test]
    fn candidates_hit_the_moving_target(sc in scenario()) {
        let r = plan(&sc).unwrap();
        for c in &r.all_candidates {
            let end = integrate(RelativeState::origin(), &c.schedule, sc.rho);
            let goal = sc.target - sc.wind.as_vec() * c.total_time;
            prop_assert!((end.position() - goal).norm() <= 1e-6 * (1.0 + c.total_time));
            prop_assert!((c.schedule.total_duration() - c.total_time).abs() == 0.0);
        }
    }

    #[test]
    fn quadcos_roots_have_small_residuals(
        c1 in 0.0..3.0f64, c2 in -10.0..10.0f64, c3 in -10.0..10.0f64, c4 in -10.0..10.0f64,
    ) {
        let c = QuadCosCoeffs::new(c1, c2, c3, c4);
        let roots = solve_quadcos(&c, &ToleranceSet::default());
        let vals = roots.values();
        prop_assert!(vals.windows(2).all(|w| w[0] < w[1]));
        for r in roots.iter().filter(|r| !r.tangential) {
            prop_assert!((0.0..TAU).contains(&r.value));
            prop_assert!(c.eval(r.value).abs() <= 1e-9 * (1.0 + c.magnitude()));
        }
    }

    #[test]
    fn envelope_roots_have_small_residuals(
        f1 in -3.0..3.0f64, f2 in -3.0..3.0f64, f3 in -3.0..3.0f64, f4 in -1.0..1.0f64, f5 in -1.0..1.0f64,
    ) {
        let c = EnvelopeCoeffs::new(f1, f2, f3, f4, f5);
        let roots = solve_envelope(&c, &ToleranceSet::default());
        for r in roots.iter().filter(|r| !r.tangential) {
            prop_assert!(c.eval(r.value).abs() <= 1e-9 * (1.0 + c.magnitude()));
            prop_assert!(r.bracket.1 - r.bracket.0 <= ToleranceSet::default().root_tol);
        }
    }

    #[test]
    fn envelope_without_beta_terms_matches_sinusoid(e1 in -3.0..3.0f64, e2 in -3.0..3.0f64, e3 in -3.0..3.0f64) {
        let tol = ToleranceSet::default();
        let a = solve_envelope(&EnvelopeCoeffs::new(e1, e2, e3, 0.0, 0.0), &tol);
        let b = solve_sinusoid(&SinusoidCoeffs::new(e1, e2, e3), &tol);
        let simple_a: Vec<f64> = a.simple().map(|r| r.value).collect();
        let simple_b: Vec<f64> = b.simple().map(|r| r.value).collect();
        prop_assert_eq!(simple_a.len(), simple_b.len());
        for (x, y) in simple_a.iter().zip(&simple_b) {
            prop_assert!((x - y).abs() < 1e-8);
        }
    }
}
