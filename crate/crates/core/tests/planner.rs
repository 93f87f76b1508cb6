mod common;

use std::f64::consts::FRAC_PI_2;

use common::*;
use dubwind::{
    plan, plan_with, sample, validate, ControlSchedule, Family, Piece, PlanOptions, Pose,
    Scenario, ScenarioError, ToleranceSet, Turn, Variant, Vec2, WindVector,
};

#[test]
fn crosswind_winner_and_family_minima() {
    let r = plan(&case1()).unwrap();
    let best = r.best.as_ref().unwrap();
    assert_eq!(best.variant(), Variant::LSL);
    assert!((best.total_time - 7.5294).abs() < 1e-4);
    assert_eq!(r.t_f, Some(r.all_candidates[0].total_time));
    assert_eq!(r.per_family_times[&Family::SC], f64::INFINITY);
    assert!((r.per_family_times[&Family::CCC] - 7.5570).abs() < 1e-4);
    assert!((r.per_family_times[&Family::CSC] - 7.5294).abs() < 1e-4);
    assert!(r
        .all_candidates
        .windows(2)
        .all(|w| w[0].total_time <= w[1].total_time));
}

#[test]
fn tailwind_ties_go_to_the_loop_family() {
    let r = plan(&case2()).unwrap();
    let best = r.best.unwrap();
    assert_eq!(best.variant(), Variant::RL2pi);
    assert!((best.total_time - 2.25 * std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn every_candidate_validates_cleanly() {
    let sc = case1();
    let r = plan(&sc).unwrap();
    for c in &r.all_candidates {
        let rep = validate(c, &sc);
        assert!(rep.feasible);
        assert!(rep.position_error < 1e-9);
        assert!(rep.heading_error < 1e-9);
        assert!(rep.interception_error < 1e-9);
    }
}

#[test]
fn perturbed_straight_piece_is_rejected() {
    let sc = case1();
    let best = plan(&sc).unwrap().best.unwrap();
    let mut bent = best.clone();
    let mut pieces = bent.schedule.pieces().to_vec();
    pieces[1] = Piece::new(Turn::Straight, pieces[1].duration + 0.1);
    bent.schedule = ControlSchedule::new(pieces);
    let rep = validate(&bent, &sc);
    assert!(!rep.feasible);
    // the extra 0.1 of flight moves both the vehicle and the target
    assert!(rep.position_error > 0.05 && rep.position_error < 0.1 * (1.0 + 0.5) + 1e-9);
}

#[test]
fn sampled_path_ends_on_ground_target() {
    let sc = case1();
    let best = plan(&sc).unwrap().best.unwrap();
    let rows = sample(&best, 0.01, &sc);
    let last = rows.last().unwrap();
    assert_eq!(last.t, best.total_time);
    assert!((last.inertial - Vec2::new(5.0, -2.0)).norm() < 1e-6);
    assert_eq!(rows[0].t, 0.0);
    assert!(rows.windows(2).all(|w| w[0].t < w[1].t));
}

#[test]
fn calm_straight_line() {
    let sc = Scenario::new(WindVector::CALM, Vec2::new(0.0, 10.0), FRAC_PI_2, 1.0);
    let r = plan(&sc).unwrap();
    assert!((r.t_f.unwrap() - 10.0).abs() < 1e-12);
    let best = r.best.unwrap();
    assert_eq!(best.family(), Family::CSC);
    assert_eq!(best.params.alpha, 0.0);
    assert_eq!(best.params.gamma, 0.0);
}

#[test]
fn invalid_inputs_are_errors() {
    let strong = Scenario::new(WindVector { wx: 0.6, wy: 0.8 }, Vec2::new(1.0, 1.0), 0.0, 1.0);
    assert!(matches!(plan(&strong), Err(ScenarioError::WindTooStrong { .. })));
    let flat = Scenario::new(WindVector::CALM, Vec2::new(1.0, 1.0), 0.0, -1.0);
    assert!(matches!(plan(&flat), Err(ScenarioError::NonPositiveRho(_))));
    let nan = Scenario::new(WindVector::CALM, Vec2::new(f64::NAN, 1.0), 0.0, 1.0);
    assert!(plan(&nan).is_err());
}

#[test]
fn widening_is_reported() {
    // a loop path that misses by 1e-5: only visible with a wider band
    let w = WindVector::new(0.0, -0.2).unwrap();
    let t = 2.0 + std::f64::consts::TAU;
    let exact = Vec2::new(0.0, 2.0) + w.as_vec() * t;
    let tight = ToleranceSet {
        feas_tol: 1e-6,
        residual_tol: 1e-3,
        ..ToleranceSet::default()
    };
    let sc = Scenario::new(w, exact + Vec2::new(1e-5, 0.0), FRAC_PI_2 + 5e-5, 1.0).with_tolerances(tight);
    let narrow = plan_with(&sc, &PlanOptions { widen_factor: None }).unwrap();
    let wide = plan(&sc).unwrap();
    assert!(!narrow.widened_feas_tol);
    if narrow.is_feasible() {
        assert!(!wide.widened_feas_tol);
    } else {
        assert!(wide.widened_feas_tol && wide.is_feasible());
    }
}

#[test]
fn shifted_start_gives_same_time() {
    let base = case1();
    let r0 = plan(&base).unwrap();
    // rotate the whole picture by 0.7 rad and move it
    let rot = 0.7f64;
    let (s, c) = rot.sin_cos();
    let turn = |v: Vec2| Vec2::new(c * v.x - s * v.y, s * v.x + c * v.y);
    let offset = Vec2::new(3.0, -4.0);
    let w = turn(base.wind.as_vec());
    let moved = Scenario::new(
        WindVector::new(w.x, w.y).unwrap(),
        turn(base.target) + offset,
        base.theta_f + rot,
        base.rho,
    )
    .with_start(Pose::new(offset.x, offset.y, FRAC_PI_2 + rot));
    let r1 = plan(&moved).unwrap();
    assert!((r0.t_f.unwrap() - r1.t_f.unwrap()).abs() < 1e-9);
    let rows = sample(r1.best.as_ref().unwrap(), 0.1, &moved);
    assert!((rows[0].relative.position() - offset).norm() < 1e-12);
    assert!((rows.last().unwrap().inertial - moved.target).norm() < 1e-6);
}
