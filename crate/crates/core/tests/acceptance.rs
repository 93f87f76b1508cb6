//! Exit criteria. Each test prints one `criterion N ... PASS|FAIL` line.

mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

use common::*;
use dubwind::oracle::{brute_force, classical_dubins, grid_roots, GridSpec};
use dubwind::rootfind::{solve_envelope, solve_quadcos, EnvelopeCoeffs, QuadCosCoeffs, RootSet};
use dubwind::{integrate, plan, Family, PlanResult, Pose, RelativeState, Scenario, ToleranceSet, Variant, Vec2, WindVector};
use rand::Rng;

fn report(n: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n} {name}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn time_of(result: &PlanResult, variant: Variant) -> Option<f64> {
    result
        .all_candidates
        .iter()
        .filter(|c| c.variant() == variant)
        .map(|c| c.total_time)
        .min_by(f64::total_cmp)
}

/// Checks each `(variant, expected)` pair at `tol`; returns the failures.
fn check_times(result: &PlanResult, expected: &[(Variant, f64)], tol: f64) -> Vec<String> {
    let mut bad = Vec::new();
    for &(v, want) in expected {
        // any candidate of the variant may carry the reported time
        let hit = result
            .all_candidates
            .iter()
            .filter(|c| c.variant() == v)
            .any(|c| (c.total_time - want).abs() <= tol);
        if !hit {
            bad.push(format!("{v} want {want} got {:?}", time_of(result, v)));
        }
    }
    bad
}

fn median_plan_micros(sc: &Scenario, runs: usize) -> f64 {
    median(
        (0..runs)
            .map(|_| {
                let t = Instant::now();
                let r = plan(sc).unwrap();
                let us = t.elapsed().as_secs_f64() * 1e6;
                assert!(r.is_feasible());
                us
            })
            .collect(),
    )
}

#[test]
fn criterion_1_crosswind_case() {
    let sc = case1();
    let r = plan(&sc).unwrap();
    let best = r.best.as_ref().unwrap();
    let expected = [
        (Variant::RLRLong, 11.9937),
        (Variant::RLRShort, 8.1420),
        (Variant::LRLLong, 11.7152),
        (Variant::LRLShort, 7.5570),
        (Variant::RSR, 8.1157),
        (Variant::LSL, 7.5294),
    ];
    let bad = check_times(&r, &expected, 1e-3);
    let runtime = median_plan_micros(&sc, 21);
    let pass = best.variant() == Variant::LSL
        && (best.total_time - 7.5294).abs() <= 1e-3
        && bad.is_empty()
        && runtime < 10_000.0;
    report(
        1,
        "crosswind case",
        pass,
        &format!(
            "best {} {:.4}, mismatches {bad:?}, median runtime {runtime:.0} us",
            best.variant(),
            best.total_time
        ),
    );

    let lit = plan(&case1_literal()).unwrap();
    println!(
        "  (rounded wind (0.475, -0.155): best {} {:.4})",
        lit.best.as_ref().unwrap().variant(),
        lit.t_f.unwrap()
    );
    assert!(pass);
}

#[test]
fn criterion_2_tailwind_case() {
    let sc = case2();
    assert_eq!(sc.wind.wx, 0.0);
    let r = plan(&sc).unwrap();
    let best = r.best.as_ref().unwrap();
    let analytic = 2.25 * PI;
    let expected = [
        (Variant::LSL, 15.7929),
        (Variant::LRLLong, 9.5686),
        (Variant::RLRLong, 12.1137),
    ];
    let bad = check_times(&r, &expected, 1e-3);
    let best_ok = best.variant() == Variant::RL2pi
        && (best.total_time - 7.0686).abs() <= 1e-3
        && (best.total_time - analytic).abs() <= 1e-3;
    report(
        2,
        "tailwind case",
        best_ok && bad.is_empty(),
        &format!(
            "best {} {:.4} (2.25pi = {analytic:.4}), mismatches {bad:?}",
            best.variant(),
            best.total_time
        ),
    );
    assert!(best_ok, "winner");
    assert!(bad.is_empty(), "candidate times: {bad:?}");
}

#[test]
fn criterion_3_terminal_residuals() {
    let mut rng = rng(3);
    let mut worst_pos = 0.0f64;
    let mut worst_heading = 0.0f64;
    let mut failures = Vec::new();
    let mut candidates = 0usize;
    for i in 0..500 {
        let sc = random_scenario(&mut rng, 0.9, 10.0);
        let r = plan(&sc).unwrap();
        let Some(t_f) = r.t_f else {
            failures.push(format!("#{i}: no candidate"));
            continue;
        };
        for c in &r.all_candidates {
            candidates += 1;
            let end = integrate(RelativeState::origin(), &c.schedule, sc.rho);
            let goal = sc.target - sc.wind.as_vec() * c.total_time;
            let pos = (end.position() - goal).norm();
            let heading = (end.theta - sc.theta_f).sin().abs().max(
                if (end.theta - sc.theta_f).cos() < 0.0 { 1.0 } else { 0.0 },
            );
            worst_pos = worst_pos.max(pos / (1.0 + t_f));
            worst_heading = worst_heading.max(heading);
            if pos > 1e-6 * (1.0 + t_f) || heading > 1e-8 {
                failures.push(format!("#{i} {}: pos {pos:e} heading {heading:e}", c.variant()));
            }
        }
    }
    report(
        3,
        "terminal residuals",
        failures.is_empty(),
        &format!(
            "{candidates} candidates, worst pos/(1+t_f) {worst_pos:.1e}, worst heading {worst_heading:.1e}, {} failures",
            failures.len()
        ),
    );
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_4_oracle_dominance() {
    let mut rng = rng(4);
    let grid = GridSpec::default();
    let mut failures = Vec::new();
    let mut worst_gap = 0.0f64;
    let mut bound = 0.0f64;
    for i in 0..200 {
        let sc = random_scenario(&mut rng, 0.5, 10.0);
        let r = plan(&sc).unwrap();
        let oracle = brute_force(&r.normalized, &grid);
        match (r.t_f, oracle) {
            (Some(t), Some(o)) => {
                bound = bound.max(o.bound);
                worst_gap = worst_gap.max((t - o.time).abs());
                if t < o.time - 1e-6 || t > o.time + o.bound {
                    failures.push(format!("#{i}: planner {t} oracle {} ({})", o.time, o.shape));
                }
            }
            (t, o) => failures.push(format!("#{i}: planner {t:?} oracle {:?}", o.map(|o| o.time))),
        }
    }
    let pass = failures.is_empty() && bound <= 0.02;
    report(
        4,
        "oracle dominance",
        pass,
        &format!("200 scenarios, worst |gap| {worst_gap:.1e}, bound {bound}, {} failures", failures.len()),
    );
    assert!(pass, "{failures:#?}");
}

#[test]
fn criterion_5_calm_air_matches_dubins() {
    let mut rng = rng(5);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 100 {
        let rho = rng.gen_range(0.5..2.0);
        let dist = rho * rng.gen_range(4.0..12.0);
        let bearing = rng.gen_range(0.0..TAU);
        let heading = rng.gen_range(0.0..TAU);
        let goal = Pose::new(dist * bearing.cos(), dist * bearing.sin(), heading);
        if dist <= 4.0 * rho {
            continue;
        }
        count += 1;
        let sc = Scenario::new(WindVector::CALM, Vec2::new(goal.x, goal.y), heading, rho);
        let t = plan(&sc).unwrap().t_f.unwrap();
        let classical = classical_dubins(Pose::new(0.0, 0.0, FRAC_PI_2), goal, rho);
        worst = worst.max((t - classical).abs());
        if (t - classical).abs() > 1e-9 {
            failures.push(format!("{goal:?} rho {rho}: planner {t} classical {classical}"));
        }
    }
    report(
        5,
        "calm air equals classical",
        failures.is_empty(),
        &format!("100 goals, worst |diff| {worst:.1e}"),
    );
    assert!(failures.is_empty(), "{failures:#?}");
}

/// Both-way pairing of solver roots with dense-grid roots.
fn compare_roots(found: &RootSet, grid: &[f64], scale: f64, tag: &str, failures: &mut Vec<String>) {
    for g in grid {
        if !found.iter().any(|r| (r.value - g).abs() <= 1e-6) {
            failures.push(format!("{tag}: missed {g}"));
        }
    }
    for r in found.simple() {
        if !grid.iter().any(|g| (r.value - g).abs() <= 1e-6) {
            failures.push(format!("{tag}: spurious {}", r.value));
        }
    }
    for r in found.iter() {
        if r.residual > 1e-9 * scale && !r.tangential {
            failures.push(format!("{tag}: residual {} at {}", r.residual, r.value));
        }
    }
}

#[test]
fn criterion_6_root_completeness() {
    const POINTS: usize = 1_000_000;
    let tol = ToleranceSet::default();
    let mut rng = rng(6);
    let mut failures = Vec::new();
    let mut roots_seen = 0usize;
    for i in 0..1000 {
        let c = QuadCosCoeffs::new(
            rng.gen_range(0.0..2.0),
            rng.gen_range(-8.0..8.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
        );
        let found = solve_quadcos(&c, &tol);
        let grid = grid_roots(|b, _, cos| (c.c1 * b + c.c2) * b + c.c3 * cos + c.c4, POINTS);
        roots_seen += grid.len();
        compare_roots(&found, &grid, 1.0 + c.magnitude(), &format!("quadcos #{i}"), &mut failures);
    }
    for i in 0..1000 {
        let c = EnvelopeCoeffs::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let found = solve_envelope(&c, &tol);
        let grid = grid_roots(
            |b, s, cos| c.f1 + c.f2 * s + c.f3 * cos + b * (c.f4 * s + c.f5 * cos),
            POINTS,
        );
        roots_seen += grid.len();
        compare_roots(&found, &grid, 1.0 + c.magnitude(), &format!("envelope #{i}"), &mut failures);
    }
    report(
        6,
        "root completeness",
        failures.is_empty(),
        &format!("2000 equations, {roots_seen} grid roots, {} mismatches", failures.len()),
    );
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_7_performance() {
    let tol = ToleranceSet::default();
    let mut rng = rng(7);
    let coeffs: Vec<QuadCosCoeffs> = (0..1000)
        .map(|_| {
            QuadCosCoeffs::new(
                rng.gen_range(0.0..2.0),
                rng.gen_range(-8.0..8.0),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
            )
        })
        .collect();
    let root_us = median(
        coeffs
            .iter()
            .map(|c| {
                let t = Instant::now();
                let r = solve_quadcos(c, &tol);
                let us = t.elapsed().as_secs_f64() * 1e6;
                std::hint::black_box(r);
                us
            })
            .collect(),
    );
    let scenarios: Vec<Scenario> = (0..200).map(|_| random_scenario(&mut rng, 0.9, 10.0)).collect();
    let plan_us = median(
        scenarios
            .iter()
            .map(|sc| {
                let t = Instant::now();
                let r = plan(sc).unwrap();
                let us = t.elapsed().as_secs_f64() * 1e6;
                std::hint::black_box(r);
                us
            })
            .collect(),
    );
    let pass = root_us <= 100.0 && plan_us <= 1000.0;
    report(
        7,
        "performance",
        pass,
        &format!("median root set {root_us:.2} us, median plan {plan_us:.1} us"),
    );
    assert!(pass);
}

#[test]
fn criterion_8_mirror_symmetry() {
    let mut rng = rng(8);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..500 {
        let sc = random_scenario(&mut rng, 0.9, 10.0);
        let a = plan(&sc).unwrap();
        let b = plan(&mirror(&sc)).unwrap();
        match (a.best, b.best) {
            (Some(x), Some(y)) => {
                let gap = (x.total_time - y.total_time).abs();
                worst = worst.max(gap);
                if gap > 1e-9 || x.variant().mirrored() != y.variant() {
                    failures.push(format!(
                        "#{i}: {} {} vs {} {}",
                        x.variant(),
                        x.total_time,
                        y.variant(),
                        y.total_time
                    ));
                }
            }
            (x, y) => failures.push(format!("#{i}: {:?} vs {:?}", x.is_some(), y.is_some())),
        }
    }
    report(
        8,
        "mirror symmetry",
        failures.is_empty(),
        &format!("500 pairs, worst |dt| {worst:.1e}, {} failures", failures.len()),
    );
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn families_cover_all_four() {
    // every family shows up somewhere in the crosswind and tailwind cases
    let r1 = plan(&case1()).unwrap();
    let r2 = plan(&case2()).unwrap();
    for f in [Family::CC, Family::CCC, Family::CSC] {
        assert!(r1.per_family_times[&f].is_finite() || r2.per_family_times[&f].is_finite(), "{f}");
    }
}
