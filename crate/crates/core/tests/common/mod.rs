#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use dubwind::{Scenario, Vec2, WindVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Wind magnitude uniform in `[0, max_wind]`, target uniform in the disk of
/// radius `range * rho`, any final heading.
pub fn random_scenario(rng: &mut ChaCha8Rng, max_wind: f64, range: f64) -> Scenario {
    let rho = rng.gen_range(0.5..2.0);
    let speed = rng.gen_range(0.0..=max_wind);
    let dir = rng.gen_range(0.0..TAU);
    let r = range * rho * rng.gen::<f64>().sqrt();
    let bearing = rng.gen_range(0.0..TAU);
    let wind = WindVector::new(speed * dir.cos(), speed * dir.sin()).unwrap();
    let target = Vec2::new(r * bearing.cos(), r * bearing.sin());
    Scenario::new(wind, target, rng.gen_range(0.0..TAU), rho)
}

/// Reflection across the initial heading line (the `y` axis).
pub fn mirror(sc: &Scenario) -> Scenario {
    let wind = WindVector::new(-sc.wind.wx, sc.wind.wy).unwrap();
    Scenario::new(wind, Vec2::new(-sc.target.x, sc.target.y), PI - sc.theta_f, sc.rho)
        .with_tolerances(sc.tolerances)
}

pub fn case1_wind() -> WindVector {
    let dir = (-18f64).to_radians();
    WindVector::new(0.5 * dir.cos(), 0.5 * dir.sin()).unwrap()
}

pub fn case1() -> Scenario {
    Scenario::new(case1_wind(), Vec2::new(5.0, -2.0), 72f64.to_radians(), 1.0)
}

pub fn case1_literal() -> Scenario {
    Scenario::new(
        WindVector::new(0.475, -0.155).unwrap(),
        Vec2::new(5.0, -2.0),
        72f64.to_radians(),
        1.0,
    )
}

pub fn case2() -> Scenario {
    let wy = -(4.0 + 2.0 * 2f64.sqrt()) / (9.0 * PI);
    Scenario::new(
        WindVector::new(0.0, wy).unwrap(),
        Vec2::new(1.0 - 1.0 / 2f64.sqrt(), -1.0),
        FRAC_PI_2 / 2.0,
        1.0,
    )
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}
