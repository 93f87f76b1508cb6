//! Runs every family solver and picks the minimum-time path.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::error::ScenarioError;
use crate::families::{solve_all, Family, PathCandidate};
use crate::geometry::{
    angle_diff, integrate, normalize, state_at, to_inertial, RelativeState, RigidTransform,
    Scenario, Turn,
};

/// Absolute floor of the tie window.
pub const TIE_EPS: f64 = 1e-12;

/// Terminal errors of a candidate flown against its scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// Distance between the endpoint and the moving target at `total_time`.
    pub position_error: f64,
    /// `|θ(T) - θ_f|` wrapped to `[0, π]`.
    pub heading_error: f64,
    /// Mismatch between the distance the target drifts in `T` and the
    /// distance from its start to the endpoint.
    pub interception_error: f64,
    pub feasible: bool,
}

/// Integrates `candidate` in closed form and compares the endpoint with
/// the target. Expects a normalized scenario.
pub fn validate(candidate: &PathCandidate, scenario: &Scenario) -> ResidualReport {
    let tol = &scenario.tolerances;
    let t = candidate.schedule.total_duration();
    let end = integrate(RelativeState::origin(), &candidate.schedule, scenario.rho);
    let goal = scenario.target_relative(t);
    let position_error = (end.position() - goal).norm();
    let heading_error = angle_diff(end.theta, scenario.theta_f).abs();
    let interception_error =
        ((end.position() - scenario.target).norm() - t * scenario.wind.speed()).abs();
    let scale = 1.0 + t.abs();
    let feasible = t.is_finite()
        && position_error <= tol.residual_tol * scale
        && heading_error <= tol.feas_tol
        && interception_error <= tol.residual_tol * scale;
    ResidualReport {
        position_error,
        heading_error,
        interception_error,
        feasible,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanOptions {
    /// Retry once with `feas_tol` multiplied by this factor when nothing is
    /// feasible. `None` disables the retry.
    pub widen_factor: Option<f64>,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            widen_factor: Some(100.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlanResult {
    /// Minimum-time candidate, `None` when nothing is feasible.
    pub best: Option<PathCandidate>,
    /// Every validated candidate, sorted by time then family/variant.
    pub all_candidates: Vec<PathCandidate>,
    pub t_f: Option<f64>,
    /// Fastest time per family, `f64::INFINITY` when the family is empty.
    pub per_family_times: BTreeMap<Family, f64>,
    /// Maps the normalized frame back to the caller's frame.
    pub denormalizing_transform: RigidTransform,
    /// The scenario actually solved (normalized, possibly widened).
    pub normalized: Scenario,
    pub wall_time: Duration,
    /// `feas_tol` had to be widened to find a candidate.
    pub widened_feas_tol: bool,
}

impl PlanResult {
    pub fn is_feasible(&self) -> bool {
        self.best.is_some()
    }
}

/// Plans with default options.
pub fn plan(scenario: &Scenario) -> Result<PlanResult, ScenarioError> {
    plan_with(scenario, &PlanOptions::default())
}

pub fn plan_with(scenario: &Scenario, options: &PlanOptions) -> Result<PlanResult, ScenarioError> {
    let started = Instant::now();
    let (mut normalized, transform) = normalize(scenario)?;
    let mut candidates = solve_all(&normalized);
    let mut widened = false;

    if candidates.is_empty() {
        if let Some(factor) = options.widen_factor {
            let mut wide = normalized;
            wide.tolerances.feas_tol *= factor;
            candidates = solve_all(&wide);
            if !candidates.is_empty() {
                normalized = wide;
                widened = true;
            }
        }
    }

    candidates.sort_by(|a, b| {
        a.total_time
            .total_cmp(&b.total_time)
            .then(a.tag.cmp(&b.tag))
    });
    let best = pick_best(&candidates);

    let mut per_family_times: BTreeMap<Family, f64> =
        Family::ALL.iter().map(|&f| (f, f64::INFINITY)).collect();
    for c in &candidates {
        let slot = per_family_times.get_mut(&c.family()).expect("all families present");
        *slot = slot.min(c.total_time);
    }

    Ok(PlanResult {
        t_f: best.as_ref().map(|b| b.total_time),
        best,
        all_candidates: candidates,
        per_family_times,
        denormalizing_transform: transform,
        normalized,
        wall_time: started.elapsed(),
        widened_feas_tol: widened,
    })
}

/// Minimum time, ties going to the earliest family and variant.
///
/// Times coming from a double root of a family equation are only accurate
/// to about `sqrt(ε)` relative, so candidates within that of the fastest
/// count as tied.
fn pick_best(sorted: &[PathCandidate]) -> Option<PathCandidate> {
    let fastest = sorted.first()?.total_time;
    let window = TIE_EPS + f64::EPSILON.sqrt() * (1.0 + fastest);
    sorted
        .iter()
        .take_while(|c| c.total_time <= fastest + window)
        .min_by_key(|c| c.tag)
        .cloned()
}

/// One row of a sampled trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    /// Air-relative pose in the caller's frame.
    pub relative: RelativeState,
    /// Control held from this sample to the next (for the last row, the
    /// control that led into it).
    pub control: Turn,
    /// Ground position in the caller's frame.
    pub inertial: crate::geometry::Vec2,
}

/// Samples `candidate` at `0, dt, 2dt, …` up to its total time. Piece
/// boundaries are added as extra rows so the control column is exact, and
/// the last row is always at exactly the total time.
///
/// `scenario` is the caller's (un-normalized) scenario the candidate was
/// planned for.
pub fn sample(candidate: &PathCandidate, dt: f64, scenario: &Scenario) -> Vec<TrajectorySample> {
    assert!(dt > 0.0 && dt.is_finite(), "sample step must be positive");
    let (normalized, transform) = match normalize(scenario) {
        Ok(pair) => pair,
        Err(_) => (*scenario, RigidTransform::IDENTITY),
    };
    let schedule = &candidate.schedule;
    let total = schedule.total_duration();

    let mut times = Vec::new();
    let mut i = 0u64;
    loop {
        let t = i as f64 * dt;
        if t >= total {
            break;
        }
        times.push(t);
        i += 1;
    }
    let mut acc = 0.0;
    for p in schedule.pieces() {
        acc += p.duration;
        if acc < total {
            times.push(acc);
        }
    }
    let close = 1e-12 * (1.0 + total);
    times.sort_by(f64::total_cmp);
    times.dedup_by(|a, b| (*a - *b).abs() <= close);
    times.retain(|&t| t < total - close);
    times.push(total);

    // the last row keeps the control that led into it
    let final_turn = schedule
        .pieces()
        .iter()
        .rev()
        .find(|p| p.duration > 0.0)
        .map_or(Turn::Straight, |p| p.turn);
    let start = RelativeState::origin();
    times
        .into_iter()
        .map(|t| {
            let s = state_at(start, schedule, normalized.rho, t);
            let pos = transform.inverse_point(s.position());
            let theta = transform.inverse_heading(s.theta);
            TrajectorySample {
                t,
                relative: RelativeState::new(pos.x, pos.y, theta),
                control: if t < total {
                    schedule.control_at(t)
                } else {
                    final_turn
                },
                inertial: to_inertial(pos, t, scenario.wind),
            }
        })
        .collect()
}
