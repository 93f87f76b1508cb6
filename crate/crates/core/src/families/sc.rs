use std::f64::consts::{FRAC_PI_2, TAU};

use super::{certify, PathCandidate, SegmentParams, Variant};
use crate::geometry::{angle_diff, Piece, Scenario, Turn};

/// Straight length `d = (Y_T0 - 2πρ w_y) / (1 + w_y)` of an `SC2π` path.
pub fn sc_straight_length(scenario: &Scenario) -> f64 {
    let w = scenario.wind;
    (scenario.target.y - TAU * scenario.rho * w.wy) / (1.0 + w.wy)
}

/// `SR2π` / `SL2π`: fly straight for `d`, then loiter one full circle.
///
/// The circle brings the vehicle back to `(0, d)` heading north, so the
/// path exists only when `θ_f = π/2` and the target drifts onto that point
/// exactly at `t = d + 2πρ`. Both orientations share the same endpoint and
/// time, so both are emitted together.
pub fn solve_sc(scenario: &Scenario) -> Vec<PathCandidate> {
    let tol = &scenario.tolerances;
    let (w, target, rho) = (scenario.wind, scenario.target, scenario.rho);

    if angle_diff(scenario.theta_f, FRAC_PI_2).abs() > tol.feas_tol {
        return Vec::new();
    }
    let d = sc_straight_length(scenario);
    if !d.is_finite() || d < -tol.feas_tol {
        return Vec::new();
    }
    let d = d.max(0.0);
    let t = d + TAU * rho;

    // -w_y (x_f - X_T0) = -w_x (y_f - Y_T0) with (x_f, y_f) = (0, d)
    let colinear = w.wy * target.x - w.wx * (target.y - d);
    // and the drift must put the target there, not merely on the same line
    let lateral = target.x - t * w.wx;
    if colinear.abs() > tol.feas_tol || lateral.abs() > tol.feas_tol {
        return Vec::new();
    }

    [(Variant::SR2pi, -1i8), (Variant::SL2pi, 1i8)]
        .into_iter()
        .filter_map(|(variant, sigma)| {
            let circle = if sigma < 0 { Turn::Right } else { Turn::Left };
            let params = SegmentParams {
                d,
                sigma,
                ..Default::default()
            };
            certify(
                scenario,
                variant,
                params,
                vec![
                    Piece::new(Turn::Straight, d),
                    Piece::new(circle, TAU * rho),
                ],
            )
        })
        .collect()
}
