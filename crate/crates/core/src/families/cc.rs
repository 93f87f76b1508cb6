use std::f64::consts::{FRAC_PI_2, TAU};

use super::{certify, dedup, snap_arc, turn_of, PathCandidate, SegmentParams, Variant};
use crate::geometry::{angle_diff, left_normal, wrap_angle, Piece, Scenario, Vec2};

/// Quadratic `a1 α² + a2 α + a3 = 0` whose roots are the candidate first
/// arcs of the `CC2π` path turning `sigma` first (`-1` for `RL2π`, `+1` for
/// `LR2π`).
///
/// After the first arc the full opposite circle returns to the same point,
/// so the endpoint lies on the first turning circle at distance `ρ` from
/// its centre `c0`. Squaring that distance condition against the drifting
/// target gives the quadratic.
pub fn cc_coefficients(scenario: &Scenario, sigma: i8) -> [f64; 3] {
    let rho = scenario.rho;
    let w = scenario.wind.as_vec();
    let d = offset(scenario, sigma);
    [
        rho * rho * w.norm_sq(),
        -2.0 * rho * d.dot(w),
        d.norm_sq() - rho * rho,
    ]
}

fn first_centre(rho: f64, sigma: i8) -> Vec2 {
    Vec2::new(-f64::from(sigma) * rho, 0.0)
}

fn offset(scenario: &Scenario, sigma: i8) -> Vec2 {
    let rho = scenario.rho;
    scenario.target - first_centre(rho, sigma) - scenario.wind.as_vec() * (TAU * rho)
}

/// Real roots of `a1 x² + a2 x + a3`, with a slightly negative
/// discriminant treated as a double root.
fn quadratic_roots(a: [f64; 3], tol: f64) -> Vec<f64> {
    let [a1, a2, a3] = a;
    let scale = a.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
    if a1.abs() <= 1e-14 * scale {
        if a2.abs() <= 1e-14 * scale {
            return Vec::new();
        }
        return vec![-a3 / a2];
    }
    let disc = a2 * a2 - 4.0 * a1 * a3;
    if disc < 0.0 {
        if disc >= -tol * scale * scale {
            return vec![-a2 / (2.0 * a1)];
        }
        return Vec::new();
    }
    // the stable pairing avoids cancellation in the smaller root
    let q = -0.5 * (a2 + a2.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a1, a3 / q]
}

/// `RL2π` / `LR2π`: turn `α`, then one full circle the other way.
pub fn solve_cc(scenario: &Scenario) -> Vec<PathCandidate> {
    let tol = &scenario.tolerances;
    let rho = scenario.rho;
    let mut out = Vec::new();

    for (variant, sigma) in [(Variant::RL2pi, -1i8), (Variant::LR2pi, 1i8)] {
        let s = f64::from(sigma);
        let coeffs = cc_coefficients(scenario, sigma);
        let calm = coeffs[0].abs() <= 1e-14 && coeffs[1].abs() <= 1e-14;

        let alphas: Vec<f64> = if calm {
            // the distance condition no longer involves α: the heading alone
            // fixes the arc
            if coeffs[2].abs() > tol.feas_tol * (1.0 + rho * rho) {
                continue;
            }
            vec![wrap_angle(s * (scenario.theta_f - FRAC_PI_2))]
        } else {
            let mut roots = quadratic_roots(coeffs, tol.feas_tol);
            // near-calm air makes the quadratic ill-conditioned; the arc the
            // heading demands is tried as well and the checks below decide
            roots.push(wrap_angle(s * (scenario.theta_f - FRAC_PI_2)));
            roots
        };

        for alpha in alphas {
            let Some(alpha) = snap_arc(alpha, tol.feas_tol) else {
                continue;
            };
            let miss = angle_diff(scenario.theta_f, FRAC_PI_2 + s * alpha);
            if miss.abs() > tol.feas_tol {
                continue;
            }
            // land on the demanded heading exactly
            let Some(alpha) = snap_arc(alpha + s * miss, tol.feas_tol) else {
                continue;
            };
            let heading = FRAC_PI_2 + s * alpha;
            let end = first_centre(rho, sigma) - left_normal(heading) * (s * rho);
            let goal = scenario.target_relative(rho * (alpha + TAU));
            if (end - goal).norm() > tol.feas_tol * (1.0 + rho * (alpha + TAU)) {
                continue;
            }
            let params = SegmentParams {
                alpha,
                sigma,
                ..Default::default()
            };
            out.extend(certify(
                scenario,
                variant,
                params,
                vec![
                    Piece::new(turn_of(sigma), rho * alpha),
                    Piece::new(turn_of(-sigma), TAU * rho),
                ],
            ));
        }
    }
    dedup(out)
}
