use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::{certify, dedup, snap_arc, turn_of, PathCandidate, SegmentParams, Variant};
use crate::geometry::{left_normal, wrap_angle, Piece, Scenario, Vec2};
use crate::rootfind::{solve_quadcos, QuadCosCoeffs};

/// Whole-turn offsets tried for the heading bookkeeping.
const TURN_WINDOW: std::ops::RangeInclusive<i32> = -2..=2;

/// Net signed turning `α - β + γ` (in the first-turn sense) for offset `n`.
fn net_turn(scenario: &Scenario, sigma: i8, n: i32) -> f64 {
    f64::from(sigma) * (scenario.theta_f - FRAC_PI_2) + TAU * f64::from(n)
}

/// Chord vector between the first and last circle centres with the
/// `β`-independent part of the drift removed.
fn chord_base(scenario: &Scenario, sigma: i8, n: i32) -> Vec2 {
    let rho = scenario.rho;
    let s = f64::from(sigma);
    let w = scenario.wind.as_vec();
    let c0 = Vec2::new(-s * rho, 0.0);
    scenario.target - w * (rho * net_turn(scenario, sigma, n)) - c0
        + left_normal(scenario.theta_f) * (s * rho)
}

/// Middle-arc equation `c1 β² + c2 β + c3 cos β + c4 = 0` of the `CCC` path
/// turning `sigma` first, for whole-turn offset `n`.
///
/// The first and last circles have centres `4ρ sin(β/2)` apart; the drift
/// over the flight time `ρ(K + 2β)` enters linearly in `β`, and squaring
/// gives the quadratic-plus-cosine form.
pub fn ccc_coefficients(scenario: &Scenario, sigma: i8, n: i32) -> QuadCosCoeffs {
    let rho = scenario.rho;
    let w = scenario.wind.as_vec();
    let v0 = chord_base(scenario, sigma, n);
    QuadCosCoeffs::new(
        4.0 * rho * rho * w.norm_sq(),
        -4.0 * rho * v0.dot(w),
        8.0 * rho * rho,
        v0.norm_sq() - 8.0 * rho * rho,
    )
}

fn variant_for(sigma: i8, beta: f64) -> Variant {
    match (sigma < 0, beta < PI) {
        (true, true) => Variant::RLRShort,
        (true, false) => Variant::RLRLong,
        (false, true) => Variant::LRLShort,
        (false, false) => Variant::LRLLong,
    }
}

/// `RLR` / `LRL` paths.
pub fn solve_ccc(scenario: &Scenario) -> Vec<PathCandidate> {
    let tol = &scenario.tolerances;
    let rho = scenario.rho;
    let w = scenario.wind.as_vec();
    let mut out = Vec::new();

    for sigma in [-1i8, 1i8] {
        let s = f64::from(sigma);
        for n in TURN_WINDOW {
            let k = net_turn(scenario, sigma, n);
            let coeffs = ccc_coefficients(scenario, sigma, n);
            if !coeffs.is_finite() {
                continue;
            }
            let v0 = chord_base(scenario, sigma, n);
            for root in solve_quadcos(&coeffs, tol).iter() {
                let beta = root.value;
                let half = (beta / 2.0).sin();
                if half <= tol.zero_angle_eps {
                    continue;
                }
                let chord = v0 - w * (2.0 * rho * beta);
                let arg = chord.x / (4.0 * rho * half);
                if arg.abs() > 1.0 + tol.feas_tol {
                    continue;
                }
                let phi = arg.clamp(-1.0, 1.0).acos();
                for branch in [phi, -phi] {
                    let raw = wrap_angle(s * (branch - FRAC_PI_2) + beta / 2.0);
                    let mut alphas = vec![raw];
                    if raw > TAU - tol.feas_tol {
                        alphas.push(0.0);
                    }
                    for alpha in alphas {
                        let Some(gamma) = snap_arc(k + beta - alpha, tol.feas_tol) else {
                            continue;
                        };
                        let params = SegmentParams {
                            alpha,
                            beta,
                            gamma,
                            n,
                            sigma,
                            ..Default::default()
                        };
                        out.extend(certify(
                            scenario,
                            variant_for(sigma, beta),
                            params,
                            vec![
                                Piece::new(turn_of(sigma), rho * alpha),
                                Piece::new(turn_of(-sigma), rho * beta),
                                Piece::new(turn_of(sigma), rho * gamma),
                            ],
                        ));
                    }
                }
            }
        }
    }
    dedup(out)
}
