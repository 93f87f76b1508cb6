use std::f64::consts::{FRAC_PI_2, TAU};

use super::{certify, dedup, snap_arc, turn_of, PathCandidate, SegmentParams, Variant};
use crate::geometry::{heading_vec, left_normal, wrap_angle, Piece, Scenario, Vec2};
use crate::rootfind::{solve_envelope, solve_sinusoid, EnvelopeCoeffs, RootSet, SinusoidCoeffs};

/// Equation in the straight-piece heading `β` whose roots give `CSC`
/// candidates. Same-direction words (`RSR`, `LSL`) reduce to a pure
/// sinusoid; opposite-direction words pick up `β`-weighted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CscEquation {
    Sinusoid(SinusoidCoeffs),
    Envelope(EnvelopeCoeffs),
}

impl CscEquation {
    pub fn eval(&self, beta: f64) -> f64 {
        match self {
            CscEquation::Sinusoid(c) => c.eval(beta),
            CscEquation::Envelope(c) => c.eval(beta),
        }
    }

    pub fn magnitude(&self) -> f64 {
        match self {
            CscEquation::Sinusoid(c) => c.magnitude(),
            CscEquation::Envelope(c) => c.magnitude(),
        }
    }

    fn roots(&self, scenario: &Scenario) -> RootSet {
        match self {
            CscEquation::Sinusoid(c) => solve_sinusoid(c, &scenario.tolerances),
            CscEquation::Envelope(c) => solve_envelope(c, &scenario.tolerances),
        }
    }
}

fn variant_for(sigma: i8, kappa: i8) -> Variant {
    match (sigma < 0, kappa < 0) {
        (true, true) => Variant::RSR,
        (true, false) => Variant::RSL,
        (false, true) => Variant::LSR,
        (false, false) => Variant::LSL,
    }
}

/// Pieces of the equation that do not depend on `β`.
struct Layout {
    /// `T0 - c0 + κρ n(θ_f)`.
    base: Vec2,
    /// `α + γ` at `β = 0`, including `k` whole turns.
    arc_sum0: f64,
    /// `d(α + γ)/dβ = σ - κ`.
    arc_slope: f64,
}

fn layout(scenario: &Scenario, sigma: i8, kappa: i8, k: i32) -> Layout {
    let rho = scenario.rho;
    let (s, q) = (f64::from(sigma), f64::from(kappa));
    let c0 = Vec2::new(-s * rho, 0.0);
    Layout {
        base: scenario.target - c0 + left_normal(scenario.theta_f) * (q * rho),
        arc_sum0: q * scenario.theta_f - s * FRAC_PI_2 + TAU * f64::from(k),
        arc_slope: s - q,
    }
}

/// Colinearity equation of the `CSC` word with first turn `sigma`, last
/// turn `kappa` and `k` whole turns folded into the two arcs.
///
/// The straight piece of length `d` along `e(β)` must cover the gap left
/// by the two arcs and the drift, so that gap is parallel to `e(β) + w`.
pub fn csc_coefficients(scenario: &Scenario, sigma: i8, kappa: i8, k: i32) -> CscEquation {
    let rho = scenario.rho;
    let (s, q) = (f64::from(sigma), f64::from(kappa));
    let (wx, wy) = (scenario.wind.wx, scenario.wind.wy);
    let Layout {
        base: b,
        arc_sum0,
        arc_slope,
    } = layout(scenario, sigma, kappa, k);

    let g1 = (q - s) * rho - (wx * b.y - wy * b.x);
    let g2 = b.x - rho * arc_sum0 * wx + (q - s) * rho * wy;
    let g3 = -b.y + rho * arc_sum0 * wy + (q - s) * rho * wx;
    if sigma == kappa {
        CscEquation::Sinusoid(SinusoidCoeffs::new(g1, g2, g3))
    } else {
        CscEquation::Envelope(EnvelopeCoeffs::new(
            g1,
            g2,
            g3,
            -rho * arc_slope * wx,
            rho * arc_slope * wy,
        ))
    }
}

/// Builds the candidate for one straight-piece heading, if the arcs and the
/// straight length come out admissible.
fn candidate_at(
    scenario: &Scenario,
    sigma: i8,
    kappa: i8,
    k: i32,
    beta: f64,
    alpha: f64,
) -> Option<PathCandidate> {
    let tol = &scenario.tolerances;
    let rho = scenario.rho;
    let w = scenario.wind.as_vec();
    let lay = layout(scenario, sigma, kappa, k);
    let alpha = snap_arc(alpha, tol.feas_tol)?;
    let gamma = snap_arc(lay.arc_sum0 + lay.arc_slope * beta - alpha, tol.feas_tol)?;

    let gap = lay.base
        - w * (rho * (alpha + gamma))
        - left_normal(beta) * (f64::from(kappa - sigma) * rho);
    let ground = heading_vec(beta) + w;
    let d = gap.dot(ground) / ground.norm_sq();
    if !d.is_finite() || d < -tol.feas_tol {
        return None;
    }
    let d = d.max(0.0);

    let params = SegmentParams {
        alpha,
        beta,
        gamma,
        d,
        n: k,
        sigma,
        kappa,
    };
    certify(
        scenario,
        variant_for(sigma, kappa),
        params,
        vec![
            Piece::new(turn_of(sigma), rho * alpha),
            Piece::new(crate::geometry::Turn::Straight, d),
            Piece::new(turn_of(kappa), rho * gamma),
        ],
    )
}

/// `RSR`, `RSL`, `LSR`, `LSL` paths.
pub fn solve_csc(scenario: &Scenario) -> Vec<PathCandidate> {
    let tol = &scenario.tolerances;
    let mut out = Vec::new();

    for (sigma, kappa) in [(-1i8, -1i8), (-1, 1), (1, -1), (1, 1)] {
        let s = f64::from(sigma);
        for k in 0..=2 {
            let eq = csc_coefficients(scenario, sigma, kappa, k);
            if eq.magnitude() <= tol.feas_tol {
                // every heading is colinear (calm air, shared circle): try the
                // split points of the fixed total turn directly
                let total = layout(scenario, sigma, kappa, k).arc_sum0;
                for alpha in [0.0, total / 2.0, total] {
                    let beta = wrap_angle(FRAC_PI_2 + s * alpha);
                    out.extend(candidate_at(scenario, sigma, kappa, k, beta, alpha));
                }
                continue;
            }
            for root in eq.roots(scenario).iter() {
                let beta = root.value;
                let alpha = wrap_angle(s * (beta - FRAC_PI_2));
                out.extend(candidate_at(scenario, sigma, kappa, k, beta, alpha));
                if alpha > TAU - tol.feas_tol {
                    out.extend(candidate_at(scenario, sigma, kappa, k, beta, 0.0));
                }
            }
        }
    }
    dedup(out)
}
