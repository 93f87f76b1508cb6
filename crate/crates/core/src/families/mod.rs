//! The four candidate path families.
//!
//! Every time-optimal path is, up to degenerate pieces, one of
//!
//! | family | words | control |
//! |--------|-------|---------|
//! | `SC2π` | `SR2π`, `SL2π` | straight, then one full turn |
//! | `CC2π` | `RL2π`, `LR2π` | turn `α`, then one full opposite turn |
//! | `CCC`  | `RLR`, `LRL` (middle arc shorter / longer than π) | three alternating turns |
//! | `CSC`  | `RSR`, `RSL`, `LSR`, `LSL` | turn, straight, turn |
//!
//! Each solver returns every candidate it can certify, already checked by
//! exact forward integration against the moving target.

mod cc;
mod ccc;
mod csc;
mod sc;

use std::fmt;

use crate::geometry::{ControlSchedule, Piece, Scenario, Turn};
use crate::planner::validate;

pub use cc::{cc_coefficients, solve_cc};
pub use ccc::{ccc_coefficients, solve_ccc};
pub use csc::{csc_coefficients, solve_csc, CscEquation};
pub use sc::{sc_straight_length, solve_sc};

/// Path family, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SC,
    CC,
    CCC,
    CSC,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::SC, Family::CC, Family::CCC, Family::CSC];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::SC => "SC",
            Family::CC => "CC",
            Family::CCC => "CCC",
            Family::CSC => "CSC",
        };
        f.write_str(s)
    }
}

/// Concrete word of a family. `Short`/`Long` refer to the middle arc of a
/// `CCC` path being below or above π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    SR2pi,
    SL2pi,
    RL2pi,
    LR2pi,
    RLRShort,
    RLRLong,
    LRLShort,
    LRLLong,
    RSR,
    RSL,
    LSR,
    LSL,
}

impl Variant {
    pub const ALL: [Variant; 12] = [
        Variant::SR2pi,
        Variant::SL2pi,
        Variant::RL2pi,
        Variant::LR2pi,
        Variant::RLRShort,
        Variant::RLRLong,
        Variant::LRLShort,
        Variant::LRLLong,
        Variant::RSR,
        Variant::RSL,
        Variant::LSR,
        Variant::LSL,
    ];

    pub fn family(self) -> Family {
        use Variant::*;
        match self {
            SR2pi | SL2pi => Family::SC,
            RL2pi | LR2pi => Family::CC,
            RLRShort | RLRLong | LRLShort | LRLLong => Family::CCC,
            RSR | RSL | LSR | LSL => Family::CSC,
        }
    }

    /// The word obtained by reflecting the plane across the `y` axis.
    pub fn mirrored(self) -> Variant {
        use Variant::*;
        match self {
            SR2pi => SL2pi,
            SL2pi => SR2pi,
            RL2pi => LR2pi,
            LR2pi => RL2pi,
            RLRShort => LRLShort,
            LRLShort => RLRShort,
            RLRLong => LRLLong,
            LRLLong => RLRLong,
            RSR => LSL,
            LSL => RSR,
            RSL => LSR,
            LSR => RSL,
        }
    }

    pub fn name(self) -> &'static str {
        use Variant::*;
        match self {
            SR2pi => "SR2pi",
            SL2pi => "SL2pi",
            RL2pi => "RL2pi",
            LR2pi => "LR2pi",
            RLRShort => "RL<piR",
            RLRLong => "RL>piR",
            LRLShort => "LR<piL",
            LRLLong => "LR>piL",
            RSR => "RSR",
            RSL => "RSL",
            LSR => "LSR",
            LSL => "LSL",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyTag {
    pub family: Family,
    pub variant: Variant,
}

impl From<Variant> for FamilyTag {
    fn from(variant: Variant) -> Self {
        Self {
            family: variant.family(),
            variant,
        }
    }
}

/// Geometric parameters of a candidate. Fields a variant does not use are
/// zero; the full turn of `SC2π`/`CC2π` is implied by the variant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SegmentParams {
    /// First arc, radians.
    pub alpha: f64,
    /// Middle arc for `CCC`; heading of the straight piece for `CSC`.
    pub beta: f64,
    /// Last arc, radians.
    pub gamma: f64,
    /// Straight-piece length (`SC`, `CSC`).
    pub d: f64,
    /// Number of whole turns absorbed by the heading/time bookkeeping.
    pub n: i32,
    /// Direction of the first turn, `-1` right / `+1` left (0 if unused).
    pub sigma: i8,
    /// Direction of the last turn for `CSC` (0 if unused).
    pub kappa: i8,
}

/// One feasible path.
#[derive(Debug, Clone, PartialEq)]
pub struct PathCandidate {
    pub tag: FamilyTag,
    pub params: SegmentParams,
    /// Exactly the sum of the schedule durations.
    pub total_time: f64,
    pub schedule: ControlSchedule,
    /// Terminal position residual found by validation.
    pub residual: f64,
}

impl PathCandidate {
    pub fn variant(&self) -> Variant {
        self.tag.variant
    }

    pub fn family(&self) -> Family {
        self.tag.family
    }
}

pub(crate) fn turn_of(sign: i8) -> Turn {
    if sign < 0 {
        Turn::Right
    } else {
        Turn::Left
    }
}

/// Accepts an arc angle in `[-eps, 2π)`, clamping tiny negatives to zero.
pub(crate) fn snap_arc(angle: f64, eps: f64) -> Option<f64> {
    if !angle.is_finite() || angle < -eps || angle >= std::f64::consts::TAU {
        return None;
    }
    Some(angle.max(0.0))
}

/// Builds the candidate and keeps it only if exact integration lands on the
/// moving target.
pub(crate) fn certify(
    scenario: &Scenario,
    variant: Variant,
    params: SegmentParams,
    pieces: Vec<Piece>,
) -> Option<PathCandidate> {
    let schedule = ControlSchedule::new(pieces);
    let mut candidate = PathCandidate {
        tag: variant.into(),
        params,
        total_time: schedule.total_duration(),
        schedule,
        residual: f64::NAN,
    };
    let report = validate(&candidate, scenario);
    candidate.residual = report.position_error;
    report.feasible.then_some(candidate)
}

/// Drops candidates that repeat an earlier one of the same variant.
pub(crate) fn dedup(mut found: Vec<PathCandidate>) -> Vec<PathCandidate> {
    let mut out: Vec<PathCandidate> = Vec::with_capacity(found.len());
    found.sort_by(|a, b| {
        a.tag
            .cmp(&b.tag)
            .then(a.total_time.total_cmp(&b.total_time))
    });
    for c in found {
        let dup = out.iter().any(|o| {
            o.tag == c.tag
                && (o.total_time - c.total_time).abs() <= 1e-9
                && (o.params.alpha - c.params.alpha).abs() <= 1e-9
                && (o.params.gamma - c.params.gamma).abs() <= 1e-9
        });
        if !dup {
            out.push(c);
        }
    }
    out
}

/// Runs all four solvers on a normalized scenario.
pub fn solve_all(scenario: &Scenario) -> Vec<PathCandidate> {
    let mut all = solve_sc(scenario);
    all.extend(solve_cc(scenario));
    all.extend(solve_ccc(scenario));
    all.extend(solve_csc(scenario));
    dedup(all)
}
