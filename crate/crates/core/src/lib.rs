//! Minimum-time paths for a constant-speed, bounded-curvature vehicle flying
//! in steady wind.
//!
//! The problem is solved in the air-relative frame, where it becomes the
//! interception of a target drifting at `-wind` by a wind-free Dubins
//! vehicle. Optimal paths belong to four families of at most three pieces
//! (`SC2π`, `CC2π`, `CCC`, `CSC`, plus degenerate subpatterns); each family is
//! solved in closed form up to isolating every real root of one scalar
//! equation on `[0, 2π)`, and the fastest feasible candidate wins.
//!
//! ```
//! use dubwind::{plan, Scenario, Vec2, WindVector};
//!
//! let scenario = Scenario::new(WindVector::CALM, Vec2::new(0.0, 10.0), std::f64::consts::FRAC_PI_2, 1.0);
//! let result = plan(&scenario).unwrap();
//! assert!((result.t_f.unwrap() - 10.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod families;
pub mod geometry;
pub mod oracle;
pub mod planner;
pub mod rootfind;

pub use error::ScenarioError;
pub use families::{Family, FamilyTag, PathCandidate, SegmentParams, Variant};
pub use geometry::{
    integrate, normalize, target_relative, to_inertial, ControlSchedule, Piece, Pose,
    RelativeState, RigidTransform, Scenario, ToleranceSet, Turn, Vec2, WindVector,
};
pub use planner::{plan, plan_with, sample, validate, PlanOptions, PlanResult, ResidualReport, TrajectorySample};
