//! Frames, kinematic state and exact propagation of piecewise-constant turn
//! commands.
//!
//! All planning happens in the air-relative frame: a frame that translates
//! with the wind. There the vehicle obeys the wind-free kinematics
//!
//! ```text
//! x' = cos θ,   y' = sin θ,   θ' = u / ρ,   u ∈ {-1, 0, +1}
//! ```
//!
//! and the goal becomes a point moving with velocity `-wind`. The inertial
//! position of the vehicle is recovered as `relative + t * wind`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::ScenarioError;

/// Heading of the vehicle at `t = 0` in the normalized frame.
pub const START_HEADING: f64 = FRAC_PI_2;

/// Wraps an angle into `[0, 2π)`.
///
/// `rem_euclid` can round up to exactly `2π` for tiny negative inputs; that
/// case is folded back to zero.
#[inline]
pub fn wrap_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed angular difference `a - b` folded into `(-π, π]`.
#[inline]
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Unit vector along heading `h`.
#[inline]
pub(crate) fn heading_vec(h: f64) -> Vec2 {
    Vec2::new(h.cos(), h.sin())
}

/// Left normal of heading `h`: the unit vector from the vehicle towards the
/// centre of a counterclockwise turn.
#[inline]
pub(crate) fn left_normal(h: f64) -> Vec2 {
    Vec2::new(-h.sin(), h.cos())
}

/// Plain 2-vector used for positions, displacements and the wind.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Counterclockwise rotation by `angle`.
    #[inline]
    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Air-relative pose of the vehicle. `theta` is always kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeState {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl RelativeState {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: wrap_angle(theta),
        }
    }

    /// The fixed initial state of every normalized problem.
    pub fn origin() -> Self {
        Self::new(0.0, 0.0, START_HEADING)
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// Steady wind, in units of the vehicle airspeed.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WindVector {
    pub wx: f64,
    pub wy: f64,
}

impl WindVector {
    pub const CALM: WindVector = WindVector { wx: 0.0, wy: 0.0 };

    /// Checked constructor: the wind must be strictly slower than the vehicle.
    pub fn new(wx: f64, wy: f64) -> Result<Self, ScenarioError> {
        let w = Self { wx, wy };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.wx.is_finite() && self.wy.is_finite()) {
            return Err(ScenarioError::NonFinite("wind"));
        }
        let speed_sq = self.speed_sq();
        if speed_sq >= 1.0 {
            return Err(ScenarioError::WindTooStrong {
                speed: speed_sq.sqrt(),
            });
        }
        Ok(())
    }

    pub fn as_vec(&self) -> Vec2 {
        Vec2::new(self.wx, self.wy)
    }

    pub fn speed_sq(&self) -> f64 {
        self.wx * self.wx + self.wy * self.wy
    }

    pub fn speed(&self) -> f64 {
        self.wx.hypot(self.wy)
    }
}

/// Tolerances used throughout planning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSet {
    /// Slack on the measure-zero feasibility equalities (heading matches,
    /// wind consistency of the loitering families, tangential roots).
    pub feas_tol: f64,
    /// Terminal position residual, scaled by `1 + t_f` when checked.
    pub residual_tol: f64,
    /// Maximum bracket width reported for an isolated root.
    pub root_tol: f64,
    /// Arcs shorter than this (radians) are treated as degenerate.
    pub zero_angle_eps: f64,
}

impl Default for ToleranceSet {
    fn default() -> Self {
        Self {
            feas_tol: 1e-6,
            residual_tol: 1e-6,
            root_tol: 1e-10,
            zero_angle_eps: 1e-8,
        }
    }
}

impl ToleranceSet {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let all = [
            ("feas_tol", self.feas_tol),
            ("residual_tol", self.residual_tol),
            ("root_tol", self.root_tol),
            ("zero_angle_eps", self.zero_angle_eps),
        ];
        for (name, v) in all {
            if !(v.is_finite() && v > 0.0) {
                return Err(ScenarioError::NonPositiveTolerance(name));
            }
        }
        Ok(())
    }
}

/// Inertial pose: position and heading (radians, counterclockwise from east).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, heading: f64) -> Self {
        Self { x, y, heading }
    }
}

impl Default for Pose {
    fn default() -> Self {
        Self::new(0.0, 0.0, START_HEADING)
    }
}

/// One planning problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub wind: WindVector,
    /// Inertial goal position `(X_T0, Y_T0)`.
    pub target: Vec2,
    /// Required final heading, radians in `[0, 2π)`.
    pub theta_f: f64,
    /// Minimum turning radius.
    pub rho: f64,
    pub start: Pose,
    pub tolerances: ToleranceSet,
}

impl Scenario {
    /// Scenario with the canonical start `(0, 0, π/2)` and default tolerances.
    pub fn new(wind: WindVector, target: Vec2, theta_f: f64, rho: f64) -> Self {
        Self {
            wind,
            target,
            theta_f: wrap_angle(theta_f),
            rho,
            start: Pose::default(),
            tolerances: ToleranceSet::default(),
        }
    }

    pub fn with_start(mut self, start: Pose) -> Self {
        self.start = start;
        self
    }

    pub fn with_tolerances(mut self, tolerances: ToleranceSet) -> Self {
        self.tolerances = tolerances;
        self
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.wind.validate()?;
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(ScenarioError::NonPositiveRho(self.rho));
        }
        let finite = [
            self.target.x,
            self.target.y,
            self.theta_f,
            self.start.x,
            self.start.y,
            self.start.heading,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(ScenarioError::NonFinite("scenario geometry"));
        }
        self.tolerances.validate()
    }

    /// True when the start is exactly the canonical `(0, 0, π/2)`.
    pub fn is_normalized(&self) -> bool {
        self.start == Pose::default()
    }

    /// Where the moving goal sits in the air-relative frame at time `t`.
    pub fn target_relative(&self, t: f64) -> Vec2 {
        self.target - self.wind.as_vec() * t
    }
}

/// Free function form of [`Scenario::target_relative`].
pub fn target_relative(scenario: &Scenario, t: f64) -> Vec2 {
    scenario.target_relative(t)
}

/// Rigid motion of the plane: `p' = R(rotation) (p - translation)`.
///
/// [`normalize`] returns the transform taking the caller's inertial frame to
/// the normalized one; [`RigidTransform::inverse_point`] maps planned
/// geometry back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    pub rotation: f64,
    pub translation: Vec2,
}

impl RigidTransform {
    pub const IDENTITY: RigidTransform = RigidTransform {
        rotation: 0.0,
        translation: Vec2::ZERO,
    };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn apply_point(&self, p: Vec2) -> Vec2 {
        (p - self.translation).rotated(self.rotation)
    }

    pub fn apply_vector(&self, v: Vec2) -> Vec2 {
        v.rotated(self.rotation)
    }

    pub fn apply_heading(&self, h: f64) -> f64 {
        wrap_angle(h + self.rotation)
    }

    pub fn inverse_point(&self, p: Vec2) -> Vec2 {
        p.rotated(-self.rotation) + self.translation
    }

    pub fn inverse_vector(&self, v: Vec2) -> Vec2 {
        v.rotated(-self.rotation)
    }

    pub fn inverse_heading(&self, h: f64) -> f64 {
        wrap_angle(h - self.rotation)
    }
}

/// Re-expresses `scenario` so the vehicle starts at `(0, 0, π/2)`.
///
/// Goal position and wind are translated/rotated with the start pose; the
/// returned transform maps original coordinates to normalized ones.
pub fn normalize(scenario: &Scenario) -> Result<(Scenario, RigidTransform), ScenarioError> {
    scenario.validate()?;
    if scenario.is_normalized() {
        return Ok((*scenario, RigidTransform::IDENTITY));
    }
    let tf = RigidTransform {
        rotation: START_HEADING - scenario.start.heading,
        translation: Vec2::new(scenario.start.x, scenario.start.y),
    };
    let w = tf.apply_vector(scenario.wind.as_vec());
    let normalized = Scenario {
        wind: WindVector { wx: w.x, wy: w.y },
        target: tf.apply_point(scenario.target),
        theta_f: tf.apply_heading(scenario.theta_f),
        rho: scenario.rho,
        start: Pose::default(),
        tolerances: scenario.tolerances,
    };
    Ok((normalized, tf))
}

/// Turn command of one piece: clockwise, straight or counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Turn {
    Right,
    Straight,
    Left,
}

impl Turn {
    /// Control value `u`: `-1` for a right (clockwise) turn, `+1` for left.
    pub fn control(self) -> i8 {
        match self {
            Turn::Right => -1,
            Turn::Straight => 0,
            Turn::Left => 1,
        }
    }

    pub fn from_control(u: i8) -> Option<Turn> {
        match u {
            -1 => Some(Turn::Right),
            0 => Some(Turn::Straight),
            1 => Some(Turn::Left),
            _ => None,
        }
    }

    pub fn mirrored(self) -> Turn {
        match self {
            Turn::Right => Turn::Left,
            Turn::Straight => Turn::Straight,
            Turn::Left => Turn::Right,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Turn::Right => 'R',
            Turn::Straight => 'S',
            Turn::Left => 'L',
        }
    }
}

/// One constant-control piece of a schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub turn: Turn,
    pub duration: f64,
}

impl Piece {
    pub fn new(turn: Turn, duration: f64) -> Self {
        Self { turn, duration }
    }
}

/// Piecewise-constant control `u(t)` with at most three pieces.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ControlSchedule {
    pieces: Vec<Piece>,
}

impl ControlSchedule {
    pub const MAX_PIECES: usize = 3;

    /// Panics if a duration is negative or non-finite, or if more than
    /// [`Self::MAX_PIECES`] pieces are given.
    pub fn new(pieces: Vec<Piece>) -> Self {
        assert!(
            pieces.len() <= Self::MAX_PIECES,
            "schedule has {} pieces",
            pieces.len()
        );
        for p in &pieces {
            assert!(
                p.duration.is_finite() && p.duration >= 0.0,
                "invalid piece duration {}",
                p.duration
            );
        }
        Self { pieces }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Sum of the piece durations, accumulated left to right.
    pub fn total_duration(&self) -> f64 {
        self.pieces.iter().map(|p| p.duration).sum()
    }

    /// Control active at time `t`; the last piece owns the final instant.
    pub fn control_at(&self, t: f64) -> Turn {
        let mut acc = 0.0;
        for p in &self.pieces {
            acc += p.duration;
            if t < acc {
                return p.turn;
            }
        }
        self.pieces.last().map_or(Turn::Straight, |p| p.turn)
    }
}

/// Exact endpoint of a single constant-control piece.
pub fn propagate(state: RelativeState, turn: Turn, duration: f64, rho: f64) -> RelativeState {
    match turn {
        Turn::Straight => RelativeState::new(
            state.x + duration * state.theta.cos(),
            state.y + duration * state.theta.sin(),
            state.theta,
        ),
        Turn::Left | Turn::Right => {
            let u = f64::from(turn.control());
            let centre = state.position() + left_normal(state.theta) * (u * rho);
            let theta = state.theta + u * duration / rho;
            let p = centre - left_normal(theta) * (u * rho);
            RelativeState::new(p.x, p.y, theta)
        }
    }
}

/// Closed-form endpoint of `schedule` flown from `start`.
pub fn integrate(start: RelativeState, schedule: &ControlSchedule, rho: f64) -> RelativeState {
    schedule
        .pieces()
        .iter()
        .fold(start, |s, p| propagate(s, p.turn, p.duration, rho))
}

/// Pose after flying `schedule` for `t` time units (clamped to its length).
pub fn state_at(start: RelativeState, schedule: &ControlSchedule, rho: f64, t: f64) -> RelativeState {
    let mut s = start;
    let mut remaining = t.max(0.0);
    for p in schedule.pieces() {
        if remaining <= 0.0 {
            break;
        }
        let dt = p.duration.min(remaining);
        s = propagate(s, p.turn, dt, rho);
        remaining -= dt;
    }
    s
}

/// Inertial position of a relative position at time `t`: the air-relative
/// origin has drifted by `t * wind`.
pub fn to_inertial(rel: Vec2, t: f64, wind: WindVector) -> Vec2 {
    rel + wind.as_vec() * t
}
