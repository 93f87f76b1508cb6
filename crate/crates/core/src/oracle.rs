//! Independent reference computations used to check the planner: a fixed
//! step RK4 integrator, an exhaustive parameter search over every path
//! shape, the classical calm-air Dubins solution and a dense-grid root
//! scanner.
//!
//! Nothing here shares code with the family solvers beyond the scenario
//! and schedule types.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use rayon::prelude::*;

use crate::geometry::{ControlSchedule, Pose, RelativeState, Scenario, Vec2};

/// Fixed-step fourth-order Runge–Kutta integration of the unit-speed
/// kinematics. Each piece is integrated separately so the control is
/// constant within every step.
pub fn rk4_integrate(
    start: RelativeState,
    schedule: &ControlSchedule,
    rho: f64,
    step: f64,
) -> RelativeState {
    assert!(step > 0.0, "step must be positive");
    let (mut x, mut y, mut th) = (start.x, start.y, start.theta);
    for piece in schedule.pieces() {
        let rate = f64::from(piece.turn.control()) / rho;
        let f = |th: f64| (th.cos(), th.sin(), rate);
        let steps = (piece.duration / step).ceil().max(0.0) as u64;
        if steps == 0 {
            continue;
        }
        let h = piece.duration / steps as f64;
        for _ in 0..steps {
            let k1 = f(th);
            let k2 = f(th + 0.5 * h * k1.2);
            let k3 = f(th + 0.5 * h * k2.2);
            let k4 = f(th + h * k3.2);
            x += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            y += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            th += h / 6.0 * (k1.2 + 2.0 * k2.2 + 2.0 * k3.2 + k4.2);
        }
    }
    RelativeState::new(x, y, th)
}

/// Resolution of the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Cell width in radians for the one-parameter turn-straight-turn scan.
    pub csc_step: f64,
    /// Cell width in radians, per axis, for the two-parameter three-turn scan.
    pub ccc_step: f64,
    /// Bisection / Newton iterations spent refining each seed.
    pub refinement_depth: u32,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            csc_step: TAU / 8192.0,
            ccc_step: TAU / 300.0,
            refinement_depth: 60,
        }
    }
}

impl GridSpec {
    pub fn is_valid(&self) -> bool {
        self.csc_step > 0.0 && self.ccc_step > 0.0 && self.refinement_depth >= 1
    }

    /// Worst-case time error of a reported optimum, in time units.
    ///
    /// Refined roots are exact to rounding; the bound covers near-double
    /// roots accepted at [`ACCEPT_RESIDUAL`] where the parameter error grows
    /// like the square root of the residual.
    pub fn time_bound(&self) -> f64 {
        0.02
    }
}

/// Position residual (relative to `1 + T`) below which a refined point is
/// accepted as a solution.
pub const ACCEPT_RESIDUAL: f64 = 1e-7;

/// Path shape found by the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Straight then a full circle, turning `+1` left or `-1` right.
    StraightLoop(i8),
    /// Arc then a full opposite circle.
    ArcLoop(i8),
    ThreeTurn(i8),
    TurnStraightTurn(i8, i8),
}

fn letter(sign: i8) -> char {
    if sign < 0 {
        'R'
    } else {
        'L'
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Shape::StraightLoop(s) => write!(f, "S{}2pi", letter(s)),
            Shape::ArcLoop(s) => write!(f, "{}{}2pi", letter(s), letter(-s)),
            Shape::ThreeTurn(s) => write!(f, "{}{}{}", letter(s), letter(-s), letter(s)),
            Shape::TurnStraightTurn(s, k) => write!(f, "{}S{}", letter(s), letter(k)),
        }
    }
}

/// Best path found by [`brute_force`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub time: f64,
    pub shape: Shape,
    /// First arc, second arc (three-turn) or straight heading, last arc.
    pub arcs: [f64; 3],
    /// Straight length, zero when absent.
    pub straight: f64,
    pub residual: f64,
    /// Documented resolution bound on `time`.
    pub bound: f64,
}

/// End of an arc of `angle` radians turning `sign` from `(p, h)`.
fn arc(p: Vec2, h: f64, sign: f64, angle: f64, rho: f64) -> (Vec2, f64) {
    let h2 = h + sign * angle;
    let q = Vec2::new(
        p.x + sign * rho * (h2.sin() - h.sin()),
        p.y + sign * rho * (h.cos() - h2.cos()),
    );
    (q, h2)
}

fn modulo(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

struct Search<'a> {
    sc: &'a Scenario,
    w: Vec2,
    best: Option<OracleResult>,
    bound: f64,
}

impl Search<'_> {
    fn goal(&self, t: f64) -> Vec2 {
        self.sc.target - self.w * t
    }

    fn offer(&mut self, time: f64, shape: Shape, arcs: [f64; 3], straight: f64, residual: f64) {
        if !time.is_finite() || residual > ACCEPT_RESIDUAL * (1.0 + time) {
            return;
        }
        if self.best.map_or(true, |b| time < b.time) {
            self.best = Some(OracleResult {
                time,
                shape,
                arcs,
                straight,
                residual,
                bound: self.bound,
            });
        }
    }

    fn loops(&mut self) {
        let rho = self.sc.rho;
        let start = Vec2::new(0.0, 0.0);
        for sign in [-1i8, 1] {
            // straight d north, then a loop back to (0, d): solve along y
            if (self.sc.theta_f - FRAC_PI_2).sin().abs() < 1e-9 && (self.sc.theta_f - FRAC_PI_2).cos() > 0.0 {
                let d = (self.sc.target.y - TAU * rho * self.w.y) / (1.0 + self.w.y);
                if d >= 0.0 {
                    let t = d + TAU * rho;
                    let r = (Vec2::new(0.0, d) - self.goal(t)).norm();
                    self.offer(t, Shape::StraightLoop(sign), [0.0, 0.0, TAU], d, r);
                }
            }
            // arc fixed by the final heading, then a loop
            let s = f64::from(sign);
            let alpha = modulo(s * (self.sc.theta_f - FRAC_PI_2));
            let (p, _) = arc(start, FRAC_PI_2, s, alpha, rho);
            let t = rho * (alpha + TAU);
            let r = (p - self.goal(t)).norm();
            self.offer(t, Shape::ArcLoop(sign), [alpha, TAU, 0.0], 0.0, r);
        }
    }

    /// Turn-straight-turn scan over the first arc. The last arc follows from
    /// the final heading and the straight length from a least-squares fit;
    /// roots of the perpendicular miss are bracketed and bisected.
    fn turn_straight_turn(&mut self, grid: &GridSpec) {
        let rho = self.sc.rho;
        let theta_f = self.sc.theta_f;
        let target = self.sc.target;
        let w = self.w;
        for (sign, last) in [(-1i8, -1i8), (-1, 1), (1, -1), (1, 1)] {
            let (s, k) = (f64::from(sign), f64::from(last));
            // returns (perpendicular miss, straight length, last arc, time, full residual)
            let eval = |alpha: f64, gamma_override: Option<f64>| {
                let (p1, h1) = arc(Vec2::new(0.0, 0.0), FRAC_PI_2, s, alpha, rho);
                let gamma = gamma_override.unwrap_or_else(|| modulo(k * (theta_f - h1)));
                let (g, _) = arc(Vec2::new(0.0, 0.0), h1, k, gamma, rho);
                let rhs = target - w * (rho * (alpha + gamma)) - p1 - g;
                let v = Vec2::new(h1.cos(), h1.sin()) + w;
                let vn = v.norm();
                let d = rhs.dot(v) / (vn * vn);
                let miss = v.cross(rhs) / vn;
                let t = rho * (alpha + gamma) + d;
                let end = p1 + Vec2::new(h1.cos(), h1.sin()) * d + g;
                (miss, d, gamma, t, (end - (target - w * t)).norm())
            };
            let accept = |this: &mut Self, alpha: f64, gamma_override: Option<f64>| {
                let (_, d, gamma, t, res) = eval(alpha, gamma_override);
                if d >= -1e-9 && alpha < TAU {
                    let h1 = FRAC_PI_2 + s * alpha;
                    this.offer(
                        t,
                        Shape::TurnStraightTurn(sign, last),
                        [alpha, modulo(h1), gamma],
                        d.max(0.0),
                        res,
                    );
                }
            };

            // boundary shapes: no first arc, or no last arc
            accept(self, 0.0, None);
            accept(self, modulo(s * (theta_f - FRAC_PI_2)), Some(0.0));

            let n = (TAU / grid.csc_step).ceil() as usize;
            let samples: Vec<(f64, f64, f64)> = (0..=n)
                .into_par_iter()
                .map(|i| {
                    let a = (i as f64 * TAU / n as f64).min(TAU);
                    let (m, _, g, _, _) = eval(a, None);
                    (a, m, g)
                })
                .collect();
            for i in 0..n {
                let (a0, m0, g0) = samples[i];
                let (a1, m1, g1) = samples[i + 1];
                if (g0 - g1).abs() > PI {
                    // last arc wrapped between the samples
                    continue;
                }
                if m0 == 0.0 || m0.signum() != m1.signum() {
                    let (mut lo, mut hi, mut flo) = (a0, a1, m0);
                    for _ in 0..grid.refinement_depth {
                        let mid = 0.5 * (lo + hi);
                        let fm = eval(mid, None).0;
                        if fm == 0.0 {
                            lo = mid;
                            hi = mid;
                            break;
                        }
                        if fm.signum() == flo.signum() {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                        }
                    }
                    accept(self, 0.5 * (lo + hi), None);
                } else if i > 0 {
                    // touching zero without a sign change
                    let mp = samples[i - 1].1;
                    if m0.abs() <= mp.abs() && m0.abs() <= m1.abs() {
                        let a = golden_min(|a| eval(a, None).0.abs(), samples[i - 1].0, a1, grid);
                        accept(self, a, None);
                    }
                }
            }
        }
    }

    /// Three-turn scan over the first two arcs, refined by Newton's method
    /// from every local minimum of the miss distance.
    fn three_turn(&mut self, grid: &GridSpec) {
        let rho = self.sc.rho;
        let theta_f = self.sc.theta_f;
        let target = self.sc.target;
        let w = self.w;
        let n = (TAU / grid.ccc_step).ceil() as usize;
        let step = TAU / n as f64;
        for sign in [-1i8, 1] {
            let s = f64::from(sign);
            // last arc before wrapping into [0, 2π)
            let raw_gamma = |a: f64, b: f64| s * (theta_f - FRAC_PI_2) - a + b;
            let miss = |a: f64, b: f64, gamma: f64| {
                let (p1, h1) = arc(Vec2::new(0.0, 0.0), FRAC_PI_2, s, a, rho);
                let (p2, h2) = arc(p1, h1, -s, b, rho);
                let (p3, _) = arc(p2, h2, s, gamma, rho);
                let t = rho * (a + b + gamma);
                (p3 - (target - w * t), t)
            };
            let table: Vec<f64> = (0..n * n)
                .into_par_iter()
                .map(|idx| {
                    let (a, b) = ((idx / n) as f64 * step, (idx % n) as f64 * step);
                    miss(a, b, modulo(raw_gamma(a, b))).0.norm()
                })
                .collect();
            let at = |i: usize, j: usize| table[(i % n) * n + (j % n)];
            for i in 0..n {
                for j in 0..n {
                    let v = at(i, j);
                    let local_min = (0..3).all(|di| {
                        (0..3).all(|dj| at(i + n - 1 + di, j + n - 1 + dj) >= v)
                    });
                    if !local_min {
                        continue;
                    }
                    let (a0, b0) = (i as f64 * step, j as f64 * step);
                    let wraps = ((raw_gamma(a0, b0) - modulo(raw_gamma(a0, b0))) / TAU).round();
                    let gamma_of = |a: f64, b: f64| raw_gamma(a, b) - wraps * TAU;
                    let f = |a: f64, b: f64| miss(a, b, gamma_of(a, b)).0;
                    let (mut a, mut b) = (a0, b0);
                    for _ in 0..grid.refinement_depth {
                        let r = f(a, b);
                        if r.norm() < 1e-15 {
                            break;
                        }
                        let e = 1e-7;
                        let ja = (f(a + e, b) - f(a - e, b)) * (0.5 / e);
                        let jb = (f(a, b + e) - f(a, b - e)) * (0.5 / e);
                        let det = ja.cross(jb);
                        if det.abs() < 1e-14 {
                            break;
                        }
                        let da = (r.x * jb.y - r.y * jb.x) / det;
                        let db = (ja.x * r.y - ja.y * r.x) / det;
                        a -= da;
                        b -= db;
                        if !(a.is_finite() && b.is_finite()) || (da.abs() + db.abs()) < 1e-15 {
                            break;
                        }
                    }
                    let a = if a < 0.0 && a > -1e-9 { 0.0 } else { a };
                    let b = if b < 0.0 && b > -1e-9 { 0.0 } else { b };
                    let mut g = gamma_of(a, b);
                    if g < 0.0 && g > -1e-9 {
                        g = 0.0;
                    }
                    if !(0.0..TAU).contains(&a) || !(0.0..TAU).contains(&b) || !(0.0..TAU).contains(&g) {
                        continue;
                    }
                    let (r, t) = miss(a, b, g);
                    self.offer(t, Shape::ThreeTurn(sign), [a, b, g], 0.0, r.norm());
                }
            }
        }
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, grid: &GridSpec) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..grid.refinement_depth * 2 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Exhaustive search for the minimum interception time over every path
/// shape (and degenerate sub-shapes). Expects a normalized scenario.
///
/// Returns `None` when no shape reaches the target.
pub fn brute_force(scenario: &Scenario, grid: &GridSpec) -> Option<OracleResult> {
    assert!(grid.is_valid(), "invalid grid");
    let mut search = Search {
        sc: scenario,
        w: scenario.wind.as_vec(),
        best: None,
        bound: grid.time_bound(),
    };
    search.loops();
    search.turn_straight_turn(grid);
    search.three_turn(grid);
    search.best
}

/// Length of the shortest classical (calm air) Dubins path between two
/// poses, checked word by word against direct integration.
pub fn classical_dubins(start: Pose, goal: Pose, rho: f64) -> f64 {
    let dx = goal.x - start.x;
    let dy = goal.y - start.y;
    let d = dx.hypot(dy) / rho;
    let th = modulo(dy.atan2(dx));
    let a = modulo(start.heading - th);
    let b = modulo(goal.heading - th);
    let (sa, sb, ca, cb) = (a.sin(), b.sin(), a.cos(), b.cos());
    let cab = (a - b).cos();

    // (word as turn signs with 0 = straight, [t, p, q] normalized lengths)
    let mut words: Vec<([i8; 3], [f64; 3])> = Vec::new();

    let p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sa - sb);
    if p2 >= 0.0 {
        let tmp = (cb - ca).atan2(d + sa - sb);
        words.push(([1, 0, 1], [modulo(-a + tmp), p2.sqrt(), modulo(b - tmp)]));
    }
    let p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sb - sa);
    if p2 >= 0.0 {
        let tmp = (ca - cb).atan2(d - sa + sb);
        words.push(([-1, 0, -1], [modulo(a - tmp), p2.sqrt(), modulo(-b + tmp)]));
    }
    let p2 = -2.0 + d * d + 2.0 * cab + 2.0 * d * (sa + sb);
    if p2 >= 0.0 {
        let p = p2.sqrt();
        let tmp = (-ca - cb).atan2(d + sa + sb) - (-2.0f64).atan2(p);
        words.push(([1, 0, -1], [modulo(-a + tmp), p, modulo(-b + tmp)]));
    }
    let p2 = d * d - 2.0 + 2.0 * cab - 2.0 * d * (sa + sb);
    if p2 >= 0.0 {
        let p = p2.sqrt();
        let tmp = (ca + cb).atan2(d - sa - sb) - 2.0f64.atan2(p);
        words.push(([-1, 0, 1], [modulo(a - tmp), p, modulo(b - tmp)]));
    }
    let c = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sa - sb)) / 8.0;
    if c.abs() <= 1.0 {
        for p in [modulo(TAU - c.acos()), c.acos()] {
            let t = modulo(a - (ca - cb).atan2(d - sa + sb) + p / 2.0);
            words.push(([-1, 1, -1], [t, p, modulo(a - b - t + p)]));
        }
    }
    let c = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sb - sa)) / 8.0;
    if c.abs() <= 1.0 {
        for p in [modulo(TAU - c.acos()), c.acos()] {
            let t = modulo(-a + (-ca + cb).atan2(d + sa - sb) + p / 2.0);
            words.push(([1, -1, 1], [t, p, modulo(b - a - t + p)]));
        }
    }

    let mut best = f64::INFINITY;
    for (signs, lens) in words {
        let (mut p, mut h) = (Vec2::new(start.x, start.y), start.heading);
        for (sign, len) in signs.iter().zip(lens) {
            if *sign == 0 {
                p = p + Vec2::new(h.cos(), h.sin()) * (len * rho);
            } else {
                (p, h) = arc(p, h, f64::from(*sign), len, rho);
            }
        }
        let pos_ok = (p - Vec2::new(goal.x, goal.y)).norm() <= 1e-8 * (1.0 + d * rho);
        let head_ok = (h - goal.heading).sin().abs() <= 1e-8 && (h - goal.heading).cos() > 0.0;
        if pos_ok && head_ok {
            best = best.min(rho * lens.iter().sum::<f64>());
        }
    }
    best
}

/// Every sign change of `f` on `[0, 2π)` found by sampling `points` equally
/// spaced values and bisecting each bracket to adjacent floats. Exact zeros
/// at sample points are reported as they are.
///
/// `f` receives `(β, sin β, cos β)`. Samples get the trigonometric values
/// from a rotation recurrence re-anchored every few thousand steps; the
/// bisection calls use exact values.
pub fn grid_roots<F>(f: F, points: usize) -> Vec<f64>
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    const BLOCK: usize = 4096;
    let h = TAU / points as f64;
    let (step_s, step_c) = h.sin_cos();
    let exact = |b: f64| {
        let (s, c) = b.sin_cos();
        f(b, s, c)
    };
    let blocks: Vec<Vec<f64>> = (0..=points / BLOCK)
        .into_par_iter()
        .map(|blk| {
            let first = blk * BLOCK;
            let last = (first + BLOCK).min(points + 1);
            let (mut s, mut c) = (first as f64 * h).sin_cos();
            let mut out = Vec::with_capacity(last.saturating_sub(first));
            for i in first..last {
                out.push(f(i as f64 * h, s, c));
                (s, c) = (s * step_c + c * step_s, c * step_c - s * step_s);
            }
            out
        })
        .collect();
    let values: Vec<f64> = blocks.into_iter().flatten().collect();

    let mut roots = Vec::new();
    for i in 0..points {
        let (v0, v1) = (values[i], values[i + 1]);
        if v0 == 0.0 {
            roots.push(i as f64 * h);
            continue;
        }
        if v1 != 0.0 && v0.signum() != v1.signum() {
            let (mut lo, mut hi) = (i as f64 * h, (i + 1) as f64 * h);
            let mut flo = exact(lo);
            if flo == 0.0 {
                roots.push(lo);
                continue;
            }
            loop {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = exact(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    roots
}
