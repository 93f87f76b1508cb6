//! Isolation of every real root on `[0, 2π)` of the three scalar equation
//! shapes produced by the path families:
//!
//! * `c1 β² + c2 β + c3 cos β + c4 = 0` ([`QuadCosCoeffs`]),
//! * `e1 + e2 sin β + e3 cos β = 0` ([`SinusoidCoeffs`]),
//! * `f1 + f2 sin β + f3 cos β + β (f4 sin β + f5 cos β) = 0` ([`EnvelopeCoeffs`]).

use std::f64::consts::TAU;

use crate::geometry::{wrap_angle, ToleranceSet};

/// Coefficients of `G(β) = c1 β² + c2 β + c3 cos β + c4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCosCoeffs {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl QuadCosCoeffs {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Self {
        Self { c1, c2, c3, c4 }
    }

    #[inline]
    pub fn eval(&self, b: f64) -> f64 {
        (self.c1 * b + self.c2) * b + self.c3 * b.cos() + self.c4
    }

    #[inline]
    pub fn derivative(&self, b: f64) -> f64 {
        2.0 * self.c1 * b + self.c2 - self.c3 * b.sin()
    }

    #[inline]
    pub fn second_derivative(&self, b: f64) -> f64 {
        2.0 * self.c1 - self.c3 * b.cos()
    }

    pub fn magnitude(&self) -> f64 {
        self.c1.abs() + self.c2.abs() + self.c3.abs() + self.c4.abs()
    }

    pub fn is_finite(&self) -> bool {
        [self.c1, self.c2, self.c3, self.c4].iter().all(|c| c.is_finite())
    }
}

/// Coefficients of `e1 + e2 sin β + e3 cos β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidCoeffs {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl SinusoidCoeffs {
    pub fn new(e1: f64, e2: f64, e3: f64) -> Self {
        Self { e1, e2, e3 }
    }

    #[inline]
    pub fn eval(&self, b: f64) -> f64 {
        let (s, c) = b.sin_cos();
        self.e1 + self.e2 * s + self.e3 * c
    }

    pub fn magnitude(&self) -> f64 {
        self.e1.abs() + self.e2.abs() + self.e3.abs()
    }
}

/// Coefficients of `f1 + f2 sin β + f3 cos β + β (f4 sin β + f5 cos β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeCoeffs {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
    pub f5: f64,
}

impl EnvelopeCoeffs {
    pub fn new(f1: f64, f2: f64, f3: f64, f4: f64, f5: f64) -> Self {
        Self { f1, f2, f3, f4, f5 }
    }

    #[inline]
    pub fn eval(&self, b: f64) -> f64 {
        let (s, c) = b.sin_cos();
        self.f1 + self.f2 * s + self.f3 * c + b * (self.f4 * s + self.f5 * c)
    }

    /// `G'` has the same shape: `(f2 + f5) cos β + (f4 - f3) sin β + β (f4 cos β - f5 sin β)`.
    pub fn derivative(&self) -> EnvelopeCoeffs {
        EnvelopeCoeffs::new(
            0.0,
            self.f4 - self.f3,
            self.f2 + self.f5,
            -self.f5,
            self.f4,
        )
    }

    /// Upper bound on `|G'|` over `[0, 2π]`.
    pub fn lipschitz(&self) -> f64 {
        self.f2.abs()
            + self.f3.abs()
            + self.f4.abs()
            + self.f5.abs()
            + TAU * (self.f4.abs() + self.f5.abs())
    }

    pub fn magnitude(&self) -> f64 {
        self.f1.abs() + self.f2.abs() + self.f3.abs() + self.f4.abs() + self.f5.abs()
    }

    pub fn sinusoid(&self) -> SinusoidCoeffs {
        SinusoidCoeffs::new(self.f1, self.f2, self.f3)
    }
}

/// One isolated root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: f64,
    /// Interval known to contain the root (degenerate for closed forms).
    pub bracket: (f64, f64),
    /// `|G(value)|`.
    pub residual: f64,
    /// The function touches zero without changing sign here.
    pub tangential: bool,
}

/// Roots in `[0, 2π)`, strictly increasing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter()
    }

    /// Non-tangential roots only.
    pub fn simple(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !r.tangential)
    }

    fn from_unsorted(mut roots: Vec<Root>, merge_within: f64) -> Self {
        roots.retain(|r| r.value >= 0.0 && r.value < TAU);
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
        let mut out: Vec<Root> = Vec::with_capacity(roots.len());
        for r in roots {
            match out.last_mut() {
                Some(prev) if r.value - prev.value <= merge_within => {
                    // keep the sign-change root over a tangential one, else the smaller residual
                    let better = (prev.tangential && !r.tangential)
                        || (prev.tangential == r.tangential && r.residual < prev.residual);
                    if better {
                        *prev = r;
                    }
                }
                _ => out.push(r),
            }
        }
        Self { roots: out }
    }
}

/// Bisection of `f` on `[a, b]`, which must bracket a sign change, down to
/// adjacent floating-point numbers. Returns the root estimate and bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, (f64, f64)) {
    let mut fa = f(a);
    if fa == 0.0 {
        return (a, (a, a));
    }
    if f(b) == 0.0 {
        return (b, (b, b));
    }
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return (m, (m, m));
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let fa_abs = f(a).abs();
    let fb_abs = f(b).abs();
    let x = if fa_abs <= fb_abs { a } else { b };
    (x, (a, b))
}

fn simple_root(value: f64, bracket: (f64, f64), residual: f64) -> Root {
    Root {
        value,
        bracket,
        residual,
        tangential: false,
    }
}

/// Zeros of `G'' = 2 c1 - c3 cos β` inside `(0, 2π)`, ascending.
fn curvature_breaks(c: &QuadCosCoeffs) -> Vec<f64> {
    if c.c3 == 0.0 {
        return Vec::new();
    }
    let r = 2.0 * c.c1 / c.c3;
    if !(-1.0..=1.0).contains(&r) {
        return Vec::new();
    }
    let a = r.acos();
    let mut out = Vec::with_capacity(2);
    for b in [a, TAU - a] {
        if b > 0.0 && b < TAU && out.last() != Some(&b) {
            out.push(b);
        }
    }
    out
}

/// Stationary points of `G` on `[0, 2π)`: the first pass of the improved
/// bisection, run on the intervals where `G'` is monotone.
pub fn quadcos_stationary_points(c: &QuadCosCoeffs) -> Vec<f64> {
    let mut nodes = vec![0.0];
    nodes.extend(curvature_breaks(c));
    nodes.push(TAU);
    let dg = |b: f64| c.derivative(b);
    let mut z1 = Vec::new();
    for w in nodes.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let d_lo = dg(lo);
        // left endpoints only, so a shared partition point is counted once
        if d_lo == 0.0 {
            z1.push(lo);
        } else if d_lo * dg(hi) < 0.0 {
            z1.push(bisect(dg, lo, hi).0);
        }
    }
    z1.sort_by(f64::total_cmp);
    z1.dedup();
    z1
}

/// Every real root of `c1 β² + c2 β + c3 cos β + c4` on `[0, 2π)`.
///
/// `G''` has at most two zeros, so `G'` is monotone between them and has at
/// most one zero per piece; those stationary points in turn split `[0, 2π)`
/// into pieces where `G` is monotone, each holding at most one root. Roots
/// at a stationary point where `G` only touches zero are accepted when
/// `|G| <= feas_tol` and reported as tangential.
pub fn solve_quadcos(c: &QuadCosCoeffs, tol: &ToleranceSet) -> RootSet {
    if !c.is_finite() {
        return RootSet::default();
    }
    let g = |b: f64| c.eval(b);
    let mut nodes = vec![0.0];
    for z in quadcos_stationary_points(c) {
        if z > 0.0 {
            nodes.push(z);
        }
    }
    nodes.push(TAU);
    let vals: Vec<f64> = nodes.iter().map(|&b| g(b)).collect();

    let mut roots = Vec::new();
    for i in 0..nodes.len() - 1 {
        let (lo, hi) = (nodes[i], nodes[i + 1]);
        let (g_lo, g_hi) = (vals[i], vals[i + 1]);
        if g_lo == 0.0 {
            let touching = i > 0 && vals[i - 1] * g_hi > 0.0;
            roots.push(Root {
                value: lo,
                bracket: (lo, lo),
                residual: 0.0,
                tangential: touching,
            });
        } else if g_lo * g_hi < 0.0 {
            let (x, br) = bisect(g, lo, hi);
            roots.push(simple_root(x, br, g(x).abs()));
        } else if i > 0 && g_lo.abs() <= tol.feas_tol {
            // interior stationary point grazing zero, no sign change on either side
            let left_change = vals[i - 1] * g_lo < 0.0;
            if !left_change {
                roots.push(Root {
                    value: lo,
                    bracket: (lo, lo),
                    residual: g_lo.abs(),
                    tangential: true,
                });
            }
        }
    }
    RootSet::from_unsorted(roots, 0.0)
}

/// Every root of `e1 + e2 sin β + e3 cos β` on `[0, 2π)`, in closed form.
///
/// With `e2 sin β + e3 cos β = R sin(β + φ)` the roots are the two arcsine
/// branches of `sin(β + φ) = -e1 / R`. When `|e1|` exceeds `R` by no more
/// than `feas_tol` the single tangency root is returned.
pub fn solve_sinusoid(c: &SinusoidCoeffs, tol: &ToleranceSet) -> RootSet {
    let amp = c.e2.hypot(c.e3);
    if !(amp.is_finite() && c.e1.is_finite()) || amp == 0.0 {
        return RootSet::default();
    }
    let excess = c.e1.abs() - amp;
    if excess > tol.feas_tol {
        return RootSet::default();
    }
    let phase = c.e3.atan2(c.e2);
    let tangent = excess >= 0.0;
    let s = (-c.e1 / amp).clamp(-1.0, 1.0);
    let base = s.asin();
    let candidates: &[f64] = if tangent {
        &[base]
    } else {
        &[base, std::f64::consts::PI - base]
    };
    let roots = candidates
        .iter()
        .map(|&b| {
            let v = wrap_angle(b - phase);
            Root {
                value: v,
                bracket: (v, v),
                residual: c.eval(v).abs(),
                tangential: tangent,
            }
        })
        .collect();
    RootSet::from_unsorted(roots, 0.0)
}

/// Every root of the linear-envelope sinusoid on `[0, 2π)`.
///
/// Exhaustive interval isolation guarded by Lipschitz bounds on `G` and
/// `G'`: a cell is discarded when `|G|` at both ends exceeds `L h / 2` (no
/// zero fits), certified monotone when the same test passes for `G'`, and
/// split otherwise. Monotone cells with a sign change are bisected; cells
/// that shrink to `root_tol` without certification are checked for a
/// tangential zero (`|G| <= feas_tol`).
pub fn solve_envelope(c: &EnvelopeCoeffs, tol: &ToleranceSet) -> RootSet {
    const INITIAL_CELLS: usize = 32;
    let vals = [c.f1, c.f2, c.f3, c.f4, c.f5];
    if vals.iter().any(|v| !v.is_finite()) {
        return RootSet::default();
    }
    let dc = c.derivative();
    let lip = c.lipschitz();
    let dlip = dc.lipschitz();
    let g = |b: f64| c.eval(b);
    let dg = |b: f64| dc.eval(b);
    let min_width = tol.root_tol.max(4.0 * f64::EPSILON * TAU);

    let mut roots = Vec::new();
    let mut stack: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(64);
    let h0 = TAU / INITIAL_CELLS as f64;
    let mut edges: Vec<f64> = (0..=INITIAL_CELLS).map(|i| i as f64 * h0).collect();
    edges[INITIAL_CELLS] = TAU;
    // push in reverse so cells pop left to right
    for w in edges.windows(2).rev() {
        stack.push((w[0], w[1], g(w[0]), g(w[1])));
    }

    while let Some((a, b, ga, gb)) = stack.pop() {
        let h = b - a;
        let half = 0.5 * lip * h;
        if ga.abs() > half && gb.abs() > half {
            continue;
        }
        let dhalf = 0.5 * dlip * h;
        let monotone = dg(a).abs() > dhalf && dg(b).abs() > dhalf;
        if monotone || h <= min_width {
            if ga == 0.0 {
                roots.push(simple_root(a, (a, a), 0.0));
            } else if ga * gb < 0.0 {
                let (x, br) = bisect(g, a, b);
                roots.push(simple_root(x, br, g(x).abs()));
            } else if !monotone {
                let m = 0.5 * (a + b);
                let (x, gx) = [(a, ga), (m, g(m)), (b, gb)]
                    .into_iter()
                    .min_by(|p, q| p.1.abs().total_cmp(&q.1.abs()))
                    .unwrap();
                if gx.abs() <= tol.feas_tol && x < TAU {
                    roots.push(Root {
                        value: x,
                        bracket: (a, b),
                        residual: gx.abs(),
                        tangential: true,
                    });
                }
            }
            continue;
        }
        let m = 0.5 * (a + b);
        let gm = g(m);
        stack.push((m, b, gm, gb));
        stack.push((a, m, ga, gm));
    }
    // a tangential zero is seen by several neighbouring micro-cells
    RootSet::from_unsorted(roots, 1e3 * min_width)
}
