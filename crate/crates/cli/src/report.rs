use std::f64::consts::{FRAC_PI_2, PI};
use std::io::{self, Write};

use dubwind::{plan, PlanResult, Scenario, TrajectorySample, Variant, Vec2, WindVector};

pub const CSV_HEADER: &str = "t,x_rel,y_rel,theta,u,x_inertial,y_inertial";

pub fn write_table(out: &mut dyn Write, sc: &Scenario, result: &PlanResult) -> io::Result<()> {
    writeln!(
        out,
        "wind ({}, {})  target ({}, {})  theta_f {} deg  rho {}",
        sc.wind.wx,
        sc.wind.wy,
        sc.target.x,
        sc.target.y,
        sc.theta_f.to_degrees(),
        sc.rho
    )?;
    writeln!(
        out,
        "  {:<8} {:>10} {:>10} {:>10} {:>10} {:>11} {:>10}",
        "variant", "alpha", "beta", "gamma", "d", "time", "residual"
    )?;
    let best = result.best.as_ref();
    for c in &result.all_candidates {
        let mark = if best == Some(c) { '*' } else { ' ' };
        let p = c.params;
        writeln!(
            out,
            "{mark} {:<8} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>11.6} {:>10.1e}",
            c.variant().to_string(),
            p.alpha,
            p.beta,
            p.gamma,
            p.d,
            c.total_time,
            c.residual
        )?;
    }
    if let Some(b) = best {
        writeln!(
            out,
            "t_f = {:.6} ({}), {} candidates",
            b.total_time,
            b.variant(),
            result.all_candidates.len()
        )?;
    }
    if result.widened_feas_tol {
        writeln!(out, "note: feasibility tolerance was widened to find a path")?;
    }
    Ok(())
}

pub fn write_csv(out: &mut dyn Write, rows: &[TrajectorySample]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:?},{:?},{:?},{:?},{},{:?},{:?}",
            r.t,
            r.relative.x,
            r.relative.y,
            r.relative.theta,
            r.control.control(),
            r.inertial.x,
            r.inertial.y
        )?;
    }
    Ok(())
}

struct Reference {
    name: &'static str,
    scenario: Scenario,
    variant: Variant,
    time: f64,
}

fn references() -> Vec<Reference> {
    let dir = (-18f64).to_radians();
    let tail = -(4.0 + 2.0 * 2f64.sqrt()) / (9.0 * PI);
    vec![
        Reference {
            name: "calm straight line",
            scenario: Scenario::new(WindVector::CALM, Vec2::new(0.0, 10.0), FRAC_PI_2, 1.0),
            // every turn-straight-turn word degenerates to the same line
            variant: Variant::RSR,
            time: 10.0,
        },
        Reference {
            name: "crosswind",
            scenario: Scenario::new(
                WindVector { wx: 0.5 * dir.cos(), wy: 0.5 * dir.sin() },
                Vec2::new(5.0, -2.0),
                72f64.to_radians(),
                1.0,
            ),
            variant: Variant::LSL,
            time: 7.5294,
        },
        Reference {
            name: "tailwind loop",
            scenario: Scenario::new(
                WindVector { wx: 0.0, wy: tail },
                Vec2::new(1.0 - 0.5f64.sqrt(), -1.0),
                FRAC_PI_2 / 2.0,
                1.0,
            ),
            variant: Variant::RL2pi,
            time: 2.25 * PI,
        },
    ]
}

/// Plans the reference scenarios; returns `true` when all match.
pub fn selftest(out: &mut dyn Write) -> io::Result<bool> {
    let mut all = true;
    for r in references() {
        let (ok, got) = match plan(&r.scenario) {
            Ok(res) => match res.best {
                Some(b) => (
                    b.variant() == r.variant && (b.total_time - r.time).abs() <= 1e-3,
                    format!("{} {:.4}", b.variant(), b.total_time),
                ),
                None => (false, "no feasible candidate".to_string()),
            },
            Err(e) => (false, e.to_string()),
        };
        all &= ok;
        writeln!(
            out,
            "selftest {}: {} (expected {} {:.4}, got {got})",
            r.name,
            if ok { "PASS" } else { "FAIL" },
            r.variant,
            r.time
        )?;
    }
    Ok(all)
}
