use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dubwind::{plan, Pose, Scenario, ScenarioError, ToleranceSet, Vec2, WindVector};
use thiserror::Error;

mod report;

/// Minimum-time paths for a turn-limited vehicle flying in steady wind.
#[derive(Debug, Parser)]
#[command(name = "dubwind", version)]
struct Cli {
    #[command(subcommand)]
    mode: Mode,
}

#[derive(Debug, Subcommand)]
enum Mode {
    /// Plan a single scenario given on the command line.
    Plan {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Plan every scenario of a file, one per line: `wx wy XT0 YT0 theta_f_deg rho`.
    Batch {
        file: PathBuf,
        #[arg(long, value_name = "X,Y,THETA_DEG", allow_hyphen_values = true, value_parser = parse_pose)]
        start: Option<Pose>,
        #[command(flatten)]
        tolerances: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the built-in reference scenarios and report pass/fail.
    Selftest,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Wind velocity, as a fraction of the vehicle speed.
    #[arg(long, value_name = "WX,WY", allow_hyphen_values = true, value_parser = parse_pair)]
    wind: (f64, f64),
    /// Ground position of the goal.
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true, value_parser = parse_pair)]
    target: (f64, f64),
    /// Final heading in degrees, counterclockwise from the x axis.
    #[arg(long = "theta-f-deg", value_name = "D", allow_hyphen_values = true)]
    theta_f_deg: f64,
    /// Minimum turning radius.
    #[arg(long, value_name = "R", allow_hyphen_values = true)]
    rho: f64,
    /// Initial pose; defaults to the origin heading north.
    #[arg(long, value_name = "X,Y,THETA_DEG", allow_hyphen_values = true, value_parser = parse_pose)]
    start: Option<Pose>,
    #[command(flatten)]
    tolerances: ToleranceArgs,
}

#[derive(Debug, Args)]
struct ToleranceArgs {
    #[arg(long = "feas-tol", value_name = "T", allow_hyphen_values = true)]
    feas_tol: Option<f64>,
    #[arg(long = "residual-tol", value_name = "T", allow_hyphen_values = true)]
    residual_tol: Option<f64>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputKind::Table)]
    output: OutputKind,
    /// Time step of the CSV trajectory.
    #[arg(long = "sample-dt", value_name = "DT", default_value_t = 0.05, allow_hyphen_values = true)]
    sample_dt: f64,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputKind {
    Table,
    Csv,
    Both,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

fn parse_numbers(s: &str, count: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(format!("expected {count} comma-separated numbers"));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("`{p}` is not a finite number"))
        })
        .collect()
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v = parse_numbers(s, 2)?;
    Ok((v[0], v[1]))
}

fn parse_pose(s: &str) -> Result<Pose, String> {
    let v = parse_numbers(s, 3)?;
    Ok(Pose::new(v[0], v[1], v[2].to_radians()))
}

fn tolerances(args: &ToleranceArgs) -> Result<ToleranceSet, CliError> {
    let mut tol = ToleranceSet::default();
    if let Some(t) = args.feas_tol {
        tol.feas_tol = t;
    }
    if let Some(t) = args.residual_tol {
        tol.residual_tol = t;
    }
    tol.validate().map_err(|e| match e {
        ScenarioError::NonPositiveTolerance("feas_tol") => {
            CliError::Input("--feas-tol must be positive and finite".into())
        }
        _ => CliError::Input("--residual-tol must be positive and finite".into()),
    })?;
    Ok(tol)
}

/// Builds and validates a scenario; `origin` names where the values came
/// from in diagnostics.
fn build_scenario(
    wind: (f64, f64),
    target: (f64, f64),
    theta_f_deg: f64,
    rho: f64,
    start: Option<Pose>,
    tol: ToleranceSet,
    origin: &str,
) -> Result<Scenario, CliError> {
    let wind = WindVector { wx: wind.0, wy: wind.1 };
    let mut sc = Scenario::new(wind, Vec2::new(target.0, target.1), theta_f_deg.to_radians(), rho)
        .with_tolerances(tol);
    if let Some(p) = start {
        sc = sc.with_start(p);
    }
    sc.validate().map_err(|e| {
        let flag = match e {
            ScenarioError::WindTooStrong { .. } => "--wind",
            ScenarioError::NonPositiveRho(_) => "--rho",
            ScenarioError::NonPositiveTolerance(_) => "--feas-tol",
            ScenarioError::NonFinite(_) => "--target",
        };
        CliError::Input(format!("{origin}{flag}: {e}"))
    })?;
    Ok(sc)
}

fn parse_batch_line(line: &str) -> Result<Option<[f64; 6]>, String> {
    let content = line.split('#').next().unwrap_or("").trim();
    if content.is_empty() {
        return Ok(None);
    }
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != 6 {
        return Err(format!(
            "expected 6 fields `wx wy XT0 YT0 theta_f_deg rho`, found {}",
            fields.len()
        ));
    }
    let mut out = [0.0; 6];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("`{f}` is not a finite number"))?;
    }
    Ok(Some(out))
}

/// Returns `true` when a feasible path was written.
fn emit_plan(sc: &Scenario, output: &OutputArgs, sink: &mut dyn Write) -> Result<bool, CliError> {
    let result = plan(sc).map_err(|e| CliError::Input(e.to_string()))?;
    let Some(best) = result.best.as_ref() else {
        writeln!(sink, "no feasible candidate")?;
        return Ok(false);
    };
    if matches!(output.output, OutputKind::Table | OutputKind::Both) {
        report::write_table(sink, sc, &result)?;
    }
    if output.output == OutputKind::Both {
        writeln!(sink)?;
    }
    if matches!(output.output, OutputKind::Csv | OutputKind::Both) {
        report::write_csv(sink, &dubwind::sample(best, output.sample_dt, sc))?;
    }
    Ok(true)
}

fn open_sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path).map_err(|e| {
            CliError::Input(format!("--out: cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn check_dt(output: &OutputArgs) -> Result<(), CliError> {
    if output.sample_dt.is_finite() && output.sample_dt > 0.0 {
        Ok(())
    } else {
        Err(CliError::Input("--sample-dt must be positive".into()))
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.mode {
        Mode::Plan { scenario: a, output } => {
            check_dt(&output)?;
            let tol = tolerances(&a.tolerances)?;
            let sc = build_scenario(a.wind, a.target, a.theta_f_deg, a.rho, a.start, tol, "")?;
            let mut sink = open_sink(&output.out)?;
            let ok = emit_plan(&sc, &output, &mut *sink)?;
            sink.flush()?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Mode::Batch {
            file,
            start,
            tolerances: t,
            output,
        } => {
            check_dt(&output)?;
            let tol = tolerances(&t)?;
            let text = fs::read_to_string(&file)
                .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
            // validate the whole file before planning anything
            let mut scenarios = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let origin = format!("{}:{}: ", file.display(), i + 1);
                let fields = parse_batch_line(line).map_err(|e| CliError::Input(format!("{origin}{e}")))?;
                if let Some([wx, wy, x, y, deg, rho]) = fields {
                    let sc = build_scenario((wx, wy), (x, y), deg, rho, start, tol, &origin)?;
                    scenarios.push((i + 1, line.trim().to_string(), sc));
                }
            }
            let mut sink = open_sink(&output.out)?;
            let mut all_ok = true;
            for (k, (line_no, text, sc)) in scenarios.iter().enumerate() {
                if k > 0 {
                    writeln!(sink)?;
                }
                writeln!(sink, "# line {line_no}: {text}")?;
                all_ok &= emit_plan(sc, &output, &mut *sink)?;
            }
            sink.flush()?;
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Mode::Selftest => {
            let mut out = io::stdout().lock();
            let ok = report::selftest(&mut out)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    eprintln!("error: missing subcommand (plan, batch or selftest)");
                    return ExitCode::from(1);
                }
                _ => {}
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("error: invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
