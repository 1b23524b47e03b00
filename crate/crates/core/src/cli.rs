//! Command-line front end: `run`, `verify`, `converge`, `figures`, `sweep`.
//!
//! Exit codes: 0 success, 1 failed check or numerical failure, 2 usage or
//! scenario error, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::diagnostics::{
    self, figure_data, lambda_flip_study, sweep, verify_suite, FigureParams, PanelData, SweepParameter,
};
use crate::error::{Error, Result};
use crate::scenario::{fmt_f64, load_scenario, to_precise_json, write_csv, write_outputs, Scenario};
use crate::similarity::{ModulationShape, WidthProfile};
use crate::stationary::ProfileKind;

/// Worker count for sweeps and convergence levels; defaults to the
/// available parallelism.
pub const WORKERS_ENV: &str = "NLSE_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "nlse-solitons", version, about = "Exact solitons of a modulated 1D NLSE: evolution and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve a scenario and write series, snapshots and metadata.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Stationary, identity, constraint and PDE-residual checks.
    Verify {
        /// Takes λ, α and β from this scenario.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Temporal convergence over `levels` halvings of the scenario's dt.
    Converge {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the data of figure K (1–7).
    Figures {
        #[arg(long)]
        which: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = ModulationShape::DEFAULT_LAMBDA, allow_negative_numbers = true)]
        lambda: f64,
    },
    /// Run the scenario once per value of a parameter.
    Sweep {
        /// lambda, alpha, beta or dt.
        #[arg(long)]
        param: String,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        values: Vec<f64>,
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run_command<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match worker_pool() {
        Ok(Some(pool)) => pool.install(|| dispatch(cli.command)),
        Ok(None) => dispatch(cli.command),
        Err(e) => Err(e),
    };
    match result {
        Ok(Outcome::Passed) => 0,
        Ok(Outcome::Failed(summary)) => {
            eprintln!("check failed: {summary}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => 3,
        Error::NonFinite { .. } => 1,
        _ => 2,
    }
}

fn worker_pool() -> Result<Option<rayon::ThreadPool>> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::invalid("NLSE_WORKERS", format!("expected a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| Error::invalid("NLSE_WORKERS", e.to_string()))
}

enum Outcome {
    Passed,
    Failed(String),
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Run { scenario, out } => {
            let s = load_scenario(&scenario)?;
            let traj = crate::evolver::evolve(&s)?;
            write_outputs(&out, &s, &traj)?;
            println!(
                "{} steps, max density error {}, wrote {}",
                s.steps(),
                fmt_f64(traj.max_linf_error()),
                out.display()
            );
            Ok(Outcome::Passed)
        }
        Command::Verify { scenario, out } => {
            let (lambda, width) = match scenario {
                Some(p) => {
                    let s = load_scenario(&p)?;
                    (s.lambda, s.width())
                }
                None => (ModulationShape::DEFAULT_LAMBDA, WidthProfile::periodic()),
            };
            let report = verify_suite(lambda, width)?;
            for c in &report.checks {
                println!(
                    "{} {:<36} {:>24}  ({})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    fmt_f64(c.value),
                    c.criterion
                );
            }
            if let Some(dir) = out {
                create_dir(&dir)?;
                write_text(&dir.join("verify.json"), &to_precise_json(&report))?;
            }
            Ok(match report.first_failure() {
                None => Outcome::Passed,
                Some(c) => Outcome::Failed(format!("{} = {} ({})", c.name, fmt_f64(c.value), c.criterion)),
            })
        }
        Command::Converge { scenario, levels, out } => {
            let s = load_scenario(&scenario)?;
            let report = diagnostics::convergence_study(&s, levels)?;
            println!("dt,error");
            for (dt, r) in report.levels.iter().zip(&report.residuals) {
                println!("{},{}", fmt_f64(*dt), fmt_f64(*r));
            }
            match report.order {
                Some(p) => println!("order {p:.4}{}", if report.reliable { "" } else { " (unreliable)" }),
                None => println!("order unavailable"),
            }
            if let Some(dir) = out {
                create_dir(&dir)?;
                write_csv(
                    &dir.join("convergence.csv"),
                    &["dt", "error"],
                    report.levels.iter().zip(&report.residuals).map(|(a, b)| vec![*a, *b]),
                )?;
                write_text(&dir.join("convergence.json"), &to_precise_json(&report))?;
            }
            Ok(if report.reliable {
                Outcome::Passed
            } else {
                Outcome::Failed("error did not decrease cleanly above the roundoff floor".into())
            })
        }
        Command::Figures { which, out, lambda } => {
            let params = FigureParams {
                lambda,
                ..FigureParams::default()
            };
            let data = figure_data(which, &params)?;
            create_dir(&out)?;
            for panel in &data.panels {
                let path = out.join(format!("fig{which}_{}.csv", panel.name));
                match &panel.data {
                    PanelData::Series { column, t, values } => {
                        write_csv(&path, &["t", column], t.iter().zip(values).map(|(a, b)| vec![*a, *b]))?
                    }
                    PanelData::Surface { quantity, xs, ts, values } => write_csv(
                        &path,
                        &["x", "t", quantity],
                        ts.iter()
                            .enumerate()
                            .flat_map(|(i, &t)| xs.iter().enumerate().map(move |(j, &x)| (i, j, x, t)))
                            .map(|(i, j, x, t)| vec![x, t, values[i * xs.len() + j]]),
                    )?,
                }
                println!("wrote {}", path.display());
            }
            Ok(Outcome::Passed)
        }
        Command::Sweep { param, values, scenario, out } => {
            let param: SweepParameter = param.parse()?;
            let base = match scenario {
                Some(p) => load_scenario(&p)?,
                None => Scenario::for_kind(ProfileKind::CubicBright),
            };
            let flip = param == SweepParameter::Lambda
                && values.len() == 2
                && values[0] == -values[1]
                && values[0] != 0.0;
            create_dir(&out)?;
            let result = if flip {
                let mut s = base.clone();
                s.lambda = values[1].abs();
                let report = lambda_flip_study(&s)?;
                if let Some(r) = report.analytic_peak_ratio {
                    println!("analytic peak-density ratio (-λ)/(+λ): {}", fmt_f64(r));
                }
                write_text(&out.join("lambda_flip.json"), &to_precise_json(&report))?;
                report.sweep
            } else {
                sweep(&base, param, &values)?
            };
            write_csv(
                &out.join("sweep.csv"),
                &[
                    result.parameter.as_str(),
                    "peak_min",
                    "peak_max",
                    "width_min",
                    "width_max",
                    "max_l2_error",
                    "max_linf_error",
                    "localized",
                ],
                result.summaries.iter().map(|s| {
                    vec![
                        s.value,
                        s.peak_min,
                        s.peak_max,
                        s.width_min,
                        s.width_max,
                        s.max_l2_error,
                        s.max_linf_error,
                        if s.localized { 1.0 } else { 0.0 },
                    ]
                }),
            )?;
            write_text(&out.join("sweep.json"), &to_precise_json(&result))?;
            for s in &result.summaries {
                println!(
                    "{}={} peak [{}, {}] max density error {} localized {}",
                    result.parameter,
                    fmt_f64(s.value),
                    fmt_f64(s.peak_min),
                    fmt_f64(s.peak_max),
                    fmt_f64(s.max_linf_error),
                    s.localized
                );
            }
            Ok(match result.summaries.iter().find(|s| !s.localized) {
                None => Outcome::Passed,
                Some(s) => Outcome::Failed(format!("{}={} lost localization", result.parameter, fmt_f64(s.value))),
            })
        }
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
