//! The `nclb` command line: `verify`, `chern` and `thom`.

mod suites;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::preset::Preset;
use crate::report::{Check, Status, SuiteReport};
use crate::thomnum::{thom_checks, ThomConfig, Variant};

pub use suites::{parse_suites, run_suite, RunConfig, SUITES};

pub const REPORT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "nclb", version, about = "Exact checks for line modules over graded star-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites against a preset.
    Verify {
        /// slq2, circle, trivial, or a path to a preset JSON file.
        #[arg(long, default_value = "slq2")]
        preset: String,
        /// Comma separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Value of q for numeric checks.
        #[arg(long = "q", default_value_t = 0.7)]
        q0: f64,
        /// Record elapsed time per suite (makes the JSON nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Curvature trace of the connection with the given ζ.
    Chern {
        #[arg(long, default_value = "slq2")]
        preset: String,
        /// A 1-form in Ω¹A, e.g. `0` or `2 e0`.
        #[arg(long, default_value = "0")]
        zeta: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Numeric checks of the circle-bundle algebra on a grid.
    Thom {
        #[arg(long, default_value = "circle")]
        preset: String,
        #[arg(long, default_value = "c0", value_parser = ["c0", "thom", "circle-bundle"])]
        variant: String,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        #[arg(long, default_value_t = 20.0)]
        window: f64,
        /// Points on the circle.
        #[arg(long, default_value_t = 8)]
        points: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub version: u32,
    pub preset: String,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

/// A built-in preset name, or a path to a preset file.
pub fn load_preset(name: &str) -> Result<Preset> {
    match Preset::builtin(name) {
        Err(Error::UnknownPreset(_)) if Path::new(name).is_file() => Preset::from_path(Path::new(name)),
        r => r,
    }
}

pub fn verify(preset_name: &str, suites: &[&str], cfg: &RunConfig) -> Result<VerifyReport> {
    let preset = load_preset(preset_name)?;
    let suites = suites.iter().map(|s| run_suite(&preset, s, cfg)).collect();
    Ok(VerifyReport { version: REPORT_VERSION, preset: preset_name.to_string(), seed: cfg.seed, suites })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
    }
}

fn print_checks(out: &mut impl Write, checks: &[Check]) -> std::io::Result<()> {
    for c in checks {
        writeln!(out, "  {} {}: {}", status_word(c.status), c.id, c.witness)?;
    }
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Usage problems exit with 2, failed checks with 1.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UnknownPreset(_) | Error::UnknownSuite(_) | Error::Parse(_) | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Run a parsed command, printing to `out`; returns the process exit code.
pub fn execute(cli: Cli, out: &mut impl Write) -> i32 {
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("nclb: {e}");
            exit_code_for(&e)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match cli.command {
        Command::Verify { preset, suite, seed, samples, json, q0, timings } => {
            let names = parse_suites(&suite)?;
            let cfg = RunConfig { seed, samples, q0, timings };
            let report = verify(&preset, &names, &cfg)?;
            for s in &report.suites {
                match s.elapsed_ms {
                    Some(ms) => writeln!(out, "[{}] ({ms:.0} ms)", s.suite).map_err(io)?,
                    None => writeln!(out, "[{}]", s.suite).map_err(io)?,
                }
                print_checks(out, &s.checks).map_err(io)?;
            }
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
            Ok(i32::from(report.suites.iter().any(SuiteReport::has_failure)))
        }
        Command::Chern { preset, zeta, seed, samples } => {
            let p = load_preset(&preset)?;
            let (Some(dga), Some(lm)) = (&p.calculus, p.calculus_module()) else {
                writeln!(out, "preset `{preset}` has no differential calculus").map_err(io)?;
                return Ok(1);
            };
            let zeta = dga.parse(&zeta)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let checks = crate::diffcalc::chern_checks(dga, lm, &zeta, samples, &mut rng)?;
            print_checks(out, &checks).map_err(io)?;
            Ok(i32::from(checks.iter().any(|c| c.status == Status::Fail)))
        }
        Command::Thom { preset, variant, grid, window, points, samples, seed, json } => {
            let p = load_preset(&preset)?;
            let variant: Variant = variant.parse()?;
            let cfg = ThomConfig { variant, grid, window, points, samples, seed, ..ThomConfig::default() };
            let report = thom_checks(&p.metric()?, &cfg)?;
            writeln!(out, "variant {}, grid {}, window {}, C = {:.6}", report.variant, grid, window, report.constant)
                .map_err(io)?;
            print_checks(out, &report.checks).map_err(io)?;
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
            Ok(i32::from(report.checks.iter().any(|c| c.status == Status::Fail)))
        }
    }
}
