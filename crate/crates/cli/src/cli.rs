use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use opreduce_core::reduction::{partial_reduce_jordan, partial_reduce_rational};

use crate::cauchy::{self, SystemMatrix};
use crate::format::{
    write_csv, write_solve_json, InputError, ProblemFile, ReduceMode, ReduceOutput,
};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "opreduce",
    version,
    about = "Decouple linear systems of operator equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Total,
    Jordan,
    Rational,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReduceFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolveFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the reduced system of a problem file.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Total)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = ReduceFormat::Text)]
        format: ReduceFormat,
    },
    /// Integrate the coupled and decoupled systems and compare them.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Largest accepted deviation between the two trajectories.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = SolveFormat::Csv)]
        format: SolveFormat,
    },
    /// Run randomized property checks.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run_cli`] with explicit output streams.
pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Reduce {
            input,
            mode,
            format,
        } => reduce(&input, mode, format, out),
        Command::Solve { input, tol, format } => solve(&input, tol, format, out),
        Command::Verify { trials, seed } => Ok(verify_cmd(trials, seed, out)),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn load(path: &Path) -> Result<ProblemFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ProblemFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn located(path: &Path) -> impl Fn(InputError) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn io_err(e: std::io::Error) -> String {
    format!("writing output: {e}")
}

fn reduce(
    path: &Path,
    mode: Mode,
    format: ReduceFormat,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let file = load(path)?;
    let system = file.system().map_err(located(path))?;
    let output = match (mode, &system) {
        (Mode::Total, s) => ReduceOutput::total(&s.total_reduction()),
        (Mode::Jordan, SystemMatrix::RankOne(spec)) => ReduceOutput::partial(
            ReduceMode::Jordan,
            &partial_reduce_jordan(spec).map_err(|e| format!("{}: {e}", path.display()))?,
        ),
        (Mode::Rational, SystemMatrix::RankOne(spec)) => ReduceOutput::partial(
            ReduceMode::Rational,
            &partial_reduce_rational(spec).map_err(|e| format!("{}: {e}", path.display()))?,
        ),
        (_, SystemMatrix::Dense(_)) => {
            return Err(format!(
                "{}: partial reduction needs a hat or check matrix",
                path.display()
            ))
        }
    };
    match format {
        ReduceFormat::Json => writeln!(out, "{}", output.to_json()).map_err(io_err)?,
        ReduceFormat::Text => {
            for record in &output.equations {
                let text = match record {
                    crate::format::PartialRecord::Reduced(e) => e.text.clone(),
                    crate::format::PartialRecord::Coupling(c) => c.text.clone(),
                };
                writeln!(out, "{}", text.unwrap_or_default()).map_err(io_err)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn solve(path: &Path, tol: f64, format: SolveFormat, out: &mut dyn Write) -> Result<i32, String> {
    if tol.is_nan() || tol < 0.0 {
        return Err(format!("--tol must be a nonnegative number, got {tol}"));
    }
    let problem = load(path)?.cauchy().map_err(located(path))?;
    let report = cauchy::solve(&problem);
    match format {
        SolveFormat::Csv => write_csv(&report, &mut *out).map_err(io_err)?,
        SolveFormat::Json => write_solve_json(&report, tol, &mut *out).map_err(io_err)?,
    }
    Ok(if report.max_abs_deviation <= tol {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn verify_cmd(trials: usize, seed: u64, out: &mut dyn Write) -> i32 {
    let report = verify::run_trials(trials, seed);
    for f in &report.failures {
        let _ = writeln!(out, "FAIL trial {} (seed {}): {}", f.trial, f.seed, f.check);
    }
    let _ = writeln!(
        out,
        "passed {}/{} trials (seed {seed})",
        report.passed, report.trials
    );
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}
