//! Command-line front end: single-point records, grid sweeps, the pinned
//! verification table, and sensitivity-locus listings.
//!
//! Exit codes: 0 success, 1 computation or verification failure, 2 usage
//! error. Output is assembled fully in memory and written in one shot, so
//! a failure never leaves partial output behind.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use heisenberg4::analysis::{
    evaluate_point, sensitivity_loci, sweep, verify_table_with, SweepGrid,
};
use heisenberg4::report::{
    self, loci_to_csv, loci_to_json, loci_to_text, records_to_csv, records_to_json, verify_to_json,
    verify_to_text,
};
use heisenberg4::Error;

#[derive(Parser)]
#[command(
    name = "heisenberg4",
    version,
    about = "Exact dynamics and resource diagnostics of a four-qubit exchange ring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum RecordFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum TextFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum LociFormat {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Convention {
    /// F = Tr sqrt(sqrt(rho) sigma sqrt(rho)) — the default everywhere.
    #[default]
    Sqrt,
    /// The square of the above in the F columns.
    Squared,
}

fn apply_convention(records: &mut [heisenberg4::analysis::MeasureRecord], conv: Convention) {
    if conv == Convention::Squared {
        for r in records {
            r.f_analytic *= r.f_analytic;
            r.f_oracle *= r.f_oracle;
        }
    }
}

/// Inclusive integer range written as `a..b`.
#[derive(Clone, Copy, Debug)]
struct KRange {
    min: i64,
    max: i64,
}

impl FromStr for KRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected an inclusive range like 0..3, got `{s}`"))?;
        let min: i64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad integer `{lo}`"))?;
        let hi = hi.trim().strip_prefix('=').unwrap_or(hi.trim());
        let max: i64 = hi.parse().map_err(|_| format!("bad integer `{hi}`"))?;
        if min > max {
            return Err(format!("empty range {min}..{max}"));
        }
        Ok(KRange { min, max })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every diagnostic at one (alpha, t) point.
    Point {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_enum, default_value_t = RecordFormat::Csv)]
        format: RecordFormat,
        /// Convention of the F columns.
        #[arg(long, value_enum, default_value_t = Convention::Sqrt)]
        fidelity_convention: Convention,
        /// Significant digits in rendered numbers.
        #[arg(long, default_value_t = report::DEFAULT_PRECISION)]
        precision: usize,
        /// Omit the numerically computed oracle columns.
        #[arg(long)]
        no_oracle: bool,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a uniform (alpha, t) grid, row-major (alpha outer).
    Sweep {
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha_max: f64,
        /// Grid points along alpha (endpoints included).
        #[arg(long, default_value_t = 81)]
        alpha_steps: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        t_max: f64,
        /// Grid points along t (endpoints included).
        #[arg(long, default_value_t = 201)]
        t_steps: usize,
        #[arg(long, value_enum, default_value_t = RecordFormat::Csv)]
        format: RecordFormat,
        /// Convention of the F columns.
        #[arg(long, value_enum, default_value_t = Convention::Sqrt)]
        fidelity_convention: Convention,
        #[arg(long, default_value_t = report::DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long)]
        no_oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the pinned reference rows against closed forms and the
    /// numerical oracle; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
        /// Shift the evaluated alpha of every row: a forced-failure
        /// self-test (any nonzero shift must break the digit checks).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        perturb_alpha: f64,
        #[arg(long, default_value_t = report::DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the times where the resource landscape is steepest, plus the
    /// extremum times, for k in an inclusive range.
    Loci {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Inclusive k range, written a..b.
        #[arg(long, default_value = "0..3")]
        k: KRange,
        #[arg(long, value_enum, default_value_t = LociFormat::Text)]
        format: LociFormat,
        #[arg(long, default_value_t = report::DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

enum Failure {
    /// Bad flag combination, rejected before any computation: exit 2.
    Usage(String),
    /// The computation or output itself failed: exit 1.
    Computation(String),
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Point {
            alpha,
            t,
            format,
            fidelity_convention,
            precision,
            no_oracle,
            out,
        } => {
            let mut records =
                [evaluate_point(alpha, t).map_err(|e| Failure::Computation(e.to_string()))?];
            apply_convention(&mut records, fidelity_convention);
            let text = match format {
                RecordFormat::Csv => records_to_csv(&records, precision, !no_oracle),
                RecordFormat::Json => records_to_json(&records, precision, !no_oracle),
            };
            emit(&text, out.as_ref()).map_err(|e| Failure::Computation(e.to_string()))?;
            Ok(0)
        }
        Command::Sweep {
            alpha_min,
            alpha_max,
            alpha_steps,
            t_min,
            t_max,
            t_steps,
            format,
            fidelity_convention,
            precision,
            no_oracle,
            out,
        } => {
            let grid = SweepGrid::new(alpha_min, alpha_max, alpha_steps, t_min, t_max, t_steps)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let mut records = sweep(&grid).map_err(|e| Failure::Computation(e.to_string()))?;
            apply_convention(&mut records, fidelity_convention);
            let text = match format {
                RecordFormat::Csv => records_to_csv(&records, precision, !no_oracle),
                RecordFormat::Json => records_to_json(&records, precision, !no_oracle),
            };
            emit(&text, out.as_ref()).map_err(|e| Failure::Computation(e.to_string()))?;
            Ok(0)
        }
        Command::Verify {
            format,
            perturb_alpha,
            precision,
            out,
        } => {
            let report = verify_table_with(perturb_alpha)
                .map_err(|e| Failure::Computation(e.to_string()))?;
            let text = match format {
                TextFormat::Text => verify_to_text(&report, precision),
                TextFormat::Json => verify_to_json(&report, precision),
            };
            emit(&text, out.as_ref()).map_err(|e| Failure::Computation(e.to_string()))?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Loci {
            alpha,
            k,
            format,
            precision,
            out,
        } => {
            match sensitivity_loci(alpha, k.min, k.max) {
                Ok(loci) => {
                    let text = match format {
                        LociFormat::Text => loci_to_text(alpha, &loci, precision),
                        LociFormat::Csv => loci_to_csv(&loci, precision),
                        LociFormat::Json => loci_to_json(&loci, precision),
                    };
                    emit(&text, out.as_ref()).map_err(|e| Failure::Computation(e.to_string()))?;
                }
                Err(Error::FrozenLine) => {
                    // Informative outcome, not an error: phi never advances.
                    emit(
                        "frozen line: no finite loci (alpha = -1 pins phi = 0 for all t)\n",
                        out.as_ref(),
                    )
                    .map_err(|e| Failure::Computation(e.to_string()))?;
                }
                Err(e) => return Err(Failure::Computation(e.to_string())),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
