//! Command-line front end for `posgen`.
//!
//! Every subcommand reads JSON operands from files, writes its result as JSON
//! (CSV for `trajectory`) to `--out` or standard output, and exits with
//!
//! * `0` on success,
//! * `1` on a domain error, with `{"error": code, "detail": text}` on stderr,
//! * `2` on malformed input or bad usage.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use posgen_core::algebra::{parse_scalar, Scalar};
use posgen_core::evolve::{self, SampleBox};
use posgen_core::json::{self, Wire};
use posgen_core::{
    levy, liegroup, measures, moments, AtomicMeasure, Error, LevyTriplet, MomentSequence,
    Polynomial, PsdVerdict, TruncatedSeries,
};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "posgen",
    version,
    about = "Exact constant-coefficient operator toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Require every operand to have this many variables.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct One {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct Two {
    /// Exactly two operand files.
    #[arg(long = "in", value_name = "FILE", num_args = 1, required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product of two operators.
    Mul(Two),
    /// Group inverse of an operator with constant term 1.
    Inv(One),
    /// Exponential of an operator with constant term 0.
    Exp(One),
    /// Logarithm of an operator with constant term 1.
    Log(One),
    /// Operator Σ (s_α/α!) ∂^α of a moment sequence.
    Dmap(One),
    /// Moment sequence α! q_α of an operator.
    Dinv(One),
    /// Binomial convolution of two moment sequences.
    ConvolveSeq(Two),
    /// Moments of an atomic measure up to a degree.
    Moments {
        #[command(flatten)]
        io: One,
        #[arg(long)]
        degree: u32,
    },
    /// Convolution of two atomic measures, or a convolution power of one.
    ConvolveMeasure {
        #[arg(long = "in", value_name = "FILE", required = true)]
        inputs: Vec<PathBuf>,
        /// Convolution power of a single measure.
        #[arg(long, allow_hyphen_values = true)]
        power: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Apply an operator or an atomic measure to a polynomial.
    Apply {
        #[command(flatten)]
        io: One,
        #[arg(long, value_name = "FILE")]
        poly: PathBuf,
    },
    /// Moment-matrix test of an operator at a level.
    CheckPreserver {
        #[command(flatten)]
        io: One,
        #[arg(long)]
        level: u32,
    },
    /// Generator built from a Lévy triplet.
    LevyBuild {
        #[arg(long, value_name = "FILE")]
        triplet: PathBuf,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Refutation probes for a candidate generator over times and dilations.
    CheckGenerator {
        #[command(flatten)]
        io: One,
        #[arg(long)]
        level: u32,
        #[arg(long = "t", value_parser = rational, allow_hyphen_values = true)]
        times: Vec<Scalar>,
        #[arg(long = "lambda", value_parser = rational, allow_hyphen_values = true)]
        lambdas: Vec<Scalar>,
        /// Normalization degree of the dilation family (default: top degree).
        #[arg(long)]
        degree: Option<u32>,
    },
    /// exp(tA) applied to a polynomial.
    Evolve {
        #[command(flatten)]
        io: One,
        #[arg(long, value_name = "FILE")]
        poly: PathBuf,
        #[arg(long = "t", value_parser = rational, allow_hyphen_values = true)]
        t: Scalar,
    },
    /// Evolved coefficients at several times, as CSV.
    Trajectory {
        #[command(flatten)]
        io: One,
        #[arg(long, value_name = "FILE")]
        poly: PathBuf,
        #[arg(long = "t", value_parser = rational, allow_hyphen_values = true, required = true)]
        times: Vec<Scalar>,
    },
    /// Nonnegativity: exact for one variable, grid sampling with --grid/--box.
    Nonneg {
        #[arg(long, value_name = "FILE")]
        poly: PathBuf,
        /// Grid points per axis.
        #[arg(long)]
        grid: Option<u32>,
        /// Sampling box, e.g. `-1:1,-2:2`.
        #[arg(long, value_parser = sample_box, allow_hyphen_values = true)]
        r#box: Option<SampleBox>,
        #[command(flatten)]
        output: Output,
    },
}

fn rational(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

fn sample_box(s: &str) -> Result<SampleBox, String> {
    s.split(',')
        .map(|side| {
            let (lo, hi) = side
                .split_once(':')
                .ok_or_else(|| format!("interval {side:?} is not of the form lo:hi"))?;
            Ok((rational(lo.trim())?, rational(hi.trim())?))
        })
        .collect()
}

/// Why a command did not complete.
#[derive(Debug)]
enum Failure {
    /// Unreadable or malformed input (exit 2).
    Input { code: &'static str, detail: String },
    /// A well-formed request outside an operation's domain (exit 1).
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Input {
                code: e.code(),
                detail: e.to_string(),
            }
        } else {
            Failure::Domain(e)
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    detail: &'a str,
}

type Outcome = Result<(), Failure>;

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let (code, report) = match execute(cli.command, stdout) {
        Ok(()) => return 0,
        Err(Failure::Input { code, detail }) => (2, (code.to_string(), detail)),
        Err(Failure::Domain(e)) => (1, (e.code().to_string(), e.to_string())),
    };
    let report = ErrorReport {
        error: &report.0,
        detail: &report.1,
    };
    let _ = writeln!(
        stderr,
        "{}",
        serde_json::to_string(&report).expect("serializable")
    );
    code
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input {
        code: "io_error",
        detail: format!("{}: {e}", path.display()),
    })
}

/// Parse errors name the offending file; semantic errors pass through.
fn input_failure(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse(msg) => Failure::Input {
            code: "parse_error",
            detail: format!("{}: {msg}", path.display()),
        },
        other => Failure::Domain(other),
    }
}

fn read<T: Wire>(path: &Path) -> Result<T, Failure> {
    json::from_str(&read_text(path)?).map_err(|e| input_failure(path, e))
}

fn emit(text: &str, output: &Output, stdout: &mut dyn Write) -> Outcome {
    let io_failure = |e: std::io::Error| Failure::Input {
        code: "io_error",
        detail: e.to_string(),
    };
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input {
            code: "io_error",
            detail: format!("{}: {e}", path.display()),
        }),
        None => stdout.write_all(text.as_bytes()).map_err(io_failure),
    }
}

fn emit_value<T: Wire>(value: &T, output: &Output, stdout: &mut dyn Write) -> Outcome {
    emit(&json::to_string(value), output, stdout)
}

fn check_n(output: &Output, found: usize) -> Outcome {
    match output.n {
        Some(expected) if expected != found => Err(Failure::Domain(Error::DimensionMismatch {
            expected,
            found,
        })),
        _ => Ok(()),
    }
}

fn pair<T: Wire>(inputs: &[PathBuf]) -> Result<(T, T), Failure> {
    if inputs.len() != 2 {
        return Err(Failure::Input {
            code: "usage",
            detail: format!("expected exactly two --in operands, got {}", inputs.len()),
        });
    }
    Ok((read(&inputs[0])?, read(&inputs[1])?))
}

/// An operand of `apply`: either an operator or an atomic measure.
enum Applicable {
    Operator(TruncatedSeries),
    Measure(AtomicMeasure),
}

fn read_applicable(path: &Path) -> Result<Applicable, Failure> {
    let text = read_text(path)?;
    let looks_like_measure = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("atoms").is_some())
        .unwrap_or(false);
    let parsed = if looks_like_measure {
        json::from_str(&text).map(Applicable::Measure)
    } else {
        json::from_str(&text).map(Applicable::Operator)
    };
    parsed.map_err(|e| input_failure(path, e))
}

#[derive(Serialize)]
struct ProbeEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(flatten)]
    verdict: json::VerdictRepr,
}

#[derive(Serialize)]
struct ProbeReport {
    level: u32,
    refuted: bool,
    times: Vec<ProbeEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalization: Option<u32>,
    dilations: Vec<ProbeEntry>,
}

fn execute(command: Command, stdout: &mut dyn Write) -> Outcome {
    match command {
        Command::Mul(Two { inputs, output }) => {
            let (a, b): (TruncatedSeries, TruncatedSeries) = pair(&inputs)?;
            check_n(&output, a.n())?;
            emit_value(&liegroup::mul(&a, &b)?, &output, stdout)
        }
        Command::Inv(io) => unary(io, stdout, |a: TruncatedSeries| liegroup::inverse(&a)),
        Command::Exp(io) => unary(io, stdout, |a: TruncatedSeries| liegroup::exp(&a)),
        Command::Log(io) => unary(io, stdout, |a: TruncatedSeries| liegroup::log(&a)),
        Command::Dmap(io) => unary(io, stdout, |s: MomentSequence| Ok(moments::d_map(&s))),
        Command::Dinv(io) => unary(io, stdout, |a: TruncatedSeries| Ok(moments::d_inv(&a))),
        Command::ConvolveSeq(Two { inputs, output }) => {
            let (s, t): (MomentSequence, MomentSequence) = pair(&inputs)?;
            check_n(&output, s.n())?;
            emit_value(&moments::seq_convolve(&s, &t)?, &output, stdout)
        }
        Command::Moments { io, degree } => {
            let m: AtomicMeasure = read(&io.input)?;
            check_n(&io.output, m.n())?;
            emit_value(&measures::measure_moments(&m, degree), &io.output, stdout)
        }
        Command::ConvolveMeasure {
            inputs,
            power,
            output,
        } => {
            let result = match (power, inputs.as_slice()) {
                (Some(k), [single]) => {
                    let m: AtomicMeasure = read(single)?;
                    check_n(&output, m.n())?;
                    measures::power_convolve(&m, k)?
                }
                (None, _) => {
                    let (a, b): (AtomicMeasure, AtomicMeasure) = pair(&inputs)?;
                    check_n(&output, a.n())?;
                    measures::convolve(&a, &b)?
                }
                (Some(_), _) => {
                    return Err(Failure::Input {
                        code: "usage",
                        detail: "--power takes exactly one --in operand".into(),
                    })
                }
            };
            emit_value(&result, &output, stdout)
        }
        Command::Apply { io, poly } => {
            let p: Polynomial = read(&poly)?;
            check_n(&io.output, p.n())?;
            let result = match read_applicable(&io.input)? {
                Applicable::Operator(a) => liegroup::apply(&a, &p)?,
                Applicable::Measure(m) => measures::apply_measure(&m, &p)?,
            };
            emit_value(&result, &io.output, stdout)
        }
        Command::CheckPreserver { io, level } => {
            let a: TruncatedSeries = read(&io.input)?;
            check_n(&io.output, a.n())?;
            emit_value(&moments::check_preserver(&a, level)?, &io.output, stdout)
        }
        Command::LevyBuild {
            triplet,
            degree,
            output,
        } => {
            let t: LevyTriplet = read(&triplet)?;
            check_n(&output, t.n())?;
            emit_value(&levy::generator_from_triplet(&t, degree)?, &output, stdout)
        }
        Command::CheckGenerator {
            io,
            level,
            times,
            lambdas,
            degree,
        } => {
            let a: TruncatedSeries = read(&io.input)?;
            check_n(&io.output, a.n())?;
            let grid = levy::check_generator_grid(&a, &times, level)?;
            let k = degree.unwrap_or_else(|| a.top_degree().unwrap_or(0));
            let scaled = if lambdas.is_empty() {
                Vec::new()
            } else {
                levy::scaled_family_probe(&a, k, &lambdas, level)?
            };
            let entry = |t: Option<&Scalar>, l: Option<&Scalar>, v: &PsdVerdict| ProbeEntry {
                t: t.map(ToString::to_string),
                lambda: l.map(ToString::to_string),
                verdict: v.to_repr(),
            };
            let report = ProbeReport {
                level,
                refuted: grid.iter().chain(&scaled).any(PsdVerdict::is_violated),
                times: times
                    .iter()
                    .zip(&grid)
                    .map(|(t, v)| entry(Some(t), None, v))
                    .collect(),
                normalization: (!lambdas.is_empty()).then_some(k),
                dilations: lambdas
                    .iter()
                    .zip(&scaled)
                    .map(|(l, v)| entry(None, Some(l), v))
                    .collect(),
            };
            let mut text = serde_json::to_string_pretty(&report).expect("serializable");
            text.push('\n');
            emit(&text, &io.output, stdout)
        }
        Command::Evolve { io, poly, t } => {
            let a: TruncatedSeries = read(&io.input)?;
            let p: Polynomial = read(&poly)?;
            check_n(&io.output, a.n())?;
            emit_value(&evolve::evolve(&a, &p, &t)?, &io.output, stdout)
        }
        Command::Trajectory { io, poly, times } => {
            let a: TruncatedSeries = read(&io.input)?;
            let p: Polynomial = read(&poly)?;
            check_n(&io.output, a.n())?;
            let polys = evolve::trajectory(&a, &p, &times)?;
            let (header, rows) = evolve::trajectory_table(&times, &polys);
            let mut writer = csv::Writer::from_writer(Vec::new());
            let csv_failure = |e: csv::Error| Failure::Input {
                code: "io_error",
                detail: e.to_string(),
            };
            writer.write_record(&header).map_err(csv_failure)?;
            for row in &rows {
                writer.write_record(row).map_err(csv_failure)?;
            }
            let bytes = writer.into_inner().map_err(|e| Failure::Input {
                code: "io_error",
                detail: e.to_string(),
            })?;
            emit(
                &String::from_utf8(bytes).expect("utf-8"),
                &io.output,
                stdout,
            )
        }
        Command::Nonneg {
            poly,
            grid,
            r#box,
            output,
        } => {
            let p: Polynomial = read(&poly)?;
            check_n(&output, p.n())?;
            match (grid, r#box) {
                (None, None) if p.n() == 1 => {
                    emit_value(&evolve::nonneg_univariate(&p)?, &output, stdout)
                }
                (Some(per_axis), Some(bounds)) => emit_value(
                    &evolve::nonneg_grid(&p, &bounds, per_axis)?,
                    &output,
                    stdout,
                ),
                (None, None) => Err(Failure::Domain(Error::InvalidArgument(
                    "exact nonnegativity needs one variable; pass --grid and --box to sample"
                        .into(),
                ))),
                _ => Err(Failure::Input {
                    code: "usage",
                    detail: "--grid and --box must be given together".into(),
                }),
            }
        }
    }
}

fn unary<A: Wire + HasDim, B: Wire>(
    io: One,
    stdout: &mut dyn Write,
    f: impl FnOnce(A) -> posgen_core::Result<B>,
) -> Outcome {
    let a: A = read(&io.input)?;
    check_n(&io.output, a.dim())?;
    emit_value(&f(a)?, &io.output, stdout)
}

trait HasDim {
    fn dim(&self) -> usize;
}

impl<K: posgen_core::algebra::Kind> HasDim for posgen_core::Graded<K> {
    fn dim(&self) -> usize {
        self.n()
    }
}
