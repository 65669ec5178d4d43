use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use padicwave_core::fourier::{fourier, inverse_fourier};
use padicwave_core::pseudodiff::{apply, gamma_p};
use padicwave_core::solver::{solve, SpectralProblem};
use padicwave_core::{Prime, TestFunction};

use crate::campaign::{eigen_run, verify_basis};
use crate::config::{RunConfig, DEFAULT_BASIS_TOL, DEFAULT_EIGEN_TOL, TOL_ENV};
use crate::dto::{parse_complex, parse_digits, parse_symbol, ProblemDto, SolutionDto, TestFunctionDto, WaveletIndexDto};
use crate::error::{exit, CliError, Result};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "padicwave", version, about = "p-adic wavelets, Fourier transforms and pseudo-differential operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads for independent checks (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orthonormality, zero mean, Fourier closed form, Parseval and two-scale checks.
    VerifyBasis {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// m_j per axis, comma separated; a single value applies to every axis.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        m: Vec<u32>,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        gamma_min: i64,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        gamma_max: i64,
        #[arg(long, env = TOL_ENV)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled index pairs.
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        /// Number of sampled single indices.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Is a wavelet an eigenfunction of the operator with the given symbol?
    Eigen {
        #[arg(long)]
        p: u64,
        /// power:<α>, pv, log, constant:<c>, a JSON object or @file.json.
        #[arg(long)]
        symbol: String,
        #[arg(long, allow_negative_numbers = true)]
        gamma: i64,
        /// Digits of s per axis, e.g. "1,0;2" (axes split by ';').
        #[arg(long)]
        s: String,
        /// Digits of a per axis; empty means a = 0.
        #[arg(long, default_value = "")]
        a: String,
        #[arg(long, env = TOL_ENV)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Apply a pseudo-differential operator to a test function.
    Apply {
        #[arg(long)]
        symbol: String,
        /// Test function JSON.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Fourier transform of a test function.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Solve A u = f over a wavelet span.
    Solve {
        /// Problem JSON: symbol, rhs, indices or span, tolerance.
        #[arg(long)]
        problem: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// The gamma factor (1 - p^{α-n}) / (1 - p^{-α}).
    Gamma {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Complex α: 2, 1+1i, 0.5,-1.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        output: Output,
    },
}

/// Parse arguments, run, print any error, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("padicwave: error: {}", e);
            e.exit_code()
        }
    }
}

fn with_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(pool.install(f))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn emit_report(report: &Report, output: &Output) -> Result<i32> {
    let text = match output.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    emit(output.out.as_deref(), &text)?;
    Ok(if report.all_passed() { exit::PASS } else { exit::CHECK_FAILED })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<const K: usize>(header: [&str; K], rows: impl IntoIterator<Item = [String; K]>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?).expect("csv output is utf-8"))
}

fn digits_text(d: &[Vec<u64>]) -> String {
    d.iter()
        .map(|axis| axis.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn emit_function(f: &TestFunction, output: &Output) -> Result<i32> {
    let dto = TestFunctionDto::from_function(f);
    let text = match output.format {
        Format::Json => to_json(&dto)?,
        Format::Csv => csv_rows(
            ["cell", "re", "im"],
            dto.coeffs.iter().map(|c| [digits_text(&c.cell), c.re.to_string(), c.im.to_string()]),
        )?,
    };
    emit(output.out.as_deref(), &text)?;
    Ok(exit::PASS)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let body = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    Ok(serde_json::from_str(&body)?)
}

fn prime(p: u64) -> Result<Prime> {
    Prime::new(p).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn execute(command: Command) -> Result<i32> {
    match command {
        Command::VerifyBasis { p, n, m, gamma_min, gamma_max, tol, seed, pairs, trials, output } => {
            let tol = tol.unwrap_or(DEFAULT_BASIS_TOL);
            let cfg = RunConfig::new(p, n, m, gamma_min, gamma_max, tol, seed, pairs, trials)?;
            let report = with_pool(output.jobs, || verify_basis(&cfg))??;
            emit_report(&report, &output)
        }
        Command::Eigen { p, symbol, gamma, s, a, tol, output } => {
            let p = prime(p)?;
            let s = parse_digits(&s)?;
            let a = if a.trim().is_empty() { Vec::new() } else { parse_digits(&a)? };
            let idx = WaveletIndexDto { gamma, s, a }.to_index(p)?;
            let symbol = parse_symbol(&symbol, Some(p), Some(idx.dim()))?;
            let tol = tol.unwrap_or(DEFAULT_EIGEN_TOL);
            let report = with_pool(output.jobs, || eigen_run(&symbol, &idx, tol))??;
            emit_report(&report, &output)
        }
        Command::Apply { symbol, input, output } => {
            let f = read_json::<TestFunctionDto>(&input)?.to_function()?;
            let symbol = parse_symbol(&symbol, Some(f.prime()), Some(f.dim()))?;
            emit_function(&apply(&symbol, &f)?, &output)
        }
        Command::Transform { input, inverse, output } => {
            let f = read_json::<TestFunctionDto>(&input)?.to_function()?;
            let g = if inverse { inverse_fourier(&f)? } else { fourier(&f)? };
            emit_function(&g, &output)
        }
        Command::Solve { problem, output } => {
            let dto: ProblemDto = read_json(&problem)?;
            let (symbol, rhs, indices) = dto.parts()?;
            let problem = SpectralProblem::new(symbol, rhs, indices, dto.tolerance)?;
            let sol = SolutionDto::from_solution(&solve(&problem)?);
            let text = match output.format {
                Format::Json => to_json(&sol)?,
                Format::Csv => csv_rows(
                    ["gamma", "s", "a", "re", "im"],
                    sol.coefficients.iter().map(|c| {
                        [
                            c.index.gamma.to_string(),
                            digits_text(&c.index.s),
                            digits_text(&c.index.a),
                            c.re.to_string(),
                            c.im.to_string(),
                        ]
                    }),
                )?,
            };
            emit(output.out.as_deref(), &text)?;
            Ok(exit::PASS)
        }
        Command::Gamma { p, n, alpha, output } => {
            let p = prime(p)?;
            if n == 0 {
                return Err(CliError::Usage("dimension must be at least 1".into()));
            }
            let g = gamma_p(p, n, parse_complex(&alpha)?)?;
            let text = match output.format {
                Format::Json => to_json(&json!({
                    "p": p.get(),
                    "n": n,
                    "alpha": { "re": g.alpha.re, "im": g.alpha.im },
                    "value": { "re": g.value.re, "im": g.value.im },
                }))?,
                Format::Csv => csv_rows(
                    ["p", "n", "alpha_re", "alpha_im", "value_re", "value_im"],
                    [[
                        p.get().to_string(),
                        n.to_string(),
                        g.alpha.re.to_string(),
                        g.alpha.im.to_string(),
                        g.value.re.to_string(),
                        g.value.im.to_string(),
                    ]],
                )?,
            };
            emit(output.out.as_deref(), &text)?;
            Ok(exit::PASS)
        }
    }
}
