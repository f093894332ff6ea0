//! Command-line front end: argument parsing, table generation, JSON/CSV
//! emission and the self-test. The `unext` binary is a thin wrapper around
//! [`run`].

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::{
    limit_bound, optimize_k, post_processing_bound, theorem3_bound, BoundQuery, BoundResult,
    ExtOrder, Method,
};
use crate::error::{Error, Result};
use crate::extendibility::{
    check_k_extendible, ExtStatus, ExtensionProblem, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use crate::hypothesis::{np_divergence_with, Engine, NpResult};
use crate::linalg::MatrixFile;
use crate::states::{ChannelKind, ChannelSpec, DensityMatrix, NamedState};

pub mod selftest;

pub use selftest::{run_selftest, run_selftest_with, SelftestOptions, SelftestReport};

/// First line of every CSV file.
pub const CSV_HEADER_COMMENT: &str = "#unext-bounds v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

/// Default upper end of the extension-order scan for `--k opt`.
pub const DEFAULT_K_MAX: u32 = 1024;

#[derive(Debug, Parser)]
#[command(
    name = "unext",
    about = "Unextendibility bounds on quantum communication rates"
)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Depolarizing,
    Erasure,
}

impl From<ChannelArg> for ChannelKind {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Depolarizing => ChannelKind::Depolarizing,
            ChannelArg::Erasure => ChannelKind::Erasure,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Log,
    Exact,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rate upper bound for the depolarizing or erasure channel.
    Bound {
        #[arg(long, value_enum)]
        channel: ChannelArg,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
        n: Option<u32>,
        /// Inclusive range `a..b`.
        #[arg(long)]
        n_range: Option<String>,
        /// Extension order: an integer, `inf`, or `opt`.
        #[arg(long, default_value = "opt")]
        k: String,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        sigma_param: Option<f64>,
        /// Use the interleaved-protocol (max-relative entropy) bound.
        #[arg(long)]
        interleaved: bool,
        /// Report (1/n) log2 M instead of log2 M.
        #[arg(long)]
        per_use: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Table behind the rate-versus-n figures.
    Figure {
        #[arg(long, value_enum)]
        channel: ChannelArg,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Neyman-Pearson divergence between Bernoulli products.
    Np {
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        eps: String,
        #[arg(long, value_enum, default_value = "log")]
        engine: EngineArg,
    },
    /// k-extendibility check of a named state or a JSON matrix file.
    Check {
        /// `max-entangled:m`, `isotropic:t:d`, `depolarizing-choi:p`,
        /// `erasure:q`, or a path to a JSON matrix.
        state: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Oracle agreement, certificate and cross-module consistency checks.
    Selftest,
}

/// One row of a rate-versus-n table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub n: u32,
    pub rate_primary: f64,
    pub rate_limit: f64,
    pub k_used: ExtOrder,
    pub method: Method,
    pub sigma_param_used: f64,
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("UNEXT_THREADS") {
        let threads: usize = v
            .parse()
            .map_err(|_| Error::Parse(format!("UNEXT_THREADS='{v}' is not an integer")))?;
        if threads > 0 {
            builder = builder.num_threads(threads);
        }
    }
    builder
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))
}

/// Optimized bound and `k → ∞` limit for `n = 1..=n_max`, in `n` order.
pub fn run_figure(
    kind: ChannelKind,
    p: f64,
    eps: f64,
    n_max: u32,
    k_max: u32,
) -> Result<Vec<FigureRow>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let channel = ChannelSpec::new(kind, p)?;
    BoundQuery::new(channel, 1, eps, ExtOrder::Infinity)?;
    let pool = thread_pool()?;
    pool.install(|| {
        (1..=n_max)
            .into_par_iter()
            .map(|n| {
                let best = optimize_k(channel, n, eps, k_max)?;
                let limit = limit_bound(channel, n, eps)?;
                Ok(FigureRow {
                    n,
                    rate_primary: best.rate_bound,
                    rate_limit: limit.rate_bound,
                    k_used: best.k_used,
                    method: best.method,
                    sigma_param_used: best.sigma_param_used,
                })
            })
            .collect()
    })
}

/// Parses `a..b` or `a:b` (inclusive).
pub fn parse_n_range(s: &str) -> Result<std::ops::RangeInclusive<u32>> {
    let (a, b) = s
        .split_once("..")
        .or_else(|| s.split_once(':'))
        .ok_or_else(|| Error::Parse(format!("bad n range '{s}', expected a..b")))?;
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad n range '{s}'")))?;
    let b: u32 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| Error::Parse(format!("bad n range '{s}'")))?;
    if a == 0 || b < a {
        return Err(Error::Parse(format!(
            "n range '{s}' must satisfy 1 <= a <= b"
        )));
    }
    Ok(a..=b)
}

fn csv_number(x: f64) -> String {
    if x.is_infinite() && x > 0.0 {
        "inf".into()
    } else if x.is_nan() {
        "nan".into()
    } else {
        format!("{x}")
    }
}

fn json_rate(x: f64) -> (Value, bool) {
    if x.is_infinite() {
        (Value::Null, true)
    } else {
        (json!(x), false)
    }
}

fn json_number(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn reported(r: &BoundResult, per_use: bool) -> f64 {
    if per_use {
        r.rate_bound
    } else {
        r.log2_m()
    }
}

/// Writes bound rows as CSV with the versioned header comment.
pub fn bounds_to_csv(rows: &[BoundResult], per_use: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Numerical(format!("csv: {e}"));
    w.write_record([
        "n",
        "rate_bound",
        "k_used",
        "sigma_param_used",
        "method",
        "divergence",
    ])
    .map_err(io)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            csv_number(reported(r, per_use)),
            r.k_used.to_string(),
            csv_number(r.sigma_param_used),
            r.method.as_str().to_string(),
            csv_number(r.divergence),
        ])
        .map_err(io)?;
    }
    let body = String::from_utf8(
        w.into_inner()
            .map_err(|e| Error::Numerical(e.to_string()))?,
    )
    .expect("csv output is UTF-8");
    Ok(format!("{CSV_HEADER_COMMENT}\n{body}"))
}

pub fn bounds_to_json(rows: &[BoundResult], per_use: bool) -> String {
    let items: Vec<Value> = rows
        .iter()
        .map(|r| {
            let (rate, vacuous) = json_rate(reported(r, per_use));
            json!({
                "n": r.n,
                "rate_bound": rate,
                "vacuous": vacuous,
                "k_used": r.k_used,
                "sigma_param_used": json_number(r.sigma_param_used),
                "method": r.method.as_str(),
                "divergence": json_number(r.divergence),
                "sigma_provenance": r.sigma_provenance,
            })
        })
        .collect();
    serde_json::to_string_pretty(&Value::Array(items)).expect("JSON serialization")
}

pub fn figure_to_csv(rows: &[FigureRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Numerical(format!("csv: {e}"));
    w.write_record(["n", "rate_primary", "rate_limit", "k_used", "method"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            csv_number(r.rate_primary),
            csv_number(r.rate_limit),
            r.k_used.to_string(),
            r.method.as_str().to_string(),
        ])
        .map_err(io)?;
    }
    let body = String::from_utf8(
        w.into_inner()
            .map_err(|e| Error::Numerical(e.to_string()))?,
    )
    .expect("csv output is UTF-8");
    Ok(format!("{CSV_HEADER_COMMENT}\n{body}"))
}

pub fn figure_to_json(rows: &[FigureRow]) -> String {
    let items: Vec<Value> = rows
        .iter()
        .map(|r| {
            let (primary, vacuous) = json_rate(r.rate_primary);
            let (limit, limit_vacuous) = json_rate(r.rate_limit);
            json!({
                "n": r.n,
                "rate_primary": primary,
                "vacuous": vacuous,
                "rate_limit": limit,
                "limit_vacuous": limit_vacuous,
                "k_used": r.k_used,
                "method": r.method.as_str(),
            })
        })
        .collect();
    serde_json::to_string_pretty(&Value::Array(items)).expect("JSON serialization")
}

/// JSON for the `np` subcommand.
pub fn np_to_json(r: &NpResult) -> String {
    let d = r.divergence();
    let (d_value, vacuous) = json_rate(d);
    serde_json::to_string_pretty(&json!({
        "D": d_value,
        "infinite": vacuous,
        "beta": r.beta(),
        "threshold_weight": r.threshold_weight,
        "gamma": r.gamma,
    }))
    .expect("JSON serialization")
}

/// Verdict of the `check` subcommand and its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub status: ExtStatus,
    pub residual: f64,
    pub iterations: usize,
}

impl CheckReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            ExtStatus::Feasible => EXIT_OK,
            ExtStatus::InfeasibleSignal => EXIT_INFEASIBLE,
            ExtStatus::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&json!({
            "status": self.status.as_str(),
            "residual": json_number(self.residual),
            "iterations": self.iterations,
        }))
        .expect("JSON serialization")
    }
}

/// Reads a state from a named-state string or a JSON matrix file.
pub fn load_state(spec: &str) -> Result<DensityMatrix> {
    match spec.parse::<NamedState>() {
        Ok(named) => named.build(),
        Err(named_err) => {
            let path = std::path::Path::new(spec);
            if !path.exists() {
                return Err(named_err);
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let (m, dims) = MatrixFile::from_json(&text)?.into_matrix()?;
            DensityMatrix::new(m, dims)
        }
    }
}

pub fn run_check(state: &str, k: usize, tol: f64, max_iter: usize) -> Result<CheckReport> {
    let rho = load_state(state)?;
    let v = check_k_extendible(&ExtensionProblem::with_options(rho, k, tol, max_iter)?)?;
    Ok(CheckReport {
        status: v.status,
        residual: v.residual,
        iterations: v.iterations,
    })
}

fn bound_rows(
    channel: ChannelSpec,
    ns: Vec<u32>,
    eps: f64,
    k: &str,
    k_max: Option<u32>,
    sigma_param: Option<f64>,
    interleaved: bool,
) -> Result<Vec<BoundResult>> {
    let pool = thread_pool()?;
    pool.install(|| {
        ns.into_par_iter()
            .map(|n| {
                if k == "opt" {
                    if sigma_param.is_some() || interleaved {
                        return Err(Error::InvalidParameter(
                            "--k opt cannot be combined with --sigma-param or --interleaved".into(),
                        ));
                    }
                    return optimize_k(channel, n, eps, k_max.unwrap_or(DEFAULT_K_MAX));
                }
                let mut q = BoundQuery::new(channel, n, eps, k.parse()?)?;
                if let Some(x) = sigma_param {
                    q = q.with_sigma_param(x);
                }
                if interleaved {
                    theorem3_bound(&q)
                } else {
                    post_processing_bound(&q)
                }
            })
            .collect()
    })
}

fn emit(text: &str, output: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Numerical(format!("write failed: {e}"));
    match output {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => {
            out.write_all(text.as_bytes()).map_err(io)?;
            if !text.ends_with('\n') {
                out.write_all(b"\n").map_err(io)?;
            }
            Ok(())
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Numerical(_) => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

fn execute(inv: Invocation, out: &mut dyn Write) -> Result<i32> {
    match inv.command {
        Command::Bound {
            channel,
            p,
            eps,
            n,
            n_range,
            k,
            k_max,
            sigma_param,
            interleaved,
            per_use,
            out: o,
        } => {
            let ns: Vec<u32> = match (n, n_range) {
                (Some(n), None) => vec![n],
                (None, Some(r)) => parse_n_range(&r)?.collect(),
                _ => {
                    return Err(Error::Parse(
                        "exactly one of --n and --n-range is required".into(),
                    ))
                }
            };
            let channel = ChannelSpec::new(channel.into(), p)?;
            let rows = bound_rows(channel, ns, eps, &k, k_max, sigma_param, interleaved)?;
            let text = match o.format {
                Format::Csv => bounds_to_csv(&rows, per_use)?,
                Format::Json => bounds_to_json(&rows, per_use),
            };
            emit(&text, o.output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Figure {
            channel,
            p,
            eps,
            n_max,
            k_max,
            format,
            output,
        } => {
            let rows = run_figure(channel.into(), p, eps, n_max, k_max)?;
            let text = match format {
                Format::Csv => figure_to_csv(&rows)?,
                Format::Json => figure_to_json(&rows),
            };
            emit(&text, output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Np {
            p,
            t,
            n,
            eps,
            engine,
        } => {
            let engine = match engine {
                EngineArg::Log => Engine::Log,
                EngineArg::Exact => Engine::Exact,
            };
            let r = np_divergence_with(engine, &p, &t, n, &eps)?;
            emit(&np_to_json(&r), None, out)?;
            Ok(EXIT_OK)
        }
        Command::Check {
            state,
            k,
            tol,
            max_iter,
        } => {
            let report = run_check(&state, k, tol, max_iter)?;
            emit(&report.to_json(), None, out)?;
            Ok(report.exit_code())
        }
        Command::Selftest => {
            let report = run_selftest();
            emit(&report.render(), None, out)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_NUMERICAL
            })
        }
    }
}

/// Parses `args` (program name first), runs the subcommand, and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(inv, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}
