//! Command-line front end. Exit codes: 0 success, 1 usage or module error,
//! 2 engine/oracle disagreement.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::engine;
use crate::error::Error;
use crate::oracle::{cohomology_oracle, compare};
use crate::report::{CohomologyReport, ReportSource};
use crate::solver::enumerate_affine;
use crate::toric::{PoissonEntryJson, PoissonStructure, Space, SpaceKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

/// Bound on numerators and denominators of `--poisson random` entries.
pub const RANDOM_ENTRY_BOUND: i64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Cpn,
    Cn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closed,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "toric-poisson",
    version,
    about = "Poisson cohomology of toric Poisson structures on CP^n and C^n"
)]
struct Args {
    /// Ambient space: projective (cpn) or affine (cn).
    #[arg(long, value_enum, required_unless_present = "verify_report")]
    space: Option<SpaceArg>,
    /// Complex dimension n.
    #[arg(long = "dim", required_unless_present = "verify_report")]
    dim: Option<usize>,
    /// std | zero | random | inline JSON entries | @file.
    #[arg(long, default_value = "std")]
    poisson: String,
    /// Highest degree to report (defaults to n).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "closed")]
    mode: Mode,
    /// Bound on Σ max(m_j, 0) for affine weight listings.
    #[arg(long = "degree-bound")]
    degree_bound: Option<u64>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Print explicit basis elements (closed mode).
    #[arg(long)]
    basis: bool,
    /// Seed for `--poisson random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Re-derive a JSON report and check it reproduces exactly.
    #[arg(long = "verify-report", value_name = "FILE")]
    verify_report: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoissonSource {
    Standard,
    Zero,
    Random { seed: u64 },
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputeConfig {
    pub space: Space,
    pub poisson: PoissonStructure,
    pub source: PoissonSource,
    pub k_max: usize,
    pub mode: Mode,
    pub degree_bound: Option<u64>,
    pub format: Format,
    pub with_basis: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunConfig {
    Compute(ComputeConfig),
    Verify { path: PathBuf },
}

/// Parse failure: either a usage error, or a help/version request that
/// should be printed and exit successfully.
#[derive(Debug)]
pub struct ParseFailure {
    pub message: String,
    pub code: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn usage(msg: impl Into<String>) -> ParseFailure {
    ParseFailure {
        message: format!("error: {}\n", msg.into()),
        code: EXIT_USAGE,
    }
}

/// Parses and validates command-line arguments (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| {
        let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        ParseFailure {
            message: e.render().to_string(),
            code,
        }
    })?;
    if let Some(path) = args.verify_report {
        return Ok(RunConfig::Verify { path });
    }
    let (Some(kind), Some(n)) = (args.space, args.dim) else {
        return Err(usage("--space and --dim are required"));
    };
    let kind = match kind {
        SpaceArg::Cpn => SpaceKind::Projective,
        SpaceArg::Cn => SpaceKind::Affine,
    };
    let space = Space::new(kind, n).map_err(|e| usage(e.to_string()))?;
    let (poisson, source) = parse_poisson(&args.poisson, n, args.seed)?;
    let k_max = args.k.unwrap_or(n);
    if !space.is_projective() && args.degree_bound.is_none() {
        if args.mode != Mode::Closed {
            return Err(usage("the oracle on C^n needs --degree-bound"));
        }
        let enumeration = enumerate_affine(space, k_max.min(n), &poisson, None)
            .map_err(|e| usage(e.to_string()))?;
        if !enumeration.all_finite() {
            return Err(usage(format!(
                "--degree-bound is required: infinite weight families for minus-sets {:?}",
                enumeration.infinite_patterns()
            )));
        }
    }
    Ok(RunConfig::Compute(ComputeConfig {
        space,
        poisson,
        source,
        k_max,
        mode: args.mode,
        degree_bound: args.degree_bound,
        format: args.format,
        with_basis: args.basis,
    }))
}

fn parse_poisson(
    arg: &str,
    n: usize,
    seed: u64,
) -> Result<(PoissonStructure, PoissonSource), ParseFailure> {
    match arg {
        "std" => Ok((PoissonStructure::standard(n), PoissonSource::Standard)),
        "zero" => Ok((PoissonStructure::zero(n), PoissonSource::Zero)),
        "random" => {
            let mut rng = StdRng::seed_from_u64(seed);
            Ok((
                PoissonStructure::random(n, RANDOM_ENTRY_BOUND, &mut rng),
                PoissonSource::Random { seed },
            ))
        }
        _ => {
            let text = match arg.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read {path}: {e}")))?,
                None => arg.to_string(),
            };
            Ok((
                parse_poisson_json(&text, n).map_err(|e| usage(e.to_string()))?,
                PoissonSource::Explicit,
            ))
        }
    }
}

/// Accepts `[{"i":1,"j":2,"a":"1-i"}, ...]` or `{"n":2,"entries":[...]}`.
pub fn parse_poisson_json(text: &str, n: usize) -> crate::Result<PoissonStructure> {
    if let Ok(entries) = serde_json::from_str::<Vec<PoissonEntryJson>>(text) {
        return PoissonStructure::from_entries_json(n, &entries);
    }
    let pi: PoissonStructure = serde_json::from_str(text)
        .map_err(|e| Error::Toric(format!("invalid Poisson structure JSON: {e}")))?;
    if pi.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: pi.n(),
        });
    }
    Ok(pi)
}

fn render(report: &CohomologyReport, format: Format) -> String {
    match format {
        Format::Table => report.to_table(),
        Format::Json => report.to_json() + "\n",
    }
}

pub fn run(config: &RunConfig) -> RunOutcome {
    match config {
        RunConfig::Compute(c) => run_compute(c),
        RunConfig::Verify { path } => run_verify(path),
    }
}

fn closed(c: &ComputeConfig) -> crate::Result<CohomologyReport> {
    engine::cohomology(c.space, &c.poisson, c.k_max, c.degree_bound, c.with_basis)
}

fn oracle(c: &ComputeConfig) -> crate::Result<CohomologyReport> {
    cohomology_oracle(c.space, &c.poisson, c.k_max, c.degree_bound)
}

fn run_compute(c: &ComputeConfig) -> RunOutcome {
    match c.mode {
        Mode::Closed => {
            closed(c).map_or_else(RunOutcome::error, |r| RunOutcome::ok(render(&r, c.format)))
        }
        Mode::Oracle => {
            oracle(c).map_or_else(RunOutcome::error, |r| RunOutcome::ok(render(&r, c.format)))
        }
        Mode::Both => {
            let (engine_report, oracle_report) = match (closed(c), oracle(c)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return RunOutcome::error(e),
            };
            let diff = compare(&engine_report, &oracle_report);
            let stdout = match c.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "closed": engine_report.to_json_value(),
                        "oracle": oracle_report.to_json_value(),
                        "diff": diff.entries,
                    });
                    serde_json::to_string_pretty(&value).expect("JSON value serializes") + "\n"
                }
                Format::Table => {
                    let mut s = engine_report.to_table();
                    s.push('\n');
                    s.push_str(&oracle_report.to_table());
                    s.push('\n');
                    if diff.is_empty() {
                        s.push_str("comparison: agree\n");
                    } else {
                        s.push_str(&format!(
                            "comparison: {} differences\n{diff}",
                            diff.entries.len()
                        ));
                    }
                    s
                }
            };
            let code = if diff.is_empty() {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            };
            RunOutcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

fn run_verify(path: &PathBuf) -> RunOutcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return RunOutcome::error(format!("cannot read {}: {e}", path.display())),
    };
    let stored = match CohomologyReport::from_json(&text) {
        Ok(r) => r,
        Err(e) => return RunOutcome::error(e),
    };
    let recomputed = match stored.source {
        ReportSource::Closed => engine::cohomology(
            stored.space,
            &stored.poisson,
            stored.k_max(),
            stored.degree_bound,
            stored.basis.is_some(),
        ),
        ReportSource::Oracle => cohomology_oracle(
            stored.space,
            &stored.poisson,
            stored.k_max(),
            stored.degree_bound,
        ),
    };
    match recomputed {
        Err(e) => RunOutcome::error(e),
        Ok(r) if r == stored => RunOutcome::ok(r.to_json() + "\n"),
        Ok(r) => RunOutcome {
            code: EXIT_DISAGREE,
            stdout: r.to_json() + "\n",
            stderr: "error: report does not reproduce\n".into(),
        },
    }
}

/// Entry point used by the binary: parse, run, and return the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let outcome = match parse_args(argv) {
        Ok(config) => run(&config),
        Err(f) if f.code == EXIT_OK => RunOutcome::ok(f.message),
        Err(f) => RunOutcome {
            code: f.code,
            stdout: String::new(),
            stderr: f.message,
        },
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.code
}
