//! Argument handling, report assembly and rendering for the `hahn` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hahn_core::{parse_rational, Backend, BigRational, Error, Suite, SuiteConfig, SuiteOutcome, Verdict};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_DIMENSION: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hahn",
    version,
    about = "Verify the dual -1 Hahn algebra in its oscillator realizations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Print a built-in presentation in canonical form
    Show {
        /// Presentation name, e.g. `dual_m1_hahn` or `o_n(4)`
        name: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Sd2,
    Commutant,
    Osp,
    Cg,
    Howe,
    All,
}

impl SuiteArg {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Sd2 => vec![Suite::Sd2],
            SuiteArg::Commutant => vec![Suite::Commutant],
            SuiteArg::Osp => vec![Suite::Osp],
            SuiteArg::Cg => vec![Suite::Cg],
            SuiteArg::Howe => vec![Suite::Howe],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,
    /// Per-mode occupation cutoff
    #[arg(long, default_value_t = 4)]
    pub cutoff: u32,
    /// First parabose / osp(1|2) parameter, as `p` or `p/q`
    #[arg(long, default_value = "1/3", allow_hyphen_values = true)]
    pub mu1: String,
    /// Second parameter, as `p` or `p/q`
    #[arg(long, default_value = "1/5", allow_hyphen_values = true)]
    pub mu2: String,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub eps1: i8,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub eps2: i8,
    /// Block sizes of the spinor model, as `m,m'`
    #[arg(long, default_value = "2,2")]
    pub partition: String,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
    /// Fixed window budget for every check instead of the per-relation sound one
    #[arg(long)]
    pub budget: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputArg::Text)]
    pub output: OutputArg,
    /// Seed for sampled coproduct checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled parameter sets in the osp suite
    #[arg(long, default_value_t = 2)]
    pub samples: u32,
    /// Record wall times (makes JSON output non-reproducible)
    #[arg(long)]
    pub timing: bool,
    /// Write the CG table as CSV
    #[arg(long)]
    pub cg_csv: Option<PathBuf>,
    /// Highest coupled irrep for the cg suite
    #[arg(long, default_value_t = 4)]
    pub j_max: u32,
}

fn parse_mu(name: &str, s: &str) -> Result<BigRational, String> {
    let q = parse_rational(s).ok_or_else(|| format!("{name}: `{s}` is not a rational `p` or `p/q`"))?;
    if q < BigRational::from_integer(0.into()) {
        return Err(format!("{name} must be non-negative, got {s}"));
    }
    Ok(q)
}

fn parse_partition(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("partition `{s}` must look like `m,m'` with even m, m' >= 2");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let m: usize = a.trim().parse().map_err(|_| bad())?;
    let mp: usize = b.trim().parse().map_err(|_| bad())?;
    if m < 2 || mp < 2 || m % 2 == 1 || mp % 2 == 1 {
        return Err(bad());
    }
    Ok((m, mp))
}

impl VerifyArgs {
    /// Validates every argument before any computation.
    pub fn config(&self) -> Result<SuiteConfig, String> {
        for (name, e) in [("eps1", self.eps1), ("eps2", self.eps2)] {
            if e != 1 && e != -1 {
                return Err(format!("{name} must be 1 or -1, got {e}"));
            }
        }
        Ok(SuiteConfig {
            cutoff: self.cutoff,
            mu1: parse_mu("mu1", &self.mu1)?,
            mu2: parse_mu("mu2", &self.mu2)?,
            eps1: self.eps1,
            eps2: self.eps2,
            partition: parse_partition(&self.partition)?,
            backend: match self.backend {
                BackendArg::Exact => Backend::Exact,
                BackendArg::Float => Backend::Float,
            },
            budget: self.budget,
            timing: self.timing,
            j_max: self.j_max,
            seed: self.seed,
            samples: self.samples,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub suites: Vec<Suite>,
    pub cutoff: u32,
    pub mu1: String,
    pub mu2: String,
    pub eps1: i8,
    pub eps2: i8,
    pub partition: [usize; 2],
    pub backend: Backend,
    pub budget: Option<u32>,
    pub seed: u64,
    pub samples: u32,
    pub j_max: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: ConfigEcho,
    pub passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

pub fn echo(suites: &[Suite], cfg: &SuiteConfig) -> ConfigEcho {
    ConfigEcho {
        suites: suites.to_vec(),
        cutoff: cfg.cutoff,
        mu1: cfg.mu1.to_string(),
        mu2: cfg.mu2.to_string(),
        eps1: cfg.eps1,
        eps2: cfg.eps2,
        partition: [cfg.partition.0, cfg.partition.1],
        backend: cfg.backend,
        budget: cfg.budget,
        seed: cfg.seed,
        samples: cfg.samples,
        j_max: cfg.j_max,
    }
}

/// Failure of a run before any verdict exists.
#[derive(Debug)]
pub struct RunError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionLimit { .. } => EXIT_DIMENSION,
            Error::InvalidParameter(_) => EXIT_CONFIG,
            _ => EXIT_FAILED,
        };
        RunError {
            code,
            message: e.to_string(),
        }
    }
}

pub fn run(suites: &[Suite], cfg: &SuiteConfig) -> Result<RunReport, RunError> {
    let outcomes = hahn_core::run_suites(suites, cfg)?;
    Ok(RunReport {
        tool: "hahn",
        version: env!("CARGO_PKG_VERSION"),
        config: echo(suites, cfg),
        passed: outcomes.iter().all(|o| o.passed),
        suites: outcomes,
    })
}

pub fn to_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Residual { max_abs } | Verdict::CentralityViolation { max_abs } => {
            format!("{} {max_abs:.3e}", v.label())
        }
        _ => v.label().to_string(),
    }
}

pub fn to_text(report: &RunReport) -> String {
    let mut s = String::new();
    for o in &report.suites {
        let _ = writeln!(s, "== {} ({})", o.suite, if o.passed { "pass" } else { "FAIL" });
        for r in &o.reports {
            let _ = writeln!(
                s,
                "-- {} [{} backend, dim {}, cutoff {}]",
                r.name, r.backend, r.dimension, r.cutoff
            );
            for x in &r.results {
                let mark = match (x.informational, x.passed) {
                    (true, _) => "info",
                    (false, true) => "ok",
                    (false, false) => "FAIL",
                };
                let _ = write!(
                    s,
                    "  {mark:<4} {:<48} {:<28} budget {}/{} cols {}",
                    x.tag,
                    verdict_text(&x.verdict),
                    x.budget,
                    x.required_budget,
                    x.window_columns
                );
                if let Some(t) = x.seconds {
                    let _ = write!(s, " {t:.3}s");
                }
                s.push('\n');
            }
            for n in &r.notes {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        for n in &o.notes {
            let _ = writeln!(s, "note: {n}");
        }
    }
    let total: usize = report.suites.iter().map(|o| o.results().count()).sum();
    let failed: usize = report
        .suites
        .iter()
        .flat_map(|o| o.results())
        .filter(|r| !r.informational && !r.passed)
        .count();
    let _ = writeln!(
        s,
        "{} checks, {} failed: {}",
        total,
        failed,
        if report.passed { "PASS" } else { "FAIL" }
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> VerifyArgs {
        let mut v = vec!["hahn", "verify", "osp"];
        v.extend_from_slice(extra);
        match Cli::parse_from(v).command {
            Command::Verify(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn defaults_and_negative_eps() {
        let cfg = args(&["--eps2", "-1"]).config().unwrap();
        assert_eq!((cfg.eps1, cfg.eps2, cfg.cutoff, cfg.partition), (1, -1, 4, (2, 2)));
        assert_eq!(cfg.mu1.to_string(), "1/3");
    }

    #[test]
    fn rejects_bad_values() {
        assert!(args(&["--eps1", "2"]).config().is_err());
        assert!(args(&["--mu1", "0.3"]).config().is_err());
        assert!(args(&["--mu1", "-1/3"]).config().is_err());
        assert!(args(&["--partition", "3,2"]).config().is_err());
        assert!(args(&["--partition", "2"]).config().is_err());
        assert_eq!(args(&["--partition", "2,4"]).config().unwrap().partition, (2, 4));
    }
}
