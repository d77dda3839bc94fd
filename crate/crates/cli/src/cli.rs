//! Command-line surface.
//!
//! [`run_command`] is the whole program minus process plumbing: it takes the
//! argument vector and returns the exit code together with everything that
//! would go to stdout and stderr. Exit code 0 means success, 2 a validation
//! error and 3 an enumeration cap or numerical failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use centdian_core::approx::{apx_cdp, apx_pdp};
use centdian_core::exact::{solve_cdp_exact, solve_pdp_exact, DEFAULT_CAP};
use centdian_core::graph::metric_closure;
use centdian_core::models::{export_cdp_ilp, export_pdp_ilp, CdpInstance, PdpInstance};
use centdian_core::reduction::{dsp_to_pdp, verify_equivalence};
use centdian_core::{Error as CoreError, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchConfig};
use crate::error::{CliError, Result};
use crate::generate::{generate_instance, GenParams};
use crate::instance::{digest, parse_instance, write_instance};
use crate::report::{json_number, RunReport};

#[derive(Debug, Parser)]
#[command(name = "centdian", version, about = "p-centdian solvers, reductions and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a p-centdian or converse instance.
    Solve(SolveArgs),
    /// Reduce a dominating-set question to a p-centdian instance.
    Reduce(ReduceArgs),
    /// Write the integer program in LP format.
    Export(ExportArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Compare the approximation with exact optima on random instances.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    PdpExact,
    PdpApx,
    CdpExact,
    CdpApx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct SolveArgs {
    method: Method,
    #[arg(long)]
    input: PathBuf,
    /// Number of facilities (pdp methods).
    #[arg(long)]
    p: Option<usize>,
    /// Budget on the centdian-distance (cdp methods).
    #[arg(long, allow_negative_numbers = true)]
    budget: Option<f64>,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum number of subsets the exact methods may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReduceKind {
    Dsp,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    kind: ReduceKind,
    #[arg(long)]
    input: PathBuf,
    /// Dominating-set size to test.
    #[arg(long)]
    kappa: usize,
    /// Check both directions of the equivalence by enumeration.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Ilp,
}

#[derive(Debug, Args)]
struct ExportArgs {
    kind: ExportKind,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, conflicts_with = "budget", required_unless_present = "budget")]
    p: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    budget: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Gnp,
    Euclidean,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.3)]
    prob: f64,
    #[arg(long, default_value_t = 1)]
    min_weight: u32,
    #[arg(long, default_value_t = 10)]
    max_weight: u32,
    #[arg(long, default_value_t = 100)]
    grid: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_command<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput { code, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => CommandOutput { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            CommandOutput { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn dispatch(cmd: Command) -> Result<String> {
    match cmd {
        Command::Solve(a) => solve(a),
        Command::Reduce(a) => reduce(a),
        Command::Export(a) => export(a),
        Command::Gen(a) => gen(a),
        Command::Bench(a) => bench(a),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text =
        fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_instance(&text).map_err(|e| match e {
        CliError::Parse { line, reason } => {
            CliError::Parse { line, reason: format!("{reason} (in {})", path.display()) }
        }
        other => other,
    })
}

fn emit(text: String, output: Option<&Path>) -> Result<String> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(CliError::Flag { flag: "--epsilon", source: CoreError::InvalidEpsilon(eps) })
    }
}

fn solve(a: SolveArgs) -> Result<String> {
    let g = read_graph(&a.input)?;
    let dm = metric_closure(&g)?;
    let n = g.n();
    let dig = digest(&g);
    let start = Instant::now();
    let mut report = match a.method {
        Method::PdpExact | Method::PdpApx => {
            let p = a.p.ok_or_else(|| CliError::usage("--p", "required for pdp methods"))?;
            if a.budget.is_some() {
                return Err(CliError::usage("--budget", "not accepted by pdp methods"));
            }
            let inst = PdpInstance::new(&dm, p).map_err(CliError::flag("--p"))?;
            if a.method == Method::PdpExact {
                let r = solve_pdp_exact(&inst, a.cap).map_err(CliError::flag("--cap"))?;
                RunReport::pdp_exact(&dig, n, p, &r)
            } else {
                check_epsilon(a.epsilon)?;
                let r = apx_pdp(&inst, a.epsilon)?;
                RunReport::pdp_apx(&dig, n, a.epsilon, &r)
            }
        }
        Method::CdpExact | Method::CdpApx => {
            let budget = a.budget.ok_or_else(|| CliError::usage("--budget", "required for cdp methods"))?;
            if a.p.is_some() {
                return Err(CliError::usage("--p", "not accepted by cdp methods"));
            }
            let inst = CdpInstance::new(&dm, budget).map_err(CliError::flag("--budget"))?;
            if a.method == Method::CdpExact {
                let r = solve_cdp_exact(&inst, a.cap).map_err(CliError::flag("--cap"))?;
                RunReport::cdp_exact(&dig, n, budget, &r)
            } else {
                check_epsilon(a.epsilon)?;
                let r = apx_cdp(&inst, a.epsilon)?;
                RunReport::cdp_apx(&dig, n, budget, a.epsilon, &r)
            }
        }
    };
    if a.timing {
        report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(match a.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    })
}

fn reduce(a: ReduceArgs) -> Result<String> {
    let ReduceKind::Dsp = a.kind;
    let g = read_graph(&a.input)?;
    let out = dsp_to_pdp(&g, a.kappa).map_err(CliError::flag("--kappa"))?;
    let mut comments = vec![
        format!("p={}", out.p),
        format!("U={}", json_number(out.u_bound)),
        format!("source digest {}", digest(&g)),
    ];
    if a.verify {
        let ok = verify_equivalence(&g, a.kappa).map_err(CliError::flag("--verify"))?;
        comments.push(format!("equivalence verified: {ok}"));
    }
    emit(write_instance(&out.complete_graph(), &comments), a.output.as_deref())
}

fn export(a: ExportArgs) -> Result<String> {
    let ExportKind::Ilp = a.kind;
    let g = read_graph(&a.input)?;
    let dm = metric_closure(&g)?;
    let text = match (a.p, a.budget) {
        (Some(p), _) => export_pdp_ilp(&PdpInstance::new(&dm, p).map_err(CliError::flag("--p"))?),
        (None, Some(b)) => export_cdp_ilp(&CdpInstance::new(&dm, b).map_err(CliError::flag("--budget"))?),
        (None, None) => return Err(CliError::usage("--p", "one of --p or --budget is required")),
    };
    emit(text, a.output.as_deref())
}

fn gen(a: GenArgs) -> Result<String> {
    let params = match a.kind {
        GenKind::Gnp => GenParams::Gnp { prob: a.prob, min_weight: a.min_weight, max_weight: a.max_weight },
        GenKind::Euclidean => GenParams::Euclidean { grid: a.grid },
    };
    let g = generate_instance(a.n, params, a.seed)?;
    let comments = vec![format!("{} n={} seed={}", params.describe(), a.n, a.seed)];
    emit(write_instance(&g, &comments), a.output.as_deref())
}

fn bench(a: BenchArgs) -> Result<String> {
    let cfg = BenchConfig { seed: a.seed, trials: a.trials, epsilon: a.epsilon, parallel: !a.sequential };
    let report = run_bench(&cfg)?;
    Ok(match a.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_table(),
    })
}
