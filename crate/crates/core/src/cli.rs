//! Command-line front end. [`run_cli`] is pure apart from the files named by
//! `--graph` / `--out`, so it can be driven from tests.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::corona_spectral::{apex_amplitude, corona_decomposition, factor_decompositions, EigenvalueRecord};
use crate::error::{Error, Result};
use crate::graphs::{neighborhood_corona, regularity_degree, FamilySpec, Graph};
use crate::spectral_core::{
    eigenvalues, fidelity_series, transition_amplitude, Tolerances, DEFAULT_CLUSTER_TOL,
    DEFAULT_SIGN_TOL, DEFAULT_SUPPORT_TOL,
};
use crate::transfer_pgst::{
    pgst_search_generic, pgst_witness_theorem51, pgst_witness_theorem53, PGSTWitness, DEFAULT_ALPHA_MAX,
};
use crate::transfer_pst::{certify_pst_with, exact_decomposition_with};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Number of fixed times at which `verify` compares amplitudes.
pub const VERIFY_TIMES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "corona-walk", version, about = "Quantum walks on neighborhood corona graphs")]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph (or the corona of two family graphs) as JSON.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues with multiplicities, exact values and the closed-form
    /// corona spectrum when available.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Fidelity |amplitude|² on a uniform grid over [0, t-max], as CSV.
    Fidelity {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1001)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Certify or refute perfect state transfer between two vertices.
    CheckPst {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Construct a pretty-good-state-transfer witness time.
    SearchPgst {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_ALPHA_MAX)]
        alpha_max: u64,
        #[arg(long, value_enum, default_value_t = ConstructionArg::Auto)]
        construction: ConstructionArg,
        /// Scan window for `--construction scan`.
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        #[arg(long, default_value_t = 100_001)]
        steps: usize,
    },
    /// Compare the closed-form corona data against the numeric engine.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1e-8)]
        eigen_tol: f64,
        #[arg(long, default_value_t = 1e-9)]
        projector_tol: f64,
        #[arg(long, default_value_t = 1e-9)]
        amplitude_tol: f64,
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
    },
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// First factor (or the whole graph), as `family:size`.
    #[arg(long)]
    g1: Option<String>,
    /// Second factor; with --g1 builds the neighborhood corona.
    #[arg(long)]
    g2: Option<String>,
    /// Graph JSON file.
    #[arg(long, conflicts_with_all = ["g1", "g2"])]
    graph: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TolArgs {
    #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
    cluster_tol: f64,
    #[arg(long, default_value_t = DEFAULT_SUPPORT_TOL)]
    support_tol: f64,
    #[arg(long, default_value_t = DEFAULT_SIGN_TOL)]
    sign_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances { cluster: self.cluster_tol, support: self.support_tol, sign: self.sign_tol }
    }
}

/// Which PGST construction `search-pgst` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    /// Edgeless G2 → theorem51, G1 = C4 → theorem53, otherwise scan.
    Auto,
    Theorem51,
    Theorem53,
    Scan,
}

impl GraphArgs {
    fn load(&self) -> Result<Graph> {
        if let Some(path) = &self.graph {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            return Graph::from_json(&text);
        }
        let g1 = self
            .g1
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("pass --graph FILE or --g1 family:size".into()))?;
        let g1 = g1.parse::<FamilySpec>()?.build()?;
        match &self.g2 {
            Some(g2) => Ok(neighborhood_corona(&g1, &g2.parse::<FamilySpec>()?.build()?)),
            None => Ok(g1),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::UnknownFamily(_)
        | Error::InvalidGraph(_)
        | Error::InvalidArgument(_)
        | Error::VertexOutOfRange { .. }
        | Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_NEGATIVE,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("payload serializes") + "\n"
}

fn write_or_return(out: &Option<PathBuf>, payload: String) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, &payload)
                .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(payload),
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_cli<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { exit_code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                CommandResult::ok(text)
            };
        }
    };
    let run = || dispatch(cli.command);
    let outcome = match cli.threads {
        Some(0) => Err(Error::InvalidArgument("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::InvalidArgument(format!("cannot build thread pool: {e}"))),
        },
        None => run(),
    };
    match outcome {
        Ok(r) => r,
        Err(e) => CommandResult { exit_code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

#[derive(Serialize)]
struct EigenvalueOut {
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    multiplicity: usize,
}

#[derive(Serialize)]
struct SpectrumOut {
    n: usize,
    eigenvalues: Vec<EigenvalueOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    corona: Option<Vec<EigenvalueRecord>>,
}

#[derive(Serialize)]
struct VerifyOut {
    passed: bool,
    eigenvalue_deviation: f64,
    projector_defect: f64,
    amplitude_deviation: f64,
    times: usize,
}

fn dispatch(command: Command) -> Result<CommandResult> {
    match command {
        Command::Build { graph, out } => {
            let g = graph.load()?;
            Ok(CommandResult::ok(write_or_return(&out, g.to_json() + "\n")?))
        }
        Command::Spectrum { graph, tol } => {
            let g = graph.load()?;
            let d = exact_decomposition_with(&g, &tol.tolerances())?;
            let corona = match g.corona_factors() {
                Some((g1, g2)) if regularity_degree(&g2).is_some() => {
                    Some(corona_decomposition(&g1, &g2, tol.cluster_tol)?.records())
                }
                _ => None,
            };
            let eigenvalues = d
                .entries
                .iter()
                .map(|e| EigenvalueOut {
                    value: e.eigenvalue,
                    exact: e.exact.as_ref().map(ToString::to_string),
                    multiplicity: e.multiplicity,
                })
                .collect();
            Ok(CommandResult::ok(to_json(&SpectrumOut { n: g.n(), eigenvalues, corona })))
        }
        Command::Fidelity { graph, u, v, t_max, steps, out, tol } => {
            let g = graph.load()?;
            let d = tol.tolerances().decompose(&g)?;
            let series = fidelity_series(&d, u, v, t_max, steps)?;
            Ok(CommandResult::ok(write_or_return(&out, series.to_csv())?))
        }
        Command::CheckPst { graph, u, v, tol } => {
            let g = graph.load()?;
            let cert = certify_pst_with(&g, u, v, &tol.tolerances())?;
            let code = if cert.is_pst() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(CommandResult { exit_code: code, stdout: cert.to_json() + "\n", stderr: String::new() })
        }
        Command::SearchPgst { graph, u, v, epsilon, alpha_max, construction, t_min, t_max, steps } => {
            let g = graph.load()?;
            let w = search_pgst(&g, u, v, epsilon, alpha_max, construction, t_min, t_max, steps)?;
            let code = if w.success { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(CommandResult { exit_code: code, stdout: w.to_json() + "\n", stderr: String::new() })
        }
        Command::Verify { graph, eigen_tol, projector_tol, amplitude_tol, cluster_tol } => {
            let g = graph.load()?;
            let report = verify(&g, cluster_tol, eigen_tol, projector_tol, amplitude_tol)?;
            let code = if report.passed { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(CommandResult { exit_code: code, stdout: to_json(&report), stderr: String::new() })
        }
    }
}

fn is_c4(g: &Graph) -> bool {
    g.n() == 4 && regularity_degree(g) == Some(2) && g.is_connected()
}

/// Dispatches to the closed-form constructions or the generic scan.
/// A construction whose hypotheses fail returns `HypothesisNotMet`; there is
/// no silent fallback.
#[allow(clippy::too_many_arguments)]
pub fn search_pgst(
    g: &Graph,
    u: usize,
    v: usize,
    eps: f64,
    alpha_max: u64,
    construction: ConstructionArg,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<PGSTWitness> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let factors = g.corona_factors();
    let chosen = match (construction, &factors) {
        (ConstructionArg::Auto, Some((g1, g2))) if g2.edge_count() == 0 && u < g1.n() && v < g1.n() => {
            ConstructionArg::Theorem51
        }
        (ConstructionArg::Auto, Some((g1, _))) if is_c4(g1) && u < 4 && v < 4 => ConstructionArg::Theorem53,
        (ConstructionArg::Auto, _) => ConstructionArg::Scan,
        (c, _) => c,
    };
    let need_factors = || {
        factors.clone().ok_or_else(|| {
            Error::HypothesisNotMet("graph carries no neighborhood-corona labels".into())
        })
    };
    let apexes = |n1: usize| {
        if u < n1 && v < n1 {
            Ok(())
        } else {
            Err(Error::HypothesisNotMet(format!("{u} and {v} must both be apex vertices (< {n1})")))
        }
    };
    match chosen {
        ConstructionArg::Theorem51 => {
            let (g1, g2) = need_factors()?;
            if g2.edge_count() != 0 {
                return Err(Error::HypothesisNotMet("G2 must be edgeless".into()));
            }
            apexes(g1.n())?;
            pgst_witness_theorem51(&g1, u, v, g2.n(), eps, alpha_max)
        }
        ConstructionArg::Theorem53 => {
            let (g1, g2) = need_factors()?;
            if !is_c4(&g1) {
                return Err(Error::HypothesisNotMet("G1 must be C4".into()));
            }
            apexes(4)?;
            pgst_witness_theorem53(&g2, u, v, eps, alpha_max)
        }
        ConstructionArg::Scan | ConstructionArg::Auto => pgst_search_generic(g, u, v, eps, t_min, t_max, steps),
    }
}

/// `t_i = 20·frac(i·φ)` for `i = 1..=32`.
pub fn verify_times() -> Vec<f64> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    (1..=VERIFY_TIMES).map(|i| 20.0 * (i as f64 * phi).fract()).collect()
}

fn verify(g: &Graph, cluster_tol: f64, eigen_tol: f64, projector_tol: f64, amplitude_tol: f64) -> Result<VerifyOut> {
    let (g1, g2) = g
        .corona_factors()
        .ok_or_else(|| Error::InvalidGraph("verify needs a neighborhood corona (build it with --g1 and --g2)".into()))?;
    let k = regularity_degree(&g2).ok_or_else(|| Error::HypothesisNotMet("G2 is not regular".into()))? as u64;
    let closed = corona_decomposition(&g1, &g2, cluster_tol)?;
    let numeric = eigenvalues(g)?;
    let closed_values = closed.merged.eigenvalue_multiset();
    if numeric.len() != closed_values.len() {
        return Err(Error::Consistency("eigenvalue counts differ".into()));
    }
    let eigenvalue_deviation = numeric.iter().zip(&closed_values).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let projector_defect = closed.merged.identity_defects(&g.adjacency_matrix()).max_defect();
    let (d1, _) = factor_decompositions(&g1, &g2, cluster_tol)?;
    let d = crate::spectral_core::eigendecompose(g, cluster_tol)?;
    let n2 = g2.n() as u64;
    let mut amplitude_deviation = 0.0f64;
    for t in verify_times() {
        for u in 0..g1.n() {
            for v in 0..g1.n() {
                let a = apex_amplitude(&d1, k, n2, u, v, t)?;
                let b = transition_amplitude(&d, u, v, t)?;
                amplitude_deviation = amplitude_deviation.max((a - b).norm());
            }
        }
    }
    Ok(VerifyOut {
        passed: eigenvalue_deviation <= eigen_tol
            && projector_defect <= projector_tol
            && amplitude_deviation <= amplitude_tol,
        eigenvalue_deviation,
        projector_defect,
        amplitude_deviation,
        times: VERIFY_TIMES,
    })
}
