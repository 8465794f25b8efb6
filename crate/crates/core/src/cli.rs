//! Command-line front end.
//!
//! Exit codes: 0 when the tree is minimal, 3 when it is not, 1 on any error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::error::Error;
use crate::generate::{check_size, generate_tree, random_connected_graph, uniform_weight, TreeKind};
use crate::graph::{load_graph, load_tree, tree_weight, Graph, SpanningTree};
use crate::grover::{GroverConfig, DEFAULT_STATEVECTOR_CAP};
use crate::oracle::InstrumentedOracle;
use crate::verifier::{classical_verify, kruskal_mst, quantum_verify, QueryReport, Verdict, VerifyConfig, VerifyMode};

pub const EXIT_MINIMAL: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_MINIMAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: Error,
    },
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Debug, Parser)]
#[command(name = "mst-verify", version, about = "Verify minimality of a spanning tree")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a spanning tree has minimum weight.
    Verify(RunConfig),
    /// Write a random connected graph and a candidate tree.
    Gen(GenConfig),
    /// Print a minimum spanning tree computed by Kruskal's algorithm.
    Oracle(OracleConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Classical,
    Adjacency,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Edgelist)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Completeness error of the quantum search.
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Largest search domain simulated with a dense state vector.
    #[arg(long = "statevector-cap", default_value_t = DEFAULT_STATEVECTOR_CAP)]
    pub statevector_cap: usize,
}

impl RunConfig {
    pub fn verify_config(&self) -> Result<VerifyConfig, Error> {
        let cfg = VerifyConfig {
            delta: self.delta,
            grover: GroverConfig {
                statevector_cap: self.statevector_cap,
                ..GroverConfig::default()
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenConfig {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Weight range `LO:HI`.
    #[arg(long, default_value = "1:100", value_parser = parse_range)]
    pub weights: (f64, f64),
    #[arg(long = "tree-kind", value_enum, default_value_t = TreeKind::Mst)]
    pub tree_kind: TreeKind,
    /// Writes `PREFIX.graph` and `PREFIX.tree`.
    #[arg(long = "out-prefix")]
    pub out_prefix: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OracleConfig {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
        return Err(format!("need 0 <= LO <= HI, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessJson {
    pub in_edge: usize,
    pub out_edge: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueriesJson {
    pub classical: u64,
    pub quantum: u64,
    pub grover_iterations: u64,
}

/// Machine-readable verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub status: &'static str,
    pub witness: Option<WitnessJson>,
    pub improved_tree_indices: Option<Vec<usize>>,
    pub queries: QueriesJson,
    pub mode: VerifyMode,
    pub analytic_mode: bool,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub tree_weight: f64,
    pub improved_weight: Option<f64>,
    pub completeness_delta: Option<f64>,
    pub schedules: u32,
    pub work_ops: u64,
    pub queries_per_vertex: f64,
}

impl VerifyReport {
    pub fn new(g: &Graph, t: &SpanningTree, verdict: &Verdict, q: &QueryReport, seed: u64) -> Self {
        let w = verdict.witness();
        Self {
            status: if verdict.is_minimal() { "minimal" } else { "not_minimal" },
            witness: w.map(|w| WitnessJson {
                in_edge: w.violating_edge_id,
                out_edge: w.replaced_edge_id,
                delta: w.weight_delta,
            }),
            improved_tree_indices: w.map(|w| w.improved_tree.sorted_ids()),
            queries: QueriesJson {
                classical: q.classical_weight_queries,
                quantum: q.quantum_oracle_applications,
                grover_iterations: q.grover_iterations,
            },
            mode: q.mode,
            analytic_mode: q.analytic_mode,
            seed,
            n: g.n(),
            m: g.m(),
            tree_weight: tree_weight(g, t),
            improved_weight: w.map(|w| tree_weight(g, &w.improved_tree)),
            completeness_delta: q.delta,
            schedules: q.schedules,
            work_ops: q.work_ops,
            queries_per_vertex: q.queries_per_vertex,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "status: {}", self.status.replace('_', " "));
        let _ = writeln!(s, "graph: n = {}, m = {}", self.n, self.m);
        let _ = writeln!(s, "tree weight: {}", self.tree_weight);
        if let Some(w) = &self.witness {
            let _ = writeln!(
                s,
                "swap: add edge {}, remove edge {} (delta {})",
                w.in_edge, w.out_edge, w.delta
            );
        }
        if let (Some(ids), Some(wt)) = (&self.improved_tree_indices, self.improved_weight) {
            let _ = writeln!(s, "improved tree ({wt}): {ids:?}");
        }
        let _ = writeln!(
            s,
            "mode: {}{}",
            self.mode.as_str(),
            if self.analytic_mode { " (analytic mode)" } else { "" }
        );
        let _ = writeln!(
            s,
            "queries: classical {}, quantum {}, grover iterations {}",
            self.queries.classical, self.queries.quantum, self.queries.grover_iterations
        );
        let _ = writeln!(s, "seed: {}", self.seed);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub weight: f64,
    pub indices: Vec<usize>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn input<T>(path: &Path, r: Result<T, Error>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn emit<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value).expect("report serializes");
    writeln!(out, "{json}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

/// Runs `verify` and returns the exit status.
pub fn cmd_verify<W: Write>(cfg: &RunConfig, out: &mut W) -> Result<i32, CliError> {
    let vcfg = cfg.verify_config()?;
    let g = input(&cfg.graph, load_graph(&read(&cfg.graph)?))?;
    let t = input(&cfg.tree, load_tree(&read(&cfg.tree)?, &g))?;

    let (verdict, q) = match cfg.mode {
        ModeArg::Classical => classical_verify(&g, &t, &InstrumentedOracle::edge_list(&g))?,
        ModeArg::Edgelist => quantum_verify(&g, &t, &InstrumentedOracle::edge_list(&g), cfg.seed, &vcfg)?,
        ModeArg::Adjacency => quantum_verify(&g, &t, &InstrumentedOracle::adjacency(&g), cfg.seed, &vcfg)?,
    };
    let report = VerifyReport::new(&g, &t, &verdict, &q, cfg.seed);
    match cfg.output {
        OutputFormat::Json => emit(out, &report)?,
        OutputFormat::Text => {
            let _ = out.write_all(report.to_text().as_bytes());
        }
    }
    Ok(if verdict.is_minimal() {
        EXIT_MINIMAL
    } else {
        EXIT_NOT_MINIMAL
    })
}

/// Paths written by `gen`.
pub fn gen_paths(prefix: &Path) -> (PathBuf, PathBuf) {
    let mut g = prefix.as_os_str().to_owned();
    g.push(".graph");
    let mut t = prefix.as_os_str().to_owned();
    t.push(".tree");
    (g.into(), t.into())
}

pub fn cmd_gen<W: Write>(cfg: &GenConfig, out: &mut W) -> Result<i32, CliError> {
    check_size(cfg.n, cfg.m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.weights;
    let g = random_connected_graph(cfg.n, cfg.m, &mut rng, |r| uniform_weight(r, lo, hi))?;
    let t = generate_tree(&g, cfg.tree_kind, &mut rng);
    let (gp, tp) = gen_paths(&cfg.out_prefix);
    for (path, body) in [(&gp, g.to_text()), (&tp, t.to_indices_text())] {
        std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let _ = writeln!(out, "{}\n{}", gp.display(), tp.display());
    Ok(EXIT_MINIMAL)
}

pub fn cmd_oracle<W: Write>(cfg: &OracleConfig, out: &mut W) -> Result<i32, CliError> {
    let g = input(&cfg.graph, load_graph(&read(&cfg.graph)?))?;
    let t = kruskal_mst(&g);
    let report = OracleReport {
        weight: tree_weight(&g, &t),
        indices: t.sorted_ids(),
    };
    match cfg.output {
        OutputFormat::Json => emit(out, &report)?,
        OutputFormat::Text => {
            let _ = writeln!(out, "weight: {}\nindices: {:?}", report.weight, report.indices);
        }
    }
    Ok(EXIT_MINIMAL)
}

/// Dispatches a parsed command line; diagnostics go to `err`.
pub fn run<W: Write, E: Write>(cli: &Cli, out: &mut W, err: &mut E) -> i32 {
    let result = match &cli.command {
        Command::Verify(cfg) => cmd_verify(cfg, out),
        Command::Gen(cfg) => cmd_gen(cfg, out),
        Command::Oracle(cfg) => cmd_oracle(cfg, out),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_ERROR
    })
}
