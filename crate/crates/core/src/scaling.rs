//! Measured oracle-query and work counts over a generated corpus, with
//! least-squares fits against the expected growth terms.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::generate::{generate_tree, random_connected_graph, uniform_weight, TreeKind};
use crate::oracle::InstrumentedOracle;
use crate::verifier::{quantum_verify, VerifyConfig, VerifyMode};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingPoint {
    pub n: usize,
    pub m: usize,
    pub mode: VerifyMode,
    pub tree_kind: TreeKind,
    pub minimal: bool,
    pub classical_queries: u64,
    pub quantum_applications: u64,
    pub total_queries: u64,
    pub grover_iterations: u64,
    pub work_ops: u64,
    pub sqrt_m: f64,
    /// `n + sqrt(m) * log2(n)`.
    pub work_term: f64,
}

/// `y ~ slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

impl LinearFit {
    pub fn fit(xs: &[f64], ys: &[f64]) -> Self {
        let k = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / k;
        let my = ys.iter().sum::<f64>() / k;
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        let intercept = my - slope * mx;
        let r_squared = if sxx > 0.0 && syy > 0.0 {
            sxy * sxy / (sxx * syy)
        } else {
            1.0
        };
        Self {
            slope,
            intercept,
            r_squared,
            points: xs.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFits {
    /// Edge-list mode: total oracle queries against n.
    pub edgelist_queries_vs_n: LinearFit,
    /// Edge-list mode: quantum oracle applications against sqrt(m).
    pub edgelist_quantum_vs_sqrt_m: LinearFit,
    /// Edge-list mode: work against n + sqrt(m) log2 n.
    pub edgelist_work_vs_n_plus_sqrt_m_log_n: LinearFit,
    /// Adjacency mode: total oracle queries against n.
    pub adjacency_queries_vs_n: LinearFit,
    /// Largest observed total queries / n, per mode.
    pub edgelist_max_queries_per_vertex: f64,
    pub adjacency_max_queries_per_vertex: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub seed: u64,
    pub delta: f64,
    pub points: Vec<ScalingPoint>,
    pub fits: ScalingFits,
}

/// Runs both quantum modes on one instance per `(n, m, kind)`.
pub fn scaling_report(
    sizes: &[(usize, usize)],
    kinds: &[TreeKind],
    seed: u64,
    cfg: &VerifyConfig,
) -> Result<ScalingReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    for &(n, m) in sizes {
        let g = random_connected_graph(n, m, &mut rng, |r| uniform_weight(r, 1.0, 100.0))?;
        for &kind in kinds {
            let t = generate_tree(&g, kind, &mut rng);
            for o in [InstrumentedOracle::edge_list(&g), InstrumentedOracle::adjacency(&g)] {
                let (verdict, q) = quantum_verify(&g, &t, &o, rng.next_u64(), cfg)?;
                let sqrt_m = (m as f64).sqrt();
                points.push(ScalingPoint {
                    n,
                    m,
                    mode: q.mode,
                    tree_kind: kind,
                    minimal: verdict.is_minimal(),
                    classical_queries: q.classical_weight_queries,
                    quantum_applications: q.quantum_oracle_applications,
                    total_queries: q.total_queries(),
                    grover_iterations: q.grover_iterations,
                    work_ops: q.work_ops,
                    sqrt_m,
                    work_term: n as f64 + sqrt_m * (n as f64).log2().max(1.0),
                });
            }
        }
    }

    let select = |mode: VerifyMode| points.iter().filter(move |p| p.mode == mode);
    let fit = |mode: VerifyMode, x: fn(&ScalingPoint) -> f64, y: fn(&ScalingPoint) -> f64| {
        let xs: Vec<f64> = select(mode).map(x).collect();
        let ys: Vec<f64> = select(mode).map(y).collect();
        LinearFit::fit(&xs, &ys)
    };
    let max_per_vertex = |mode: VerifyMode| {
        select(mode)
            .map(|p| p.total_queries as f64 / p.n as f64)
            .fold(0.0, f64::max)
    };
    let fits = ScalingFits {
        edgelist_queries_vs_n: fit(VerifyMode::EdgeList, |p| p.n as f64, |p| p.total_queries as f64),
        edgelist_quantum_vs_sqrt_m: fit(VerifyMode::EdgeList, |p| p.sqrt_m, |p| p.quantum_applications as f64),
        edgelist_work_vs_n_plus_sqrt_m_log_n: fit(VerifyMode::EdgeList, |p| p.work_term, |p| p.work_ops as f64),
        adjacency_queries_vs_n: fit(VerifyMode::Adjacency, |p| p.n as f64, |p| p.total_queries as f64),
        edgelist_max_queries_per_vertex: max_per_vertex(VerifyMode::EdgeList),
        adjacency_max_queries_per_vertex: max_per_vertex(VerifyMode::Adjacency),
    };
    Ok(ScalingReport {
        seed,
        delta: cfg.delta,
        points,
        fits,
    })
}
