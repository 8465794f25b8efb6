//! Minimality verification of a spanning tree.
//!
//! A spanning tree T is minimal exactly when no non-tree edge is strictly
//! lighter than the heaviest tree edge on the path between its endpoints.
//! Both verifiers build the Borůvka tree of T first, which answers those
//! path maxima without further oracle calls. The classical verifier then
//! scans every non-tree edge; the quantum verifier runs a simulated Grover
//! search for a violating edge over the edge list or over vertex pairs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boruvka::{direct_path_max, BoruvkaTree, PathMaxAnswer};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{tree_weight, EdgeId, EdgeKey, Graph, SpanningTree, VertexId};
use crate::grover::{amplified_search, restarts_for, GroverConfig, SearchSpace};
use crate::oracle::{InstrumentedOracle, OracleModel, QueryContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Classical,
    Adjacency,
    #[serde(rename = "edgelist")]
    EdgeList,
}

impl VerifyMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyMode::Classical => "classical",
            VerifyMode::Adjacency => "adjacency",
            VerifyMode::EdgeList => "edgelist",
        }
    }
}

/// A lighter spanning tree obtained by one edge exchange.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Non-tree edge brought in.
    pub violating_edge_id: EdgeId,
    /// Heaviest tree edge on the path between its endpoints, taken out.
    pub replaced_edge_id: EdgeId,
    pub improved_tree: SpanningTree,
    /// `w(violating) - w(replaced)`, always negative.
    pub weight_delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Minimal,
    NotMinimal(Witness),
}

impl Verdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, Verdict::Minimal)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Minimal => None,
            Verdict::NotMinimal(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryReport {
    pub classical_weight_queries: u64,
    pub quantum_oracle_applications: u64,
    pub grover_iterations: u64,
    pub mode: VerifyMode,
    pub analytic_mode: bool,
    /// Comparisons, Borůvka construction steps and tree-ascent steps.
    pub work_ops: u64,
    /// Logical size of the searched domain (edges or vertex pairs).
    pub search_space: Option<usize>,
    /// Power-of-two padded domain size.
    pub domain_size: Option<usize>,
    /// Target completeness error of the quantum search.
    pub delta: Option<f64>,
    pub schedules: u32,
    pub rounds: u64,
    /// Total oracle calls divided by n.
    pub queries_per_vertex: f64,
}

impl QueryReport {
    pub fn total_queries(&self) -> u64 {
        self.classical_weight_queries + self.quantum_oracle_applications
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Completeness error bound of the quantum search, in (0, 0.5).
    pub delta: f64,
    pub grover: GroverConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            delta: 0.01,
            grover: GroverConfig::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::Config(format!("delta {} must lie in (0, 0.5)", self.delta)));
        }
        self.grover.validate()
    }
}

/// Path maximum if `id` violates minimality of `t`, else `None`. Costs one
/// oracle query for a non-tree edge and none for a tree edge.
fn violation(
    g: &Graph,
    t: &SpanningTree,
    b: &BoruvkaTree,
    id: EdgeId,
    o: &InstrumentedOracle<'_>,
    ops: &mut u64,
) -> Result<Option<(f64, PathMaxAnswer)>> {
    let e = g.edge(id).ok_or(Error::IndexOutOfRange { index: id, m: g.m() })?;
    if t.contains(id) {
        return Ok(None);
    }
    let w = o.edge_weight(id, QueryContext::Classical)?;
    let (pm, steps) = b.path_max_counted(e.u, e.v)?;
    *ops += steps as u64 + 1;
    Ok((w < pm.max_weight).then_some((w, pm)))
}

/// True iff `id` is a non-tree edge strictly lighter than the heaviest tree
/// edge on the path between its endpoints.
pub fn is_violating(
    g: &Graph,
    t: &SpanningTree,
    b: &BoruvkaTree,
    id: EdgeId,
    o: &InstrumentedOracle<'_>,
) -> Result<bool> {
    let mut ops = 0;
    violation(g, t, b, id, o, &mut ops).map(|v| v.is_some())
}

/// Exchanges `replaced` for `violating` after checking that the swap is a
/// strict improvement.
pub fn improve(g: &Graph, t: &SpanningTree, violating: EdgeId, replaced: EdgeId) -> Result<SpanningTree> {
    let ein = g
        .edge(violating)
        .ok_or_else(|| Error::InvalidWitness(format!("edge {violating} not in graph")))?;
    let eout = g
        .edge(replaced)
        .ok_or_else(|| Error::InvalidWitness(format!("edge {replaced} not in graph")))?;
    if t.contains(violating) {
        return Err(Error::InvalidWitness(format!("edge {violating} already in the tree")));
    }
    if !t.contains(replaced) {
        return Err(Error::InvalidWitness(format!("edge {replaced} is not a tree edge")));
    }
    // replaced lies on the tree path iff dropping it separates the endpoints
    let mut dsu = DisjointSets::new(g.n());
    for &id in t.edge_ids() {
        if id != replaced {
            let e = &g.edges()[id];
            dsu.union(e.u, e.v);
        }
    }
    if dsu.same(ein.u, ein.v) {
        return Err(Error::InvalidWitness(format!(
            "edge {replaced} is not on the tree path between {} and {}",
            ein.u, ein.v
        )));
    }
    if ein.w >= eout.w {
        return Err(Error::InvalidWitness(format!(
            "swap {replaced} -> {violating} does not lower the weight ({} >= {})",
            ein.w, eout.w
        )));
    }
    let ids = t
        .edge_ids()
        .iter()
        .map(|&id| if id == replaced { violating } else { id })
        .collect();
    SpanningTree::new(g, ids)
}

fn witness(g: &Graph, t: &SpanningTree, violating: EdgeId, replaced: EdgeId) -> Result<Witness> {
    let improved_tree = improve(g, t, violating, replaced)?;
    Ok(Witness {
        violating_edge_id: violating,
        replaced_edge_id: replaced,
        improved_tree,
        weight_delta: g.edges()[violating].w - g.edges()[replaced].w,
    })
}

fn base_report(
    g: &Graph,
    mode: VerifyMode,
    o: &InstrumentedOracle<'_>,
    start: (u64, u64),
    work_ops: u64,
) -> QueryReport {
    let classical = o.classical_queries() - start.0;
    let quantum = o.quantum_queries() - start.1;
    QueryReport {
        classical_weight_queries: classical,
        quantum_oracle_applications: quantum,
        grover_iterations: 0,
        mode,
        analytic_mode: false,
        work_ops,
        search_space: None,
        domain_size: None,
        delta: None,
        schedules: 0,
        rounds: 0,
        queries_per_vertex: (classical + quantum) as f64 / g.n() as f64,
    }
}

/// Builds the Borůvka tree and checks every non-tree edge. On failure the
/// witness is the violating edge that is least under the `(w, id)` order.
pub fn classical_verify(g: &Graph, t: &SpanningTree, o: &InstrumentedOracle<'_>) -> Result<(Verdict, QueryReport)> {
    let start = (o.classical_queries(), o.quantum_queries());
    let b = BoruvkaTree::build(g, t, o)?;
    let (verdict, mut report) = classical_scan(g, t, &b, o)?;
    report.classical_weight_queries = o.classical_queries() - start.0;
    report.quantum_oracle_applications = o.quantum_queries() - start.1;
    report.work_ops += b.build_ops();
    report.queries_per_vertex = report.total_queries() as f64 / g.n() as f64;
    Ok((verdict, report))
}

/// The scan half of [`classical_verify`], over an already built Borůvka
/// tree of `t`. The report covers only the scan's queries.
pub fn classical_scan(
    g: &Graph,
    t: &SpanningTree,
    b: &BoruvkaTree,
    o: &InstrumentedOracle<'_>,
) -> Result<(Verdict, QueryReport)> {
    let start = (o.classical_queries(), o.quantum_queries());
    let mut ops = 0;
    let mut best: Option<(EdgeKey, PathMaxAnswer)> = None;
    for e in g.edges() {
        if let Some((w, pm)) = violation(g, t, b, e.id, o, &mut ops)? {
            let key = EdgeKey { weight: w, id: e.id };
            if best.is_none_or(|(k, _)| key < k) {
                best = Some((key, pm));
            }
        }
    }

    let verdict = match best {
        None => Verdict::Minimal,
        Some((key, pm)) => Verdict::NotMinimal(witness(g, t, key.id, pm.max_edge_id)?),
    };
    Ok((verdict, base_report(g, VerifyMode::Classical, o, start, ops)))
}

/// Unordered pair `(a, b)`, `a < b`, at position `i` of the enumeration
/// `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn pair_at(i: usize) -> (VertexId, VertexId) {
    let mut b = ((1.0 + (1.0 + 8.0 * i as f64).sqrt()) / 2.0) as usize;
    while b * (b - 1) / 2 > i {
        b -= 1;
    }
    while (b + 1) * b / 2 <= i {
        b += 1;
    }
    (i - b * (b - 1) / 2, b)
}

/// Builds the Borůvka tree classically, then searches for a violating edge
/// with the simulated Grover schedule. The search domain follows the
/// oracle's model: edge indices for the edge-list model, unordered vertex
/// pairs for the adjacency-matrix model. A reported witness is always
/// re-certified against the tree before it is returned.
pub fn quantum_verify(
    g: &Graph,
    t: &SpanningTree,
    o: &InstrumentedOracle<'_>,
    rng_seed: u64,
    cfg: &VerifyConfig,
) -> Result<(Verdict, QueryReport)> {
    cfg.validate()?;
    let mode = match o.model() {
        OracleModel::AdjacencyMatrix => {
            g.ensure_simple()?;
            VerifyMode::Adjacency
        }
        OracleModel::EdgeList => VerifyMode::EdgeList,
    };
    let start = (o.classical_queries(), o.quantum_queries());
    let b = BoruvkaTree::build(g, t, o)?;

    // The marker is what one superposed oracle call computes; evaluating it
    // here only materializes the marked set for the simulator.
    let violates = |id: EdgeId| {
        let e = &g.edges()[id];
        !t.contains(id) && e.w < b.path_max(e.u, e.v).map_or(f64::NEG_INFINITY, |pm| pm.max_weight)
    };
    let n = g.n();
    let (logical, to_edge): (usize, Box<dyn Fn(usize) -> Option<EdgeId>>) = match mode {
        VerifyMode::Adjacency => (
            n * (n - 1) / 2,
            Box::new(|i| {
                let (a, c) = pair_at(i);
                g.edge_between(a, c)
            }),
        ),
        _ => (g.m(), Box::new(Some)),
    };
    let space = SearchSpace::new(logical, |i| to_edge(i).is_some_and(violates));

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let outcome = amplified_search(&space, restarts_for(cfg.delta), &mut rng, o, &cfg.grover);

    let mut ops = b.build_ops() + outcome.oracle_applications() * (b.height() as u64 + 1);
    let verdict = match outcome.found {
        None => Verdict::Minimal,
        Some(i) => {
            let id = to_edge(i).ok_or_else(|| Error::InvalidWitness(format!("search index {i} is not an edge")))?;
            let e = &g.edges()[id];
            let pm = direct_path_max(g, t, e.u, e.v)?;
            ops += n as u64;
            if t.contains(id) || e.w >= pm.max_weight {
                return Err(Error::InvalidWitness(format!("edge {id} failed certification")));
            }
            Verdict::NotMinimal(witness(g, t, id, pm.max_edge_id)?)
        }
    };

    let mut report = base_report(g, mode, o, start, ops);
    report.grover_iterations = outcome.grover_iterations;
    report.analytic_mode = outcome.analytic_mode;
    report.search_space = Some(logical);
    report.domain_size = Some(space.domain_size());
    report.delta = Some(cfg.delta);
    report.schedules = outcome.schedules;
    report.rounds = outcome.rounds;
    Ok((verdict, report))
}

/// Kruskal's algorithm under the `(w, id)` order.
pub fn kruskal_mst(g: &Graph) -> SpanningTree {
    let mut order: Vec<EdgeKey> = g.edges().iter().map(|e| e.key()).collect();
    order.sort_unstable();
    let mut dsu = DisjointSets::new(g.n());
    let mut ids = Vec::with_capacity(g.n() - 1);
    for k in order {
        let e = &g.edges()[k.id];
        if dsu.union(e.u, e.v) {
            ids.push(k.id);
            if ids.len() + 1 == g.n() {
                break;
            }
        }
    }
    // a connected graph always completes the forest
    SpanningTree::from_valid(g, ids)
}

/// Weight of a minimum spanning tree.
pub fn mst_weight(g: &Graph) -> f64 {
    tree_weight(g, &kruskal_mst(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;

    const TRIANGLE: &str = "3 3\n0 1 1.0\n1 2 2.0\n0 2 3.0\n";

    fn setup(text: &str, ids: Vec<EdgeId>) -> (Graph, SpanningTree) {
        let g = load_graph(text).unwrap();
        let t = SpanningTree::new(&g, ids).unwrap();
        (g, t)
    }

    #[test]
    fn violation_predicate() {
        let (g, t) = setup(TRIANGLE, vec![0, 2]);
        let o = InstrumentedOracle::edge_list(&g);
        let b = BoruvkaTree::build(&g, &t, &o).unwrap();
        assert!(is_violating(&g, &t, &b, 1, &o).unwrap());
        assert!(!is_violating(&g, &t, &b, 0, &o).unwrap());
        assert!(!is_violating(&g, &t, &b, 2, &o).unwrap());
        // build (2) + one query for the single non-tree edge
        assert_eq!(o.classical_queries(), 3);

        let (g, t) = setup(TRIANGLE, vec![0, 1]);
        let o = InstrumentedOracle::edge_list(&g);
        let b = BoruvkaTree::build(&g, &t, &o).unwrap();
        assert!(!is_violating(&g, &t, &b, 2, &o).unwrap());
    }

    #[test]
    fn equal_weights_do_not_violate() {
        // C4 with chord, all weights equal
        let (g, t) = setup("4 5\n0 1 2\n1 2 2\n2 3 2\n3 0 2\n0 2 2\n", vec![0, 1, 2]);
        let o = InstrumentedOracle::edge_list(&g);
        let b = BoruvkaTree::build(&g, &t, &o).unwrap();
        assert!(!is_violating(&g, &t, &b, 3, &o).unwrap());
        assert!(!is_violating(&g, &t, &b, 4, &o).unwrap());
        assert!(classical_verify(&g, &t, &o).unwrap().0.is_minimal());
    }

    #[test]
    fn classical_on_triangle() {
        let (g, t) = setup(TRIANGLE, vec![0, 1]);
        let o = InstrumentedOracle::edge_list(&g);
        let (v, r) = classical_verify(&g, &t, &o).unwrap();
        assert_eq!(v, Verdict::Minimal);
        assert_eq!(r.classical_weight_queries, 3);
        assert_eq!(r.quantum_oracle_applications, 0);

        let (g, t) = setup(TRIANGLE, vec![0, 2]);
        let o = InstrumentedOracle::edge_list(&g);
        let (v, _) = classical_verify(&g, &t, &o).unwrap();
        let w = v.witness().unwrap();
        assert_eq!((w.violating_edge_id, w.replaced_edge_id), (1, 2));
        assert_eq!(w.improved_tree.sorted_ids(), vec![0, 1]);
        assert_eq!(tree_weight(&g, &w.improved_tree), 3.0);
        assert_eq!(w.weight_delta, -1.0);
    }

    #[test]
    fn classical_single_edge() {
        let (g, t) = setup("2 1\n0 1 3\n", vec![0]);
        let o = InstrumentedOracle::adjacency(&g);
        let (v, r) = classical_verify(&g, &t, &o).unwrap();
        assert!(v.is_minimal());
        assert_eq!(r.classical_weight_queries, 1);
    }

    #[test]
    fn classical_picks_least_violator() {
        // path 0-1-2-3 of weight 10 each, chords 0-2 (3) and 1-3 (2)
        let (g, t) = setup("4 5\n0 1 10\n1 2 10\n2 3 10\n0 2 3\n1 3 2\n", vec![0, 1, 2]);
        let o = InstrumentedOracle::edge_list(&g);
        let (v, _) = classical_verify(&g, &t, &o).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.violating_edge_id, 4);
        // heaviest on path 1-2-3 under (w, id) is edge 2
        assert_eq!(w.replaced_edge_id, 2);
    }

    #[test]
    fn quantum_on_triangle_agrees() {
        let (g, t) = setup(TRIANGLE, vec![0, 2]);
        for seed in 0..20 {
            for o in [InstrumentedOracle::edge_list(&g), InstrumentedOracle::adjacency(&g)] {
                let (v, r) = quantum_verify(&g, &t, &o, seed, &VerifyConfig::default()).unwrap();
                let w = v.witness().expect("exactly one violator");
                assert_eq!((w.violating_edge_id, w.replaced_edge_id), (1, 2));
                assert_eq!(r.classical_weight_queries, 2);
                assert_eq!(r.quantum_oracle_applications, o.quantum_queries());
            }
        }
    }

    #[test]
    fn quantum_minimal_is_always_minimal() {
        let (g, t) = setup(TRIANGLE, vec![0, 1]);
        let o = InstrumentedOracle::edge_list(&g);
        let cfg = VerifyConfig::default();
        let (v, r) = quantum_verify(&g, &t, &o, 1, &cfg).unwrap();
        assert!(v.is_minimal());
        assert_eq!(r.schedules, 7);
        assert_eq!(r.grover_iterations, 7 * cfg.grover.cutoff(4));
    }

    #[test]
    fn adjacency_mode_rejects_multigraph() {
        let (g, t) = setup("2 2\n0 1 2\n0 1 1\n", vec![0]);
        let o = InstrumentedOracle::adjacency(&g);
        assert_eq!(
            quantum_verify(&g, &t, &o, 0, &VerifyConfig::default()),
            Err(Error::ParallelEdges { u: 0, v: 1 })
        );
        // the edge list keeps both copies, and the lighter one violates
        let o = InstrumentedOracle::edge_list(&g);
        let (v, _) = quantum_verify(&g, &t, &o, 0, &VerifyConfig::default()).unwrap();
        assert_eq!(v.witness().unwrap().violating_edge_id, 1);
        let (v, _) = classical_verify(&g, &t, &o).unwrap();
        assert_eq!(v.witness().unwrap().replaced_edge_id, 0);
    }

    #[test]
    fn improve_checks_witness() {
        let (g, t) = setup(TRIANGLE, vec![0, 2]);
        assert_eq!(improve(&g, &t, 1, 2).unwrap().sorted_ids(), vec![0, 1]);
        assert!(matches!(improve(&g, &t, 1, 0), Err(Error::InvalidWitness(_)))); // 2 >= 1
        assert!(matches!(improve(&g, &t, 0, 2), Err(Error::InvalidWitness(_))));
        assert!(matches!(improve(&g, &t, 1, 1), Err(Error::InvalidWitness(_))));
        assert!(matches!(improve(&g, &t, 9, 2), Err(Error::InvalidWitness(_))));
        // path 0-1-2-3 plus chord 0-1': replacing an edge off the path is refused
        let (g, t) = setup("4 4\n0 1 5\n1 2 9\n2 3 9\n0 1 1\n", vec![0, 1, 2]);
        assert!(matches!(improve(&g, &t, 3, 1), Err(Error::InvalidWitness(_))));
        assert!(improve(&g, &t, 3, 0).is_ok());
    }

    #[test]
    fn kruskal_examples() {
        let g = load_graph(TRIANGLE).unwrap();
        let t = kruskal_mst(&g);
        assert_eq!(t.sorted_ids(), vec![0, 1]);
        assert_eq!(tree_weight(&g, &t), 3.0);
        let path = load_graph("4 3\n2 3 5\n0 1 1\n1 2 7\n").unwrap();
        assert_eq!(kruskal_mst(&path).sorted_ids(), vec![0, 1, 2]);
    }

    #[test]
    fn pair_enumeration() {
        let mut expect = Vec::new();
        for b in 1..40 {
            for a in 0..b {
                expect.push((a, b));
            }
        }
        for (i, p) in expect.iter().enumerate() {
            assert_eq!(pair_at(i), *p);
        }
    }

    #[test]
    fn config_bounds() {
        for delta in [0.0, 0.5, 0.7, -1.0] {
            let cfg = VerifyConfig {
                delta,
                ..Default::default()
            };
            assert!(cfg.validate().is_err());
        }
    }
}
