//! Weighted undirected graphs, candidate spanning trees, and their text formats.
//!
//! Graph file:
//!
//! ```text
//! n m
//! u v w      (m lines)
//! ```
//!
//! Tree file: a header line `pairs` or `indices`, followed by n-1 lines of
//! either `u v` endpoint pairs or single 0-based edge indices.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    /// Smaller endpoint.
    pub u: VertexId,
    /// Larger endpoint.
    pub v: VertexId,
    pub w: f64,
}

impl Edge {
    pub fn key(&self) -> EdgeKey {
        EdgeKey {
            weight: self.w,
            id: self.id,
        }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Total order on edges: weight first, edge id breaks ties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeKey {
    pub weight: f64,
    pub id: EdgeId,
}

impl Eq for EdgeKey {}

impl Ord for EdgeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.total_cmp(&other.weight).then(self.id.cmp(&other.id))
    }
}

impl PartialOrd for EdgeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    /// `(u, v, id)` sorted by pair then by edge key; the first entry of each
    /// pair is the lightest edge between those endpoints.
    pairs: Vec<(VertexId, VertexId, EdgeId)>,
    parallel: Option<(VertexId, VertexId)>,
}

impl Graph {
    /// Builds a validated graph. Endpoints are normalized so `u < v`; edge ids
    /// follow input order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, f64)>,
    {
        if n == 0 {
            return Err(Error::Empty);
        }
        let edges = edges.into_iter();
        let mut out = Vec::with_capacity(edges.size_hint().0);
        for (id, (a, b, w)) in edges.enumerate() {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { edge: id, vertex: a });
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeight { edge: id, weight: w });
            }
            out.push(Edge {
                id,
                u: a.min(b),
                v: a.max(b),
                w,
            });
        }

        let mut dsu = DisjointSets::new(n);
        for e in &out {
            dsu.union(e.u, e.v);
        }
        if dsu.count() != 1 {
            return Err(Error::Disconnected {
                components: dsu.count(),
            });
        }

        let mut pairs: Vec<_> = out.iter().map(|e| (e.u, e.v, e.id)).collect();
        pairs.sort_unstable_by(|x, y| {
            (x.0, x.1)
                .cmp(&(y.0, y.1))
                .then_with(|| out[x.2].key().cmp(&out[y.2].key()))
        });
        let parallel = pairs
            .windows(2)
            .find(|p| (p[0].0, p[0].1) == (p[1].0, p[1].1))
            .map(|p| (p[0].0, p[0].1));

        Ok(Self {
            n,
            edges: out,
            pairs,
            parallel,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    /// Lightest edge joining `a` and `b` under the `(w, id)` order, in either
    /// orientation.
    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let key = (a.min(b), a.max(b));
        let i = self.pairs.partition_point(|p| (p.0, p.1) < key);
        self.pairs.get(i).filter(|p| (p.0, p.1) == key).map(|p| p.2)
    }

    /// Some pair of vertices joined by more than one edge, if any.
    pub fn parallel_pair(&self) -> Option<(VertexId, VertexId)> {
        self.parallel
    }

    pub fn ensure_simple(&self) -> Result<()> {
        match self.parallel {
            Some((u, v)) => Err(Error::ParallelEdges { u, v }),
            None => Ok(()),
        }
    }

    /// Canonical text form: `n m` header, then one `u v w` line per edge in
    /// id order with `u < v`.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(16 * (self.edges.len() + 1));
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(s, "{} {} {}", e.u, e.v, e.w);
        }
        s
    }
}

/// Parses and validates a graph file.
pub fn load_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let head = fields::<usize>(hline, header, 2, "expected `n m`")?;
    let (n, m) = (head[0], head[1]);

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, line) = lines.next().ok_or(Error::Parse {
            line: hline + edges.len() + 1,
            msg: format!("expected {m} edge lines, found {}", edges.len()),
        })?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::Parse {
                line: lno,
                msg: "expected `u v w`".into(),
            });
        }
        let u = parse_tok::<usize>(lno, toks[0])?;
        let v = parse_tok::<usize>(lno, toks[1])?;
        let w = parse_tok::<f64>(lno, toks[2])?;
        edges.push((u, v, w));
    }
    if let Some((lno, _)) = lines.next() {
        return Err(Error::Parse {
            line: lno,
            msg: format!("trailing content after {m} edges"),
        });
    }
    Graph::new(n, edges)
}

/// Candidate spanning tree, stored as edge ids of its parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    edge_ids: Vec<EdgeId>,
    in_tree: Vec<bool>,
}

impl SpanningTree {
    /// Validates that `ids` names exactly n-1 distinct edges of `g` forming
    /// no cycle (hence spanning).
    pub fn new(g: &Graph, ids: Vec<EdgeId>) -> Result<Self> {
        let want = g.n() - 1;
        if ids.len() != want {
            return Err(Error::NotSpanning(format!("expected {want} edges, got {}", ids.len())));
        }
        let mut in_tree = vec![false; g.m()];
        let mut dsu = DisjointSets::new(g.n());
        for &id in &ids {
            let e = g
                .edge(id)
                .ok_or_else(|| Error::NotInGraph(format!("edge index {id}")))?;
            if in_tree[id] {
                return Err(Error::NotSpanning(format!("edge {id} listed twice")));
            }
            in_tree[id] = true;
            if !dsu.union(e.u, e.v) {
                return Err(Error::NotSpanning(format!(
                    "edge {id} ({}, {}) closes a cycle",
                    e.u, e.v
                )));
            }
        }
        Ok(Self { edge_ids: ids, in_tree })
    }

    /// Wraps ids already known to form a spanning tree of `g`.
    pub(crate) fn from_valid(g: &Graph, ids: Vec<EdgeId>) -> Self {
        let mut in_tree = vec![false; g.m()];
        for &id in &ids {
            in_tree[id] = true;
        }
        Self { edge_ids: ids, in_tree }
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.in_tree.get(id).copied().unwrap_or(false)
    }

    /// Edge ids in ascending order.
    pub fn sorted_ids(&self) -> Vec<EdgeId> {
        let mut ids = self.edge_ids.clone();
        ids.sort_unstable();
        ids
    }

    /// Per-vertex list of `(neighbor, edge id)` along tree edges.
    pub fn adjacency(&self, g: &Graph) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut adj = vec![Vec::new(); g.n()];
        for &id in &self.edge_ids {
            let e = &g.edges()[id];
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        adj
    }

    pub fn to_indices_text(&self) -> String {
        let mut s = String::from("indices\n");
        for id in &self.edge_ids {
            let _ = writeln!(s, "{id}");
        }
        s
    }

    pub fn to_pairs_text(&self, g: &Graph) -> String {
        let mut s = String::from("pairs\n");
        for &id in &self.edge_ids {
            let e = &g.edges()[id];
            let _ = writeln!(s, "{} {}", e.u, e.v);
        }
        s
    }
}

/// Parses a tree file against `g`. The header selects endpoint pairs or edge
/// indices. Pair input is refused on graphs with parallel edges, since a
/// pair would not identify a single edge.
pub fn load_tree(text: &str, g: &Graph) -> Result<SpanningTree> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `pairs` or `indices` header".into(),
    })?;
    let pairs = match header.trim() {
        "pairs" => true,
        "indices" => false,
        other => {
            return Err(Error::Parse {
                line: hline,
                msg: format!("unknown tree format `{other}`"),
            })
        }
    };
    if pairs {
        g.ensure_simple()?;
    }

    let mut ids = Vec::with_capacity(g.n().saturating_sub(1));
    for (lno, line) in lines {
        if pairs {
            let f = fields::<usize>(lno, line, 2, "expected `u v`")?;
            let id = g
                .edge_between(f[0], f[1])
                .ok_or_else(|| Error::NotInGraph(format!("pair ({}, {})", f[0], f[1])))?;
            ids.push(id);
        } else {
            let f = fields::<usize>(lno, line, 1, "expected an edge index")?;
            if f[0] >= g.m() {
                return Err(Error::NotInGraph(format!("edge index {}", f[0])));
            }
            ids.push(f[0]);
        }
    }
    SpanningTree::new(g, ids)
}

/// Total weight of `t`, summed in ascending `(w, id)` order so that trees
/// with the same weight multiset produce bit-identical totals.
pub fn tree_weight(g: &Graph, t: &SpanningTree) -> f64 {
    let mut keys: Vec<EdgeKey> = t.edge_ids().iter().map(|&id| g.edges()[id].key()).collect();
    keys.sort_unstable();
    keys.iter().map(|k| k.weight).sum()
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_tok<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad token `{tok}`"),
    })
}

fn fields<T: std::str::FromStr>(line: usize, s: &str, count: usize, what: &str) -> Result<Vec<T>> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.len() != count {
        return Err(Error::Parse {
            line,
            msg: what.to_string(),
        });
    }
    toks.into_iter().map(|t| parse_tok(line, t)).collect()
}
