//! Borůvka tree of a spanning tree, and path-maximum queries over it.
//!
//! The tree is built bottom-up by running Borůvka phases on the spanning tree
//! alone. Leaves are the vertices; each phase every current node picks its
//! lightest incident tree edge, and the connected components of the picked
//! edges become the next level. A node's branch to its parent carries the
//! edge it picked. The heaviest branch met while climbing from two leaves to
//! their lowest common ancestor is the heaviest edge on the tree path
//! between the two vertices.

use std::fmt::Write as _;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeKey, Graph, SpanningTree, VertexId};
use crate::oracle::{InstrumentedOracle, QueryContext};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct BNode {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    /// Edge this node picked when it merged into its parent; `None` at the root.
    pub branch: Option<EdgeKey>,
    pub children: Vec<NodeId>,
    /// 0 for leaves, increasing towards the root.
    pub level: usize,
}

impl BNode {
    pub fn branch_weight(&self) -> Option<f64> {
        self.branch.map(|k| k.weight)
    }

    pub fn branch_edge_id(&self) -> Option<EdgeId> {
        self.branch.map(|k| k.id)
    }
}

/// Heaviest edge on a tree path, under the `(w, id)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathMaxAnswer {
    pub max_weight: f64,
    pub max_edge_id: EdgeId,
}

impl From<EdgeKey> for PathMaxAnswer {
    fn from(k: EdgeKey) -> Self {
        Self {
            max_weight: k.weight,
            max_edge_id: k.id,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoruvkaTree {
    nodes: Vec<BNode>,
    leaf_of: Vec<NodeId>,
    root: NodeId,
    height: usize,
    level_sizes: Vec<usize>,
    build_ops: u64,
}

impl BoruvkaTree {
    /// Builds the tree for `t`. Each tree edge weight is read through the
    /// oracle exactly once, so the classical counter grows by `n - 1`.
    pub fn build(g: &Graph, t: &SpanningTree, o: &InstrumentedOracle<'_>) -> Result<Self> {
        let n = g.n();
        if t.len() + 1 != n {
            return Err(Error::NotSpanning(format!("expected {} edges, got {}", n - 1, t.len())));
        }

        // (a, b, key) with a, b indices into the current level
        let mut edges: Vec<(usize, usize, EdgeKey)> = Vec::with_capacity(t.len());
        for &id in t.edge_ids() {
            let e = g
                .edge(id)
                .ok_or_else(|| Error::NotInGraph(format!("edge index {id}")))?;
            let weight = o.edge_weight(id, QueryContext::Classical)?;
            edges.push((e.u, e.v, EdgeKey { weight, id }));
        }

        let mut nodes: Vec<BNode> = Vec::with_capacity(2 * n);
        nodes.extend((0..n).map(|id| BNode {
            id,
            parent: None,
            branch: None,
            children: Vec::new(),
            level: 0,
        }));
        let mut current: Vec<NodeId> = (0..n).collect();
        // at most ceil(log2 n) phases
        let mut level_sizes = Vec::with_capacity(usize::BITS as usize - n.leading_zeros() as usize + 1);
        level_sizes.push(n);
        let mut ops = 0u64;
        let mut level = 0;

        // per-phase buffers, reused across phases
        let mut best: Vec<Option<(EdgeKey, usize)>> = Vec::with_capacity(n);
        let mut next_index: Vec<usize> = Vec::with_capacity(n);
        let mut next: Vec<NodeId> = Vec::with_capacity(n);
        let mut dsu = DisjointSets::new(n);
        while current.len() > 1 {
            let c = current.len();
            ops += (c + edges.len()) as u64;

            best.clear();
            best.resize(c, None);
            for &(a, b, key) in &edges {
                for (x, y) in [(a, b), (b, a)] {
                    if best[x].is_none_or(|(k, _)| key < k) {
                        best[x] = Some((key, y));
                    }
                }
            }

            dsu.reset(c);
            for (x, pick) in best.iter().enumerate() {
                let Some((_, y)) = *pick else {
                    return Err(Error::NotSpanning("tree edges do not connect all vertices".into()));
                };
                dsu.union(x, y);
            }

            level += 1;
            next_index.clear();
            next_index.resize(c, usize::MAX);
            next.clear();
            for x in 0..c {
                let r = dsu.find(x);
                if next_index[r] == usize::MAX {
                    next_index[r] = next.len();
                    let id = nodes.len();
                    nodes.push(BNode {
                        id,
                        parent: None,
                        branch: None,
                        children: Vec::new(),
                        level,
                    });
                    next.push(id);
                }
                let parent = next[next_index[r]];
                let child = current[x];
                nodes[child].parent = Some(parent);
                nodes[child].branch = best[x].map(|(k, _)| k);
                nodes[parent].children.push(child);
            }

            // Edges inside a new component are exactly the picked ones; the
            // rest are relabelled onto the next level.
            edges.retain_mut(|(a, b, _)| {
                let (ra, rb) = (dsu.find(*a), dsu.find(*b));
                *a = next_index[ra];
                *b = next_index[rb];
                ra != rb
            });
            std::mem::swap(&mut current, &mut next);
            level_sizes.push(current.len());
        }

        Ok(Self {
            root: current[0],
            height: level,
            leaf_of: (0..n).collect(),
            nodes,
            level_sizes,
            build_ops: ops,
        })
    }

    pub fn nodes(&self) -> &[BNode] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn leaf(&self, v: VertexId) -> NodeId {
        self.leaf_of[v]
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_of.len()
    }

    /// Number of nodes on each level, leaves first.
    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    /// Elementary steps spent during construction.
    pub fn build_ops(&self) -> u64 {
        self.build_ops
    }

    /// Heaviest edge on the tree path between `u` and `v`. No oracle queries.
    pub fn path_max(&self, u: VertexId, v: VertexId) -> Result<PathMaxAnswer> {
        self.path_max_counted(u, v).map(|(a, _)| a)
    }

    /// As [`path_max`](Self::path_max), also returning the number of levels climbed.
    pub fn path_max_counted(&self, u: VertexId, v: VertexId) -> Result<(PathMaxAnswer, usize)> {
        let n = self.leaf_of.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let (mut a, mut b) = (self.leaf_of[u], self.leaf_of[v]);
        let mut best: Option<EdgeKey> = None;
        let mut steps = 0;
        // all leaves sit on level 0, so both climbs stay on the same level
        while a != b {
            for x in [a, b] {
                let k = self.nodes[x].branch;
                if k > best {
                    best = k;
                }
            }
            a = self.nodes[a].parent.expect("non-root node has a parent");
            b = self.nodes[b].parent.expect("non-root node has a parent");
            steps += 1;
        }
        let best = best.expect("distinct leaves climb at least one level");
        Ok((best.into(), steps))
    }

    /// One node per line: `id level parent branch_weight branch_edge_id`,
    /// with `-` for absent fields.
    pub fn to_outline(&self) -> String {
        let mut s = String::new();
        for node in &self.nodes {
            let parent = node.parent.map_or("-".to_string(), |p| p.to_string());
            let (w, e) = match node.branch {
                Some(k) => (k.weight.to_string(), k.id.to_string()),
                None => ("-".into(), "-".into()),
            };
            let _ = writeln!(s, "{} {} {} {} {}", node.id, node.level, parent, w, e);
        }
        s
    }
}

/// Heaviest edge on the tree path from `u` to `v`, found by walking the tree.
/// O(n); a reference for the Borůvka answer.
pub fn direct_path_max(g: &Graph, t: &SpanningTree, u: VertexId, v: VertexId) -> Result<PathMaxAnswer> {
    if u == v {
        return Err(Error::SameVertex(u));
    }
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
    }
    Ok(direct_path_max_from(g, t, u)[v].expect("tree spans every vertex"))
}

/// Path maxima from `source` to every vertex (`None` at the source itself).
pub fn direct_path_max_from(g: &Graph, t: &SpanningTree, source: VertexId) -> Vec<Option<PathMaxAnswer>> {
    let adj = t.adjacency(g);
    let mut best: Vec<Option<EdgeKey>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    let mut stack = vec![source];
    seen[source] = true;
    while let Some(x) = stack.pop() {
        for &(y, id) in &adj[x] {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            let k = g.edges()[id].key();
            best[y] = Some(best[x].map_or(k, |b| b.max(k)));
            stack.push(y);
        }
    }
    best.into_iter().map(|k| k.map(PathMaxAnswer::from)).collect()
}
