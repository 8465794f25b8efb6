//! Seeded random instances: connected graphs and candidate trees.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, SpanningTree, VertexId};
use crate::verifier::kruskal_mst;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TreeKind {
    /// Kruskal's minimum spanning tree.
    Mst,
    /// Minimum spanning tree with one weight-increasing edge exchange.
    Perturbed,
    /// Uniformly random spanning tree.
    Random,
}

/// Checks that a simple connected graph with `n` vertices and `m` edges exists.
pub fn check_size(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let max = n * (n - 1) / 2;
    if m + 1 < n || m > max {
        return Err(Error::Config(format!(
            "no simple connected graph with n = {n} and m = {m} (need {} <= m <= {max})",
            n - 1
        )));
    }
    Ok(())
}

/// Simple connected graph: a random spanning backbone plus distinct random
/// extra pairs. Edge ids are shuffled so the backbone is not a prefix.
pub fn random_connected_graph<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
    mut weight: impl FnMut(&mut R) -> f64,
) -> Result<Graph> {
    check_size(n, m)?;
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
    let mut seen: HashSet<(VertexId, VertexId)> = HashSet::with_capacity(m);
    let norm = |a: VertexId, b: VertexId| (a.min(b), a.max(b));
    for i in 1..n {
        let p = norm(perm[i], perm[rng.gen_range(0..i)]);
        seen.insert(p);
        pairs.push(p);
    }

    let max = n * (n - 1) / 2;
    let extra = m - pairs.len();
    if extra * 2 > max - pairs.len() {
        let mut rest: Vec<_> = (0..n)
            .flat_map(|b| (0..b).map(move |a| (a, b)))
            .filter(|p| !seen.contains(p))
            .collect();
        rest.shuffle(rng);
        pairs.extend(rest.into_iter().take(extra));
    } else {
        while pairs.len() < m {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && seen.insert(norm(a, b)) {
                pairs.push(norm(a, b));
            }
        }
    }
    pairs.shuffle(rng);
    let edges: Vec<_> = pairs.into_iter().map(|(a, b)| (a, b, weight(rng))).collect();
    Graph::new(n, edges)
}

/// Uniform weight in `[lo, hi]` rounded to two decimals.
pub fn uniform_weight<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let w = lo + (hi - lo) * rng.gen::<f64>();
    ((w * 100.0).round() / 100.0).clamp(lo, hi)
}

/// Uniformly random spanning tree by loop-erased random walks (Wilson).
pub fn random_spanning_tree<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> SpanningTree {
    let n = g.n();
    let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for e in g.edges() {
        incident[e.u].push(e.id);
        incident[e.v].push(e.id);
    }
    let mut in_tree = vec![false; n];
    let mut next: Vec<Option<EdgeId>> = vec![None; n];
    in_tree[rng.gen_range(0..n)] = true;
    let mut ids = Vec::with_capacity(n - 1);
    for start in 0..n {
        let mut x = start;
        while !in_tree[x] {
            let id = *incident[x].choose(rng).expect("connected graph");
            next[x] = Some(id);
            x = g.edges()[id].other(x);
        }
        let mut x = start;
        while !in_tree[x] {
            in_tree[x] = true;
            let id = next[x].expect("walk recorded a step");
            ids.push(id);
            x = g.edges()[id].other(x);
        }
    }
    SpanningTree::new(g, ids).expect("loop-erased walks form a spanning tree")
}

/// Swaps one non-tree edge into `t` in place of a strictly lighter edge on
/// its tree path, raising the weight. `None` when no such exchange exists.
pub fn perturb<R: Rng + ?Sized>(g: &Graph, t: &SpanningTree, rng: &mut R) -> Option<SpanningTree> {
    let mut outside: Vec<EdgeId> = (0..g.m()).filter(|&id| !t.contains(id)).collect();
    outside.shuffle(rng);
    let adj = t.adjacency(g);
    for id in outside {
        let e = &g.edges()[id];
        // tree path from e.v back to e.u
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        let mut stack = vec![e.u];
        seen[e.u] = true;
        while let Some(x) = stack.pop() {
            for &(y, tid) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, tid));
                    stack.push(y);
                }
            }
        }
        let mut lighter = Vec::new();
        let mut x = e.v;
        while let Some((p, tid)) = parent[x] {
            if g.edges()[tid].w < e.w {
                lighter.push(tid);
            }
            x = p;
        }
        if let Some(&out) = lighter.choose(rng) {
            let ids = t.edge_ids().iter().map(|&k| if k == out { id } else { k }).collect();
            return Some(SpanningTree::new(g, ids).expect("exchange along a cycle keeps a tree"));
        }
    }
    None
}

/// Candidate tree of the requested kind. `Perturbed` falls back to the
/// minimum spanning tree when every exchange would tie or lose weight.
pub fn generate_tree<R: Rng + ?Sized>(g: &Graph, kind: TreeKind, rng: &mut R) -> SpanningTree {
    match kind {
        TreeKind::Mst => kruskal_mst(g),
        TreeKind::Random => random_spanning_tree(g, rng),
        TreeKind::Perturbed => {
            let mst = kruskal_mst(g);
            perturb(g, &mst, rng).unwrap_or(mst)
        }
    }
}
