#![allow(dead_code)]

use mst_verify::{BoruvkaTree, DisjointSets, Graph, SpanningTree};

/// `ceil(log2(n))`, with 0 for n <= 1.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Checks the full-branching-tree shape of `b` for `(g, t)`. Returns a
/// description of the first violation.
pub fn check_structure(g: &Graph, t: &SpanningTree, b: &BoruvkaTree) -> Result<(), String> {
    let n = g.n();
    let nodes = b.nodes();
    if nodes.len() > 2 * n {
        return Err(format!("{} nodes > 2n = {}", nodes.len(), 2 * n));
    }
    if b.height() > ceil_log2(n) {
        return Err(format!("height {} > ceil(log2 {n})", b.height()));
    }
    let leaves = nodes.iter().filter(|x| x.children.is_empty()).count();
    if leaves != n {
        return Err(format!("{leaves} leaves for {n} vertices"));
    }
    let mut seen_leaf = vec![false; nodes.len()];
    for v in 0..n {
        let l = b.leaf(v);
        if !nodes[l].children.is_empty() || seen_leaf[l] {
            return Err(format!("vertex {v} maps to a bad leaf {l}"));
        }
        seen_leaf[l] = true;
        let mut depth = 0;
        let mut x = l;
        while let Some(p) = nodes[x].parent {
            depth += 1;
            x = p;
            if depth > nodes.len() {
                return Err("parent cycle".into());
            }
        }
        if x != b.root() {
            return Err(format!("leaf {l} does not reach the root"));
        }
        if depth != b.height() {
            return Err(format!("leaf {l} at depth {depth}, height {}", b.height()));
        }
    }
    for x in nodes {
        if !x.children.is_empty() && x.children.len() < 2 {
            return Err(format!("node {} has a single child", x.id));
        }
        for &c in &x.children {
            if nodes[c].parent != Some(x.id) {
                return Err(format!("child {c} of {} points elsewhere", x.id));
            }
        }
        match (x.parent, x.branch) {
            (None, None) => {}
            (Some(_), Some(k)) => {
                if !t.contains(k.id) || g.edges()[k.id].w != k.weight {
                    return Err(format!("node {} branch {:?} is not a tree edge weight", x.id, k));
                }
            }
            _ => return Err(format!("node {} has a branch iff it has a parent violated", x.id)),
        }
    }
    if nodes[b.root()].parent.is_some() {
        return Err("root has a parent".into());
    }
    Ok(())
}

/// All pairs `(a, b)`, `a < b`, of `n` vertices, in a fixed order.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Connected graphs on `n` vertices up to isomorphism, as edge lists. Each
/// labeled edge subset is kept only if it is the smallest bitmask in its
/// relabeling orbit.
pub fn unlabeled_connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![vec![]];
    }
    let pairs = all_pairs(n);
    let mut index = vec![vec![0usize; n]; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        index[a][b] = i;
        index[b][a] = i;
    }
    let perms = permutations(n);
    // image of every pair bit under every permutation
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(a, b)| index[p[a]][p[b]]).collect())
        .collect();

    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let canonical = maps.iter().all(|map| {
            let mut img = 0u32;
            for (i, &j) in map.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    img |= 1 << j;
                }
            }
            img >= mask
        });
        if !canonical {
            continue;
        }
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let mut d = DisjointSets::new(n);
        for &(a, b) in &edges {
            d.union(a, b);
        }
        if d.count() == 1 {
            out.push(edges);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    heap_permute(k - 1, cur, out);
    for i in 0..k - 1 {
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
        heap_permute(k - 1, cur, out);
    }
}

/// Every spanning tree of an `n`-vertex edge list, as sets of edge indices.
pub fn spanning_trees(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n.saturating_sub(1));
    choose(n, edges, 0, &mut cur, &mut out);
    out
}

fn choose(n: usize, edges: &[(usize, usize)], from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() + 1 == n || n == 0 {
        let mut d = DisjointSets::new(n);
        if cur.iter().all(|&i| d.union(edges[i].0, edges[i].1)) {
            out.push(cur.clone());
        }
        return;
    }
    let need = n - 1 - cur.len();
    for i in from..edges.len() {
        if edges.len() - i < need {
            break;
        }
        cur.push(i);
        choose(n, edges, i + 1, cur, out);
        cur.pop();
    }
}

/// Sum of weights in ascending order, matching the library's summation.
pub fn sorted_sum(mut ws: Vec<f64>) -> f64 {
    ws.sort_by(f64::total_cmp);
    ws.into_iter().sum()
}

/// Brute-force minimum spanning weight: best over every spanning tree.
pub fn brute_force_mst_weight(n: usize, edges: &[(usize, usize, f64)]) -> f64 {
    let pairs: Vec<_> = edges.iter().map(|&(a, b, _)| (a, b)).collect();
    spanning_trees(n, &pairs)
        .into_iter()
        .map(|t| sorted_sum(t.iter().map(|&i| edges[i].2).collect()))
        .fold(f64::INFINITY, f64::min)
}

/// Minimum spanning weight by Prim's algorithm on a dense matrix, summed in
/// ascending order. Independent of the library's Kruskal.
pub fn prim_weight(g: &Graph) -> f64 {
    let n = g.n();
    let mut w = vec![vec![f64::INFINITY; n]; n];
    for e in g.edges() {
        if e.w < w[e.u][e.v] {
            w[e.u][e.v] = e.w;
            w[e.v][e.u] = e.w;
        }
    }
    let mut inside = vec![false; n];
    let mut dist = vec![f64::INFINITY; n];
    let mut picked = Vec::with_capacity(n.saturating_sub(1));
    dist[0] = 0.0;
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !inside[v])
            .min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
            .unwrap();
        inside[v] = true;
        if step > 0 {
            picked.push(dist[v]);
        }
        for x in 0..n {
            if !inside[x] && w[v][x] < dist[x] {
                dist[x] = w[v][x];
            }
        }
    }
    sorted_sum(picked)
}

/// Kruskal over weights in {1, 2, 3} on at most 16 vertices, without
/// allocation: edges are taken bucket by bucket.
pub fn small_kruskal_weight(n: usize, edges: &[(usize, usize)], weights: &[u32]) -> u32 {
    let order = (1..=3).flat_map(|w| (0..edges.len()).filter(move |&i| weights[i] == w));
    let mut parent = [0usize; 16];
    for (v, p) in parent.iter_mut().enumerate().take(n) {
        *p = v;
    }
    fn root(parent: &mut [usize; 16], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    let mut total = 0;
    for i in order {
        let (a, b) = (root(&mut parent, edges[i].0), root(&mut parent, edges[i].1));
        if a != b {
            parent[a] = b;
            total += weights[i];
        }
    }
    total
}
