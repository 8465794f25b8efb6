/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    /// `(parent, size)` per element; size is meaningful at roots only.
    nodes: Vec<(usize, usize)>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            nodes: (0..n).map(|x| (x, 1)).collect(),
            sets: n,
        }
    }

    /// Resets to `n` singletons, keeping the allocation.
    pub fn reset(&mut self, n: usize) {
        self.nodes.clear();
        self.nodes.extend((0..n).map(|x| (x, 1)));
        self.sets = n;
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.nodes[x].0 != x {
            let grand = self.nodes[self.nodes[x].0].0;
            self.nodes[x].0 = grand;
            x = grand;
        }
        x
    }

    /// Returns false if `a` and `b` were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.nodes[ra].1 < self.nodes[rb].1 {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.nodes[rb].0 = ra;
        self.nodes[ra].1 += self.nodes[rb].1;
        self.sets -= 1;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Number of disjoint sets remaining.
    pub fn count(&self) -> usize {
        self.sets
    }
}
