use crate::graph::{Edge, VertexSet};
use crate::oracle::{CommitState, Extension, ExtensionRule};

/// The bomb graph on `n` vertices: `U = 0..n/2` independent, `V = n/2..n` a
/// clique, and `u_i v_i` the perfect matching `M*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BombRule {
    n: usize,
}

impl BombRule {
    pub fn new(n: usize) -> Self {
        assert!(n.is_multiple_of(2));
        BombRule { n }
    }

    pub fn half(&self) -> usize {
        self.n / 2
    }

    pub fn u_side(&self) -> VertexSet {
        VertexSet::range(0, self.half())
    }

    pub fn v_side(&self) -> VertexSet {
        VertexSet::range(self.half(), self.n)
    }

    pub fn m_star(&self) -> Vec<Edge> {
        let h = self.half();
        (0..h).map(|i| Edge::new(i, h + i)).collect()
    }

    /// Is `e` an `M*` edge?
    pub fn is_m_star(&self, e: Edge) -> bool {
        e.u() < self.half() && e.v() == e.u() + self.half()
    }
}

impl ExtensionRule for BombRule {
    fn domain(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn initial_non_edges(&self) -> Vec<Edge> {
        let h = self.half();
        let mut f = Vec::new();
        for u in 0..h {
            f.extend((u + 1..h).map(|w| Edge::new(u, w)));
            f.extend((0..h).filter(|&j| j != u).map(|j| Edge::new(u, h + j)));
        }
        f
    }

    fn extend(&mut self, _round: usize, residual: VertexSet, _state: &CommitState) -> Result<Extension, String> {
        let v: Vec<usize> = residual.intersection(self.v_side()).iter().collect();
        let mut matched: Vec<Edge> = v.chunks_exact(2).map(|p| Edge::new(p[0], p[1])).collect();
        if v.len() % 2 == 1 {
            let last = v[v.len() - 1];
            let u = last - self.half();
            if residual.contains(u) {
                matched.push(Edge::new(u, last));
            }
        }
        Ok(Extension { matched, ..Extension::default() })
    }

    fn perfect_matching_hint(&self) -> Vec<Edge> {
        self.m_star()
    }
}
