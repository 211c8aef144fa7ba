use crate::graph::{Edge, VertexSet};
use crate::oracle::{CommitState, Extension, ExtensionRule};

/// The anti-sorted pairing `a_i b_{ℓ+1-i}` of two ascending position lists,
/// keeping only pairs with `b ≥ a`.
pub fn semi_complete_formula(a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
    let l = b.len();
    a.iter().take(l).enumerate().map(|(i, &x)| (x, b[l - 1 - i])).filter(|&(x, y)| y >= x).collect()
}

/// One copy of the semi-complete graph `G_c`: `a_i b_j` is an edge iff `j ≥ i`.
///
/// Every pair with `j < i` is a non-edge from the start, so the only perfect
/// matching is `{a_i b_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiCompleteRule {
    a: Vec<u8>,
    b: Vec<u8>,
}

impl SemiCompleteRule {
    pub fn new(a: &[usize], b: &[usize]) -> Self {
        assert_eq!(a.len(), b.len());
        SemiCompleteRule { a: a.iter().map(|&v| v as u8).collect(), b: b.iter().map(|&v| v as u8).collect() }
    }

    pub fn c(&self) -> usize {
        self.a.len()
    }

    fn edge(&self, i: usize, j: usize) -> Edge {
        Edge::new(self.a[i] as usize, self.b[j] as usize)
    }

    /// `M* = {a_i b_i}` of this gadget.
    pub fn m_star(&self) -> Vec<Edge> {
        (0..self.c()).map(|i| self.edge(i, i)).collect()
    }

    fn positions(side: &[u8], set: VertexSet) -> Vec<usize> {
        (0..side.len()).filter(|&i| set.contains(side[i] as usize)).collect()
    }
}

impl ExtensionRule for SemiCompleteRule {
    fn domain(&self) -> VertexSet {
        self.a.iter().chain(&self.b).map(|&v| v as usize).collect()
    }

    fn initial_non_edges(&self) -> Vec<Edge> {
        let c = self.c();
        (0..c).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| self.edge(i, j)).collect()
    }

    fn extend(&mut self, _round: usize, residual: VertexSet, _state: &CommitState) -> Result<Extension, String> {
        let a = Self::positions(&self.a, residual);
        let b = Self::positions(&self.b, residual);
        let matched = semi_complete_formula(&a, &b).into_iter().map(|(i, j)| self.edge(i, j)).collect();
        Ok(Extension { matched, ..Extension::default() })
    }

    fn perfect_matching_hint(&self) -> Vec<Edge> {
        self.m_star()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::semi_complete_oracle;
    use crate::oracle::Oracle;

    #[test]
    fn formula_examples() {
        assert_eq!(semi_complete_formula(&[1, 2], &[2, 3]), vec![(1, 3), (2, 2)]);
        assert_eq!(semi_complete_formula(&[1, 2, 3, 4], &[1, 2, 3, 4]), vec![(1, 4), (2, 3)]);
        assert_eq!(semi_complete_formula(&[4], &[4]), vec![(4, 4)]);
        assert!(semi_complete_formula(&[3], &[1, 2]).is_empty());
    }

    #[test]
    fn oracle_answers_formula_and_commits_only_g_c() {
        let mut o = semi_complete_oracle(4, 1).unwrap();
        // a1 a2 b2 b3 with A = 0..4, B = 4..8.
        let m = o.respond([0, 1, 5, 6].into_iter().collect()).unwrap();
        assert_eq!(m.edges(), &[Edge::new(0, 6), Edge::new(1, 5)]);
        let pm = o.commitment().unwrap().perfect_matching;
        assert_eq!(pm.edges(), &[Edge::new(0, 4), Edge::new(1, 5), Edge::new(2, 6), Edge::new(3, 7)]);
    }
}
