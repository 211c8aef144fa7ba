use super::{split_in_out, Labels};
use crate::graph::{Edge, EdgeSet, VertexSet};
use crate::oracle::{CommitState, Extension, ExtensionRule};

/// Two-round adversary on `|A| = |B| = 2k`.
///
/// Canonical indices: `0..k` is `A_in`, `k..2k` is `A_out`, `2k..3k` is
/// `B_in`, `3k..4k` is `B_out`. Round 1 fixes the partition around the query
/// and commits `M = {a_i b_i}` on the in-vertices plus `A_out × B_out` as
/// non-edges. Round 2 never touches the out-side of the less-queried half.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoRoundRule {
    k: usize,
    natural: Labels,
    labels: Labels,
}

impl TwoRoundRule {
    pub fn new(a: &[usize], b: &[usize]) -> Self {
        assert_eq!(a.len(), b.len());
        assert!(a.len().is_multiple_of(2), "each side needs an even number of vertices");
        let all: Vec<usize> = a.iter().chain(b).copied().collect();
        let natural = Labels::new(&all);
        TwoRoundRule { k: a.len() / 2, natural, labels: natural }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    fn a_in(&self, i: usize) -> usize {
        i
    }
    fn a_out(&self, i: usize) -> usize {
        self.k + i
    }
    fn b_in(&self, i: usize) -> usize {
        2 * self.k + i
    }
    fn b_out(&self, i: usize) -> usize {
        3 * self.k + i
    }

    /// The structure graph `H_1` in canonical indices.
    pub fn canonical_h1(&self) -> (EdgeSet, EdgeSet) {
        let k = self.k;
        let m = (0..k).map(|i| Edge::new(self.a_in(i), self.b_in(i))).collect();
        let f = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| Edge::new(self.a_out(i), self.b_out(j)))
            .collect();
        (m, f)
    }

    fn first_round(&mut self, residual: VertexSet) -> Extension {
        let k = self.k;
        let a: Vec<usize> = (0..2 * k).map(|c| self.natural.actual(c)).collect();
        let b: Vec<usize> = (2 * k..4 * k).map(|c| self.natural.actual(c)).collect();
        let mut order = split_in_out(&a, residual, k);
        order.extend(split_in_out(&b, residual, k));
        self.labels = Labels::new(&order);

        let (m, f) = self.canonical_h1();
        let l = self.labels;
        let to_actual = |e: Edge| l.edge(e.u(), e.v());
        Extension {
            matched: m.iter().map(to_actual).filter(|e| e.endpoints().is_subset(residual)).collect(),
            commit_edges: m.iter().map(to_actual).collect(),
            commit_non_edges: f.iter().map(to_actual).collect(),
        }
    }

    fn second_round(&self, residual: VertexSet, state: &CommitState) -> Extension {
        let k = self.k;
        let rc = self.labels.canonical_of(residual);
        let pick = |f: &dyn Fn(usize) -> usize| -> Vec<usize> { (0..k).map(f).filter(|&c| rc.contains(c)).collect() };
        let a_in = pick(&|i| self.a_in(i));
        let a_out = pick(&|i| self.a_out(i));
        let b_in = pick(&|i| self.b_in(i));
        let b_out = pick(&|i| self.b_out(i));

        // The larger in-half absorbs the other in-half, then spills over into
        // the opposite out-half; its own out-half stays unmatched.
        let (big, small, mut spill) = if a_in.len() >= b_in.len() { (a_in, b_in, b_out) } else { (b_in, a_in, a_out) };
        let mut matched = Vec::new();
        for (t, &u) in big.iter().enumerate() {
            let partner = match small.get(t) {
                Some(&v) => Some(v),
                None => spill
                    .iter()
                    .position(|&v| !state.non_edges.contains(self.labels.edge(u, v)))
                    .map(|p| spill.remove(p)),
            };
            if let Some(v) = partner {
                matched.push(self.labels.edge(u, v));
            }
        }
        Extension { matched, ..Extension::default() }
    }
}

impl ExtensionRule for TwoRoundRule {
    fn domain(&self) -> VertexSet {
        self.natural.domain()
    }

    fn round_budget(&self) -> Option<usize> {
        Some(2)
    }

    fn extend(&mut self, round: usize, residual: VertexSet, state: &CommitState) -> Result<Extension, String> {
        match round {
            1 => Ok(self.first_round(residual)),
            2 => Ok(self.second_round(residual, state)),
            _ => Err(format!("the two-round rule has no round {round}")),
        }
    }

    /// `M*_L ∪ M*_R`: `A_in` to `B_out` and `B_in` to `A_out`.
    fn perfect_matching_hint(&self) -> Vec<Edge> {
        (0..self.k)
            .flat_map(|i| {
                [self.labels.edge(self.a_in(i), self.b_out(i)), self.labels.edge(self.a_out(i), self.b_in(i))]
            })
            .collect()
    }
}
