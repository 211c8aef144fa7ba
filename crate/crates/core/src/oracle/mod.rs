//! Oracle interface, structure graphs and the streaming-consistent answering
//! protocol shared by all adversaries.

mod honest;
mod streaming;
mod verify;

use thiserror::Error;

use crate::game::RoundRecord;
use crate::graph::{
    max_matching_general_with_limit, perfect_matching_avoiding_sets, Bipartition, Edge, EdgeSet, EdgeStream, Graph,
    GraphError, Layout, Matching, VertexSet,
};

pub use honest::HonestOracle;
pub use streaming::{BudgetPolicy, CommitState, Extension, ExtensionRule, StreamingOracle};
pub use verify::{verify_streaming_consistency, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("query contains vertex {vertex}, the game has {n} vertices")]
    QueryOutOfRange { vertex: usize, n: usize },
    #[error("round {round} is beyond this oracle's budget of {budget} rounds")]
    UnsupportedRound { round: usize, budget: usize },
    #[error("oracle fault in round {round}: {reason}")]
    Fault { round: usize, reason: String },
    #[error("invalid oracle configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// What the oracle has promised by the end of a game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commitment {
    /// An ordering of every edge of the final graph.
    pub final_stream: EdgeStream,
    pub non_edges: EdgeSet,
    pub perfect_matching: Matching,
}

pub trait Oracle {
    fn layout(&self) -> Layout;

    /// Answers one query with a maximal matching of the induced subgraph.
    fn respond(&mut self, query: VertexSet) -> Result<Matching, OracleError>;

    /// Whether the engine may strip already-learned edges from a query before
    /// passing it on. Only sound for oracles whose stream begins with exactly
    /// the edges returned so far, in the order they were returned.
    fn accepts_reduced_queries(&self) -> bool {
        true
    }

    fn commitment(&self) -> Result<Commitment, OracleError>;

    /// The oracle's own structure graph (committed edges and non-edges).
    fn structure(&self) -> StructureGraph;

    /// Number of rounds the construction is defined for, if limited.
    fn round_budget(&self) -> Option<usize> {
        None
    }

    fn name(&self) -> String;
}

/// Committed edges `E` and non-edges `F` over a fixed vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureGraph {
    pub n: usize,
    pub bipartition: Option<Bipartition>,
    pub edges: EdgeSet,
    pub non_edges: EdgeSet,
}

impl StructureGraph {
    pub fn empty(layout: &Layout) -> Self {
        StructureGraph {
            n: layout.n,
            bipartition: layout.bipartition,
            edges: EdgeSet::new(),
            non_edges: EdgeSet::new(),
        }
    }

    pub fn is_disjoint(&self) -> bool {
        self.edges.is_disjoint(&self.non_edges)
    }

    /// A perfect matching avoiding every committed non-edge, if one exists.
    ///
    /// Edges of `E` may be part of it; since `E` and `F` are disjoint this is
    /// the same as asking for a perfect matching of the complement of `F`.
    pub fn completion(&self) -> Option<Matching> {
        completion(self.n, self.bipartition, &self.non_edges)
    }

    pub fn is_completable(&self) -> bool {
        self.completion().is_some()
    }

    /// True iff `self` contains every edge and non-edge of `other`.
    pub fn dominates(&self, other: &StructureGraph) -> bool {
        dominates(self, other)
    }
}

pub fn dominates(h: &StructureGraph, h_tilde: &StructureGraph) -> bool {
    h_tilde.edges.is_subset(&h.edges) && h_tilde.non_edges.is_subset(&h.non_edges)
}

/// What the player has learned: every returned edge, plus the (side
/// respecting) clique on the unmatched vertices of each query.
pub fn player_view(layout: &Layout, rounds: &[RoundRecord]) -> StructureGraph {
    let mut view = StructureGraph::empty(layout);
    for r in rounds {
        for e in r.response.iter() {
            view.edges.insert(e);
        }
        let unmatched = r.query.difference(r.response.covered());
        insert_independent(layout.bipartition, unmatched, &mut view.non_edges);
    }
    view
}

/// Adds every admissible pair inside `set` to `f`.
pub(crate) fn insert_independent(bipartition: Option<Bipartition>, set: VertexSet, f: &mut EdgeSet) {
    match bipartition {
        Some(bp) => f.insert_biclique(set.intersection(bp.a_side()), Some(set.intersection(bp.b_side()))),
        None => f.insert_biclique(set, None),
    }
}

pub(crate) fn completion(n: usize, bipartition: Option<Bipartition>, forbidden: &EdgeSet) -> Option<Matching> {
    match bipartition {
        Some(bp) => perfect_matching_avoiding_sets(bp.a_side(), bp.b_side(), forbidden).ok().flatten(),
        None => {
            if n % 2 == 1 {
                return None;
            }
            let all = VertexSet::full(n);
            let edges = (0..n).flat_map(|u| {
                all.difference(VertexSet::full(u + 1))
                    .difference(forbidden.neighbors(u))
                    .iter()
                    .map(move |v| Edge::new(u, v))
            });
            let g = Graph::new(n, None, edges).ok()?;
            let m = max_matching_general_with_limit(&g, crate::graph::MAX_VERTICES).ok()?;
            (m.len() * 2 == n).then_some(m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn domination_basics() {
        let layout = Layout::bipartite(2, 2);
        let mut h = StructureGraph::empty(&layout);
        assert!(h.dominates(&h.clone()));
        let mut learned = h.clone();
        learned.edges.insert(Edge::new(0, 2));
        assert!(!h.dominates(&learned));
        h.edges.insert(Edge::new(0, 2));
        assert!(h.dominates(&learned));
    }

    #[test]
    fn player_view_adds_bicliques_on_unmatched() {
        let layout = Layout::bipartite(2, 2);
        let rounds = [
            RoundRecord { query: set(&[0, 1, 2, 3]), response: Matching::from_edges([Edge::new(0, 2)]).unwrap() },
            RoundRecord { query: VertexSet::EMPTY, response: Matching::new() },
        ];
        let view = player_view(&layout, &rounds);
        assert_eq!(view.edges.iter().collect::<Vec<_>>(), vec![Edge::new(0, 2)]);
        assert_eq!(view.non_edges.iter().collect::<Vec<_>>(), vec![Edge::new(1, 3)]);
    }

    #[test]
    fn general_completion_uses_complement() {
        let mut f = EdgeSet::new();
        f.insert(Edge::new(0, 1));
        f.insert(Edge::new(2, 3));
        assert!(completion(4, None, &f).is_some());
        f.insert(Edge::new(0, 2));
        f.insert(Edge::new(0, 3));
        assert!(completion(4, None, &f).is_none());
        assert!(completion(3, None, &EdgeSet::new()).is_none());
    }
}
