use super::{completion, insert_independent, Commitment, Oracle, OracleError, StructureGraph};
use crate::graph::{greedy::greedy_over, Edge, EdgeSet, EdgeStream, Layout, Matching, VertexSet};

/// What to do with queries past the rules' round budget.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BudgetPolicy {
    /// Reject them with [`OracleError::UnsupportedRound`].
    #[default]
    Strict,
    /// Answer with a generic rule that commits as few edges as completability
    /// allows. Exploratory play only.
    Fallback,
}

/// Everything the oracle has committed to so far.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CommitState {
    /// The returned edges, in the order they were first returned.
    pub stream: EdgeStream,
    /// Committed edges `E`; a superset of the stream.
    pub edges: EdgeSet,
    /// `E` in commitment order.
    pub commit_order: Vec<Edge>,
    /// Committed non-edges `F`.
    pub non_edges: EdgeSet,
}

impl CommitState {
    fn commit_edge(&mut self, e: Edge) -> Result<(), String> {
        if self.non_edges.contains(e) {
            return Err(format!("edge {e} was already committed as a non-edge"));
        }
        if self.edges.insert(e) {
            self.commit_order.push(e);
        }
        Ok(())
    }

    fn commit_non_edge(&mut self, e: Edge) -> Result<(), String> {
        if self.edges.contains(e) {
            return Err(format!("non-edge {e} was already committed as an edge"));
        }
        self.non_edges.insert(e);
        Ok(())
    }
}

/// An adversary's answer on the part of a query not already covered by
/// committed edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Extension {
    /// Returned edges, all inside the residual query.
    pub matched: Vec<Edge>,
    /// Further edges committed without being returned.
    pub commit_edges: Vec<Edge>,
    pub commit_non_edges: Vec<Edge>,
}

/// The adversary-specific half of a streaming-consistent oracle.
///
/// `extend` only ever sees vertices of its own domain that the oracle could not
/// match with committed edges, so no committed edge lies inside the residual.
pub trait ExtensionRule {
    fn domain(&self) -> VertexSet;

    fn round_budget(&self) -> Option<usize> {
        None
    }

    /// Non-edges committed before the first query.
    fn initial_non_edges(&self) -> Vec<Edge> {
        Vec::new()
    }

    fn extend(&mut self, round: usize, residual: VertexSet, state: &CommitState) -> Result<Extension, String>;

    /// A perfect matching of the domain the rule expects to stay available.
    fn perfect_matching_hint(&self) -> Vec<Edge>;
}

/// Streaming-consistent oracle: re-matches with committed edges first and
/// lets the rules extend on what is left.
///
/// The stream holds exactly the returned edges in the order they were first
/// returned. Committed but unreturned edges and the completing perfect matching
/// are appended only when the final commitment is taken, so every answer stays
/// a greedy run over a prefix of the final stream.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StreamingOracle<R> {
    name: String,
    layout: Layout,
    rules: Vec<R>,
    state: CommitState,
    round: usize,
    policy: BudgetPolicy,
    checks: bool,
}

impl<R: ExtensionRule> StreamingOracle<R> {
    pub fn new(
        name: impl Into<String>,
        layout: Layout,
        rules: Vec<R>,
        extra_non_edges: &[Edge],
    ) -> Result<Self, OracleError> {
        let mut seen = VertexSet::EMPTY;
        for r in &rules {
            let d = r.domain();
            if !d.is_subset(layout.vertices()) {
                return Err(OracleError::Config("rule domain exceeds the vertex set".into()));
            }
            if !d.intersection(seen).is_empty() {
                return Err(OracleError::Config("rule domains overlap".into()));
            }
            seen = seen.union(d);
        }
        let mut state = CommitState::default();
        for e in rules.iter().flat_map(|r| r.initial_non_edges()).chain(extra_non_edges.iter().copied()) {
            state.non_edges.insert(e);
        }
        Ok(StreamingOracle {
            name: name.into(),
            layout,
            rules,
            state,
            round: 0,
            policy: BudgetPolicy::Strict,
            checks: true,
        })
    }

    pub fn with_policy(mut self, policy: BudgetPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Enables or disables the per-round completability check.
    pub fn with_checks(mut self, checks: bool) -> Self {
        self.checks = checks;
        self
    }

    pub fn rules(&self) -> &[R] {
        &self.rules
    }

    pub fn state(&self) -> &CommitState {
        &self.state
    }

    pub fn round(&self) -> usize {
        self.round
    }

    fn fault(&self, reason: impl Into<String>) -> OracleError {
        OracleError::Fault { round: self.round, reason: reason.into() }
    }

    fn hint(&self) -> Option<Matching> {
        let m = Matching::from_edges(self.rules.iter().flat_map(|r| r.perfect_matching_hint())).ok()?;
        let perfect = 2 * m.len() == self.layout.n;
        let avoids = m.iter().all(|e| !self.state.non_edges.contains(e));
        (perfect && avoids).then_some(m)
    }

    fn perfect_matching(&self) -> Option<Matching> {
        self.hint().or_else(|| completion(self.layout.n, self.layout.bipartition, &self.state.non_edges))
    }

    fn admissible(&self, u: usize, v: usize) -> bool {
        match self.layout.bipartition {
            Some(bp) => bp.side(u) != bp.side(v),
            None => true,
        }
    }

    /// Generic answer past the budget: declare a residual pair a non-edge
    /// whenever that keeps a perfect matching available, otherwise match it.
    fn fallback(&self, residual: VertexSet) -> Extension {
        let mut f = self.state.non_edges.clone();
        let mut free = residual;
        let mut ext = Extension::default();
        for u in residual {
            for v in residual.difference(VertexSet::full(u + 1)) {
                if !free.contains(u) {
                    break;
                }
                if !free.contains(v) || !self.admissible(u, v) {
                    continue;
                }
                let e = Edge::new(u, v);
                if f.contains(e) {
                    continue;
                }
                f.insert(e);
                if completion(self.layout.n, self.layout.bipartition, &f).is_some() {
                    ext.commit_non_edges.push(e);
                } else {
                    f.remove(e);
                    ext.matched.push(e);
                    free.remove(u);
                    free.remove(v);
                }
            }
        }
        ext
    }
}

impl<R: ExtensionRule> Oracle for StreamingOracle<R> {
    fn layout(&self) -> Layout {
        self.layout
    }

    fn respond(&mut self, query: VertexSet) -> Result<Matching, OracleError> {
        if let Some(v) = query.difference(self.layout.vertices()).first() {
            return Err(OracleError::QueryOutOfRange { vertex: v, n: self.layout.n });
        }
        self.round += 1;
        let beyond_budget = match self.round_budget() {
            Some(budget) if self.round > budget => match self.policy {
                BudgetPolicy::Strict => return Err(OracleError::UnsupportedRound { round: self.round, budget }),
                BudgetPolicy::Fallback => true,
            },
            _ => false,
        };

        // Re-match with returned edges, then with committed edges not yet returned.
        let replay = greedy_over(self.state.stream.edges().iter().copied(), query);
        let pending = self.state.commit_order.iter().copied().filter(|e| !self.state.stream.contains(*e));
        let revealed = greedy_over(pending, query.difference(replay.covered()));
        let residual = query.difference(replay.covered()).difference(revealed.covered());

        let mut new_edges: Vec<Edge> = revealed.edges().to_vec();
        for i in 0..self.rules.len() {
            let part = residual.intersection(self.rules[i].domain());
            let ext = if beyond_budget {
                self.fallback(part)
            } else {
                let round = self.round;
                self.rules[i].extend(round, part, &self.state).map_err(|reason| self.fault(reason))?
            };
            for &e in &ext.matched {
                if !e.endpoints().is_subset(part) {
                    return Err(self.fault(format!("extension edge {e} leaves the residual query")));
                }
            }
            for &e in ext.matched.iter().chain(&ext.commit_edges) {
                self.state.commit_edge(e).map_err(|r| self.fault(r))?;
            }
            for &e in &ext.commit_non_edges {
                self.state.commit_non_edge(e).map_err(|r| self.fault(r))?;
            }
            new_edges.extend(ext.matched);
        }

        let mut response = replay;
        for &e in &new_edges {
            if !response.try_add(e) {
                return Err(self.fault(format!("edge {e} shares an endpoint with the rest of the answer")));
            }
            self.state.stream.push(e).map_err(|err| self.fault(err.to_string()))?;
        }

        let unmatched = query.difference(response.covered());
        let mut independent = EdgeSet::new();
        insert_independent(self.layout.bipartition, unmatched, &mut independent);
        for e in independent.iter() {
            self.state
                .commit_non_edge(e)
                .map_err(|_| self.fault(format!("answer is not maximal: {e} is committed")))?;
        }

        if self.checks && self.perfect_matching().is_none() {
            return Err(self.fault("no perfect matching avoids the committed non-edges"));
        }
        Ok(response)
    }

    fn commitment(&self) -> Result<Commitment, OracleError> {
        let pm =
            self.perfect_matching().ok_or_else(|| self.fault("no perfect matching avoids the committed non-edges"))?;
        let mut stream = self.state.stream.clone();
        for &e in &self.state.commit_order {
            if !stream.contains(e) {
                stream.push(e)?;
            }
        }
        for e in pm.iter() {
            if !stream.contains(e) {
                stream.push(e)?;
            }
        }
        Ok(Commitment { final_stream: stream, non_edges: self.state.non_edges.clone(), perfect_matching: pm })
    }

    fn structure(&self) -> StructureGraph {
        StructureGraph {
            n: self.layout.n,
            bipartition: self.layout.bipartition,
            edges: self.state.edges.clone(),
            non_edges: self.state.non_edges.clone(),
        }
    }

    fn round_budget(&self) -> Option<usize> {
        self.rules.iter().filter_map(|r| r.round_budget()).min()
    }

    fn name(&self) -> String {
        self.name.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Matches residual A vertices to B vertices by index, commits nothing else.
    #[derive(Clone, Debug, PartialEq, Eq, Hash)]
    struct Diagonal {
        k: usize,
        budget: Option<usize>,
    }

    impl ExtensionRule for Diagonal {
        fn domain(&self) -> VertexSet {
            VertexSet::full(2 * self.k)
        }
        fn round_budget(&self) -> Option<usize> {
            self.budget
        }
        fn extend(&mut self, _round: usize, residual: VertexSet, _state: &CommitState) -> Result<Extension, String> {
            let matched = (0..self.k)
                .filter(|&i| residual.contains(i) && residual.contains(self.k + i))
                .map(|i| Edge::new(i, self.k + i))
                .collect();
            Ok(Extension { matched, ..Extension::default() })
        }
        fn perfect_matching_hint(&self) -> Vec<Edge> {
            (0..self.k).map(|i| Edge::new(i, self.k + i)).collect()
        }
    }

    fn oracle(budget: Option<usize>) -> StreamingOracle<Diagonal> {
        StreamingOracle::new("diagonal", Layout::bipartite(3, 3), vec![Diagonal { k: 3, budget }], &[]).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn first_answer_starts_the_stream() {
        let mut o = oracle(None);
        let m = o.respond(set(&[0, 3, 1])).unwrap();
        assert_eq!(m.edges(), &[Edge::new(0, 3)]);
        assert_eq!(o.state().stream.edges(), &[Edge::new(0, 3)]);
        // a2 is unmatched but there is no unmatched B vertex, so nothing is forbidden.
        assert!(o.state().non_edges.is_empty());
    }

    #[test]
    fn committed_edges_are_rematched_first() {
        let mut o = oracle(None);
        o.respond(set(&[0, 3])).unwrap();
        let m = o.respond(set(&[0, 3, 1, 5])).unwrap();
        assert_eq!(m.edges(), &[Edge::new(0, 3)]);
        assert_eq!(o.state().stream.len(), 1);
        assert!(o.state().non_edges.contains(Edge::new(1, 5)));
    }

    #[test]
    fn strict_budget_rejects_extra_rounds() {
        let mut o = oracle(Some(1));
        o.respond(VertexSet::EMPTY).unwrap();
        assert_eq!(o.respond(VertexSet::EMPTY).unwrap_err(), OracleError::UnsupportedRound { round: 2, budget: 1 });
    }

    #[test]
    fn fallback_keeps_completability() {
        let mut o = oracle(Some(0)).with_policy(BudgetPolicy::Fallback);
        let m = o.respond(VertexSet::full(6)).unwrap();
        assert!(o.structure().is_completable());
        // Each A vertex is forced onto the last B vertex still available to it.
        assert_eq!(m.edges(), &[Edge::new(0, 5), Edge::new(1, 4), Edge::new(2, 3)]);
        let again = o.respond(VertexSet::full(6)).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn commitment_appends_unreturned_edges() {
        let mut o = oracle(None);
        o.respond(set(&[1, 4])).unwrap();
        let c = o.commitment().unwrap();
        assert_eq!(c.final_stream.edges()[0], Edge::new(1, 4));
        assert_eq!(c.final_stream.len(), 3);
        assert_eq!(c.perfect_matching.len(), 3);
    }

    #[test]
    fn out_of_range_query() {
        let mut o = oracle(None);
        assert_eq!(o.respond(set(&[9])).unwrap_err(), OracleError::QueryOutOfRange { vertex: 9, n: 6 });
    }
}
