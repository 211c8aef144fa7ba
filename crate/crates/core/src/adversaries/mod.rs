//! The four adversarial oracles and gadget composition.

mod bomb;
mod semi_complete;
mod three_round;
mod two_round;

use std::fmt;

use crate::graph::{Edge, EdgeSet, Layout, VertexSet, MAX_VERTICES};
use crate::oracle::{CommitState, Extension, ExtensionRule, OracleError, StreamingOracle};

pub use bomb::BombRule;
pub use semi_complete::{semi_complete_formula, SemiCompleteRule};
pub use three_round::ThreeRoundRule;
pub use two_round::TwoRoundRule;

/// Canonical-to-actual vertex map of one gadget.
///
/// Case tables work on canonical indices `0..len`; relabeling replaces the map
/// by its composition with an automorphism of the committed structure.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Labels {
    map: [u8; MAX_VERTICES],
    len: u8,
}

impl fmt::Debug for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.map[..self.len as usize].iter()).finish()
    }
}

impl Labels {
    pub fn new(actual: &[usize]) -> Self {
        let mut map = [0u8; MAX_VERTICES];
        for (c, &v) in actual.iter().enumerate() {
            map[c] = v as u8;
        }
        Labels { map, len: actual.len() as u8 }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn actual(&self, c: usize) -> usize {
        self.map[c] as usize
    }

    pub fn edge(&self, cu: usize, cv: usize) -> Edge {
        Edge::new(self.actual(cu), self.actual(cv))
    }

    pub fn domain(&self) -> VertexSet {
        (0..self.len()).map(|c| self.actual(c)).collect()
    }

    /// Canonical indices of the members of `set` inside the domain.
    pub fn canonical_of(&self, set: VertexSet) -> VertexSet {
        (0..self.len()).filter(|&c| set.contains(self.actual(c))).collect()
    }

    pub fn actual_of(&self, canonical: VertexSet) -> VertexSet {
        canonical.iter().map(|c| self.actual(c)).collect()
    }

    /// Edges of `edges` inside the domain, in canonical indices.
    pub fn canonical_edges(&self, edges: &EdgeSet) -> EdgeSet {
        let mut inverse = [u8::MAX; MAX_VERTICES];
        for c in 0..self.len() {
            inverse[self.actual(c)] = c as u8;
        }
        let domain = self.domain();
        let mut out = EdgeSet::new();
        for c in 0..self.len() {
            for w in edges.neighbors(self.actual(c)).intersection(domain) {
                out.insert(Edge::new(c, inverse[w] as usize));
            }
        }
        out
    }

    /// The map after moving the vertex at canonical index `c` to `pi(c)`.
    pub fn permuted(&self, pi: impl Fn(usize) -> usize) -> Labels {
        let mut map = self.map;
        for c in 0..self.len() {
            map[pi(c)] = self.map[c];
        }
        Labels { map, len: self.len }
    }

    /// Relabels by `pi` after checking that it maps the committed structure
    /// inside the gadget onto itself.
    pub(crate) fn relabel(&mut self, pi: impl Fn(usize) -> usize, state: &CommitState) -> Result<(), String> {
        let next = self.permuted(pi);
        let same_edges = self.canonical_edges(&state.edges) == next.canonical_edges(&state.edges);
        let same_non_edges = self.canonical_edges(&state.non_edges) == next.canonical_edges(&state.non_edges);
        if !(same_edges && same_non_edges) {
            return Err("relabeling does not preserve the committed structure".into());
        }
        *self = next;
        Ok(())
    }
}

/// Round-1 partition shared by the two- and three-round oracles: `k` of the
/// `side` vertices become "in", queried ones first.
///
/// With at most `k` queried vertices all of them go in; otherwise every
/// unqueried vertex goes out. Returns the side in canonical order: in-vertices
/// (queried first), then out-vertices.
pub(crate) fn split_in_out(side: &[usize], queried: VertexSet, k: usize) -> Vec<usize> {
    let q: Vec<usize> = side.iter().copied().filter(|&v| queried.contains(v)).collect();
    let rest: Vec<usize> = side.iter().copied().filter(|&v| !queried.contains(v)).collect();
    let mut order = Vec::with_capacity(side.len());
    if q.len() <= k {
        order.extend(&q);
        order.extend(&rest);
    } else {
        order.extend(&q[..k]);
        let mut out: Vec<usize> = q[k..].iter().chain(&rest).copied().collect();
        out.sort_unstable();
        order.extend(out);
    }
    order
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AdversaryRule {
    TwoRound(TwoRoundRule),
    ThreeRound(ThreeRoundRule),
    SemiComplete(SemiCompleteRule),
    Bomb(BombRule),
}

impl ExtensionRule for AdversaryRule {
    fn domain(&self) -> VertexSet {
        match self {
            AdversaryRule::TwoRound(r) => r.domain(),
            AdversaryRule::ThreeRound(r) => r.domain(),
            AdversaryRule::SemiComplete(r) => r.domain(),
            AdversaryRule::Bomb(r) => r.domain(),
        }
    }

    fn round_budget(&self) -> Option<usize> {
        match self {
            AdversaryRule::TwoRound(r) => r.round_budget(),
            AdversaryRule::ThreeRound(r) => r.round_budget(),
            AdversaryRule::SemiComplete(r) => r.round_budget(),
            AdversaryRule::Bomb(r) => r.round_budget(),
        }
    }

    fn initial_non_edges(&self) -> Vec<Edge> {
        match self {
            AdversaryRule::TwoRound(r) => r.initial_non_edges(),
            AdversaryRule::ThreeRound(r) => r.initial_non_edges(),
            AdversaryRule::SemiComplete(r) => r.initial_non_edges(),
            AdversaryRule::Bomb(r) => r.initial_non_edges(),
        }
    }

    fn extend(&mut self, round: usize, residual: VertexSet, state: &CommitState) -> Result<Extension, String> {
        match self {
            AdversaryRule::TwoRound(r) => r.extend(round, residual, state),
            AdversaryRule::ThreeRound(r) => r.extend(round, residual, state),
            AdversaryRule::SemiComplete(r) => r.extend(round, residual, state),
            AdversaryRule::Bomb(r) => r.extend(round, residual, state),
        }
    }

    fn perfect_matching_hint(&self) -> Vec<Edge> {
        match self {
            AdversaryRule::TwoRound(r) => r.perfect_matching_hint(),
            AdversaryRule::ThreeRound(r) => r.perfect_matching_hint(),
            AdversaryRule::SemiComplete(r) => r.perfect_matching_hint(),
            AdversaryRule::Bomb(r) => r.perfect_matching_hint(),
        }
    }
}

pub type AdversaryOracle = StreamingOracle<AdversaryRule>;

/// Splits a bipartite vertex set into `n / gadget_size` gadgets, one rule
/// each, and forbids every pair between different gadgets.
///
/// Gadget `g` owns A-vertices `g*s/2 .. (g+1)*s/2` and the B-vertices at the
/// same offsets, where `s = gadget_size`.
pub fn compose_gadgets<R, F>(
    name: &str,
    n: usize,
    gadget_size: usize,
    mut make: F,
) -> Result<StreamingOracle<R>, OracleError>
where
    R: ExtensionRule,
    F: FnMut(&[usize], &[usize]) -> R,
{
    if gadget_size == 0 || gadget_size % 2 == 1 || !n.is_multiple_of(gadget_size) || n == 0 {
        return Err(OracleError::Config(format!("{n} vertices do not split into gadgets of {gadget_size}")));
    }
    if n > MAX_VERTICES {
        return Err(OracleError::Config(format!("{n} vertices exceed the capacity of {MAX_VERTICES}")));
    }
    let half = n / 2;
    let s = gadget_size / 2;
    let count = n / gadget_size;
    let layout = Layout::bipartite(half, half);
    let mut rules = Vec::with_capacity(count);
    let mut cross = Vec::new();
    for g in 0..count {
        let a: Vec<usize> = (g * s..(g + 1) * s).collect();
        let b: Vec<usize> = (half + g * s..half + (g + 1) * s).collect();
        rules.push(make(&a, &b));
        for h in 0..count {
            if h != g {
                for &u in &a {
                    for v in half + h * s..half + (h + 1) * s {
                        cross.push(Edge::new(u, v));
                    }
                }
            }
        }
    }
    StreamingOracle::new(name, layout, rules, &cross)
}

/// Which adversary to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleKind {
    TwoRound { n: usize },
    ThreeRound { gadgets: usize },
    SemiComplete { c: usize, gadgets: usize },
    Bomb { n: usize },
}

impl OracleKind {
    pub fn n(&self) -> usize {
        match *self {
            OracleKind::TwoRound { n } | OracleKind::Bomb { n } => n,
            OracleKind::ThreeRound { gadgets } => 10 * gadgets,
            OracleKind::SemiComplete { c, gadgets } => 2 * c * gadgets,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            OracleKind::TwoRound { .. } => "two-round",
            OracleKind::ThreeRound { .. } => "three-round",
            OracleKind::SemiComplete { .. } => "semi-complete",
            OracleKind::Bomb { .. } => "bomb",
        }
    }

    pub fn build(&self) -> Result<AdversaryOracle, OracleError> {
        match *self {
            OracleKind::TwoRound { n } => two_round_oracle(n),
            OracleKind::ThreeRound { gadgets } => three_round_oracle(gadgets),
            OracleKind::SemiComplete { c, gadgets } => semi_complete_oracle(c, gadgets),
            OracleKind::Bomb { n } => bomb_oracle(n),
        }
    }
}

pub fn two_round_oracle(n: usize) -> Result<AdversaryOracle, OracleError> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(OracleError::Config(format!("the two-round oracle needs n divisible by 4, got {n}")));
    }
    compose_gadgets("two-round", n, n, |a, b| AdversaryRule::TwoRound(TwoRoundRule::new(a, b)))
}

pub fn three_round_oracle(gadgets: usize) -> Result<AdversaryOracle, OracleError> {
    compose_gadgets("three-round", 10 * gadgets, 10, |a, b| AdversaryRule::ThreeRound(ThreeRoundRule::new(a, b)))
}

pub fn semi_complete_oracle(c: usize, gadgets: usize) -> Result<AdversaryOracle, OracleError> {
    compose_gadgets("semi-complete", 2 * c * gadgets, 2 * c, |a, b| {
        AdversaryRule::SemiComplete(SemiCompleteRule::new(a, b))
    })
}

pub fn bomb_oracle(n: usize) -> Result<AdversaryOracle, OracleError> {
    if n == 0 || !n.is_multiple_of(2) || n > MAX_VERTICES {
        return Err(OracleError::Config(format!("the bomb oracle needs an even n up to {MAX_VERTICES}, got {n}")));
    }
    StreamingOracle::new("bomb", Layout::bomb(n), vec![AdversaryRule::Bomb(BombRule::new(n))], &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;

    #[test]
    fn split_keeps_small_queries_inside() {
        let side = [0, 1, 2, 3, 4];
        let q: VertexSet = [1, 4].into_iter().collect();
        assert_eq!(split_in_out(&side, q, 3), vec![1, 4, 0, 2, 3]);
        let big: VertexSet = [0, 1, 3, 4].into_iter().collect();
        assert_eq!(split_in_out(&side, big, 3), vec![0, 1, 3, 2, 4]);
    }

    #[test]
    fn labels_permute_and_map_back() {
        let l = Labels::new(&[10, 11, 12]);
        let p = l.permuted(|c| (c + 1) % 3);
        assert_eq!(p.actual(1), 10);
        assert_eq!(p.canonical_of([10, 12].into_iter().collect()), [0, 1].into_iter().collect());
    }

    #[test]
    fn composition_rejects_bad_sizes() {
        assert!(matches!(compose_gadgets("x", 12, 5, SemiCompleteRule::new), Err(OracleError::Config(_))));
        assert!(two_round_oracle(10).is_err());
        assert!(bomb_oracle(7).is_err());
    }

    #[test]
    fn composed_gadgets_answer_independently() {
        let mut o = three_round_oracle(2).unwrap();
        let m = o.respond(o.layout().vertices()).unwrap();
        assert_eq!(m.len(), 6);
        let mut s = semi_complete_oracle(2, 2).unwrap();
        // Each gadget: A' = [2], B' = [2] gives (a1,b2), (a2,b1) ∩ E = {(a1,b2)}.
        let m = s.respond(s.layout().vertices()).unwrap();
        assert_eq!(m.edges(), &[Edge::new(0, 5), Edge::new(2, 7)]);
    }
}
