use super::{split_in_out, Labels};
use crate::graph::{Edge, EdgeSet, VertexSet};
use crate::oracle::{CommitState, Extension, ExtensionRule};

// Canonical indices: a1..a5 are 0..5 and b1..b5 are 5..10.
const fn a(i: usize) -> usize {
    i - 1
}
const fn b(i: usize) -> usize {
    4 + i
}
fn ab(i: usize, j: usize) -> Edge {
    Edge::new(a(i), b(j))
}

const A_IN: [usize; 3] = [0, 1, 2];
const B_OUT: [usize; 2] = [8, 9];

/// Three-round adversary on one gadget with `|A| = |B| = 5`.
///
/// In- and out-vertices split 3/2 per side. After round 1 the committed
/// structure is `H_1` (`M = {a_i b_i : i ≤ 3}`, `F = A_out × B_out`), after
/// round 2 it is `H_2` (adding `E_2 = {a1b5, a2b3}` and
/// `F_2 = {a2b4, a3b4}`), and round 3 picks one of the `H_3` variants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeRoundRule {
    natural: Labels,
    labels: Labels,
}

impl ThreeRoundRule {
    pub fn new(a_side: &[usize], b_side: &[usize]) -> Self {
        assert!(a_side.len() == 5 && b_side.len() == 5, "a three-round gadget has 5 + 5 vertices");
        let all: Vec<usize> = a_side.iter().chain(b_side).copied().collect();
        let natural = Labels::new(&all);
        ThreeRoundRule { natural, labels: natural }
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    /// Committed edges and non-edges inside the gadget, in canonical indices.
    pub fn canonical_view(&self, state: &CommitState) -> (EdgeSet, EdgeSet) {
        (self.labels.canonical_edges(&state.edges), self.labels.canonical_edges(&state.non_edges))
    }

    /// `H_1` in canonical indices.
    pub fn h1() -> (EdgeSet, EdgeSet) {
        let m = (1..=3).map(|i| ab(i, i)).collect();
        let f = [(4, 4), (4, 5), (5, 4), (5, 5)].into_iter().map(|(i, j)| ab(i, j)).collect();
        (m, f)
    }

    /// `H_2` in canonical indices.
    pub fn h2() -> (EdgeSet, EdgeSet) {
        let (mut e, mut f) = Self::h1();
        e.insert(ab(1, 5));
        e.insert(ab(2, 3));
        f.insert(ab(2, 4));
        f.insert(ab(3, 4));
        (e, f)
    }

    /// The three round-3 structure graphs, `case` in `1..=3`.
    pub fn h3(case: usize) -> (EdgeSet, EdgeSet) {
        let (mut e, mut f) = Self::h2();
        match case {
            1 => {
                e.insert(ab(4, 2));
                e.insert(ab(5, 3));
            }
            2 => {
                e.insert(ab(1, 2));
                f.insert(ab(4, 3));
                f.insert(ab(5, 3));
            }
            3 => {
                e.insert(ab(3, 2));
                f.insert(ab(4, 1));
                f.insert(ab(5, 1));
            }
            _ => panic!("H_3 has cases 1 to 3"),
        }
        (e, f)
    }

    fn to_actual(&self, edges: &[Edge]) -> Vec<Edge> {
        edges.iter().map(|e| self.labels.edge(e.u(), e.v())).collect()
    }

    fn first_round(&mut self, residual: VertexSet) -> Extension {
        let a_side: Vec<usize> = (0..5).map(|c| self.natural.actual(c)).collect();
        let b_side: Vec<usize> = (5..10).map(|c| self.natural.actual(c)).collect();
        let mut order = split_in_out(&a_side, residual, 3);
        order.extend(split_in_out(&b_side, residual, 3));
        self.labels = Labels::new(&order);

        let (m, f) = Self::h1();
        let m: Vec<Edge> = m.iter().collect();
        let f: Vec<Edge> = f.iter().collect();
        let commit_edges = self.to_actual(&m);
        Extension {
            matched: commit_edges.iter().copied().filter(|e| e.endpoints().is_subset(residual)).collect(),
            commit_edges,
            commit_non_edges: self.to_actual(&f),
        }
    }

    /// Queried in-indices (0..3) on each side.
    fn in_indices(rc: VertexSet) -> (Vec<usize>, Vec<usize>) {
        let qa = A_IN.iter().copied().filter(|&i| rc.contains(i)).collect();
        let qb = A_IN.iter().copied().filter(|&i| rc.contains(5 + i)).collect();
        (qa, qb)
    }

    fn second_round(&mut self, residual: VertexSet, state: &CommitState) -> Result<Extension, String> {
        let mut rc = self.labels.canonical_of(residual);
        let (mut qa, mut qb) = Self::in_indices(rc);
        if qa.len() + qb.len() > 3 {
            return Err("second-round residual holds more than three in-vertices".into());
        }
        if qb.len() > qa.len() {
            // H_1 is symmetric under a_i <-> b_i.
            self.labels.relabel(|c| (c + 5) % 10, state)?;
            rc = self.labels.canonical_of(residual);
            (qa, qb) = Self::in_indices(rc);
        }

        // Move the queried in-vertices onto the labels the case table uses:
        // one A and one B vertex become a2, b3; two A and one B become a1, a2, b3;
        // A vertices alone fill a1, a2, a3 in order.
        let mut sigma = [usize::MAX; 3];
        let mut next = 0;
        match (qa.len(), qb.len()) {
            (1, 1) => {
                sigma[qa[0]] = 1;
                sigma[qb[0]] = 2;
            }
            (2, 1) => {
                sigma[qa[0]] = 0;
                sigma[qa[1]] = 1;
                sigma[qb[0]] = 2;
            }
            _ => {
                for &i in &qa {
                    sigma[i] = next;
                    next += 1;
                }
            }
        }
        let taken: Vec<usize> = sigma.iter().copied().filter(|&t| t != usize::MAX).collect();
        let mut spare = (0..3).filter(|t| !taken.contains(t));
        for s in sigma.iter_mut().filter(|s| **s == usize::MAX) {
            *s = spare.next().expect("sigma is a permutation");
        }
        let swap_out = rc.contains(b(4)) && !rc.contains(b(5));
        self.labels.relabel(
            |c| match c {
                0..=2 => sigma[c],
                5..=7 => 5 + sigma[c - 5],
                8 if swap_out => 9,
                9 if swap_out => 8,
                _ => c,
            },
            state,
        )?;
        let rc = self.labels.canonical_of(residual);

        let e2 = [ab(1, 5), ab(2, 3)];
        let f2 = [ab(2, 4), ab(3, 4)];
        let matched: Vec<Edge> = e2.iter().copied().filter(|e| e.endpoints().is_subset(rc)).collect();
        Ok(Extension {
            matched: self.to_actual(&matched),
            commit_edges: self.to_actual(&e2),
            commit_non_edges: self.to_actual(&f2),
        })
    }

    fn third_round(&self, residual: VertexSet, state: &CommitState) -> Result<Extension, String> {
        let rc = self.labels.canonical_of(residual);
        let (qa, qb) = Self::in_indices(rc);
        if qa.len() + qb.len() > 3 {
            return Err("third-round residual holds more than three in-vertices".into());
        }
        let inside =
            |edges: &[Edge]| -> Vec<Edge> { edges.iter().copied().filter(|e| e.endpoints().is_subset(rc)).collect() };
        let canonical = if qb.len() > qa.len() {
            let case1 = [ab(4, 2), ab(5, 3)];
            match (qa.as_slice(), qb.as_slice()) {
                (_, [0, 1, 2]) => (inside(&case1), case1.to_vec(), vec![]),
                ([0], [1, 2]) => (vec![ab(1, 2)], vec![], vec![ab(4, 3), ab(5, 3)]),
                ([2], [0, 1]) => (vec![ab(3, 2)], vec![], vec![ab(4, 1), ab(5, 1)]),
                ([], [0]) => (vec![], vec![], vec![ab(4, 1), ab(5, 1)]),
                ([], _) => (inside(&case1), case1.to_vec(), vec![]),
                _ => return Err(format!("no third-round case for in-vertices {qa:?} / {qb:?}")),
            }
        } else {
            // Pair the queried B_in vertices into A_in, then A_in into B_out;
            // A_out never gets an edge.
            let allowed = |u: usize, v: usize| !state.non_edges.contains(self.labels.edge(u, v));
            let mut free_a: Vec<usize> = qa.iter().map(|&i| a(i + 1)).collect();
            let mut matched = Vec::new();
            let b_targets = qb.iter().map(|&j| b(j + 1)).chain(B_OUT.iter().copied().filter(|&v| rc.contains(v)));
            for v in b_targets {
                if let Some(p) = free_a.iter().position(|&u| allowed(u, v)) {
                    matched.push(Edge::new(free_a.remove(p), v));
                }
            }
            (matched, vec![], vec![])
        };
        let (matched, commit_edges, commit_non_edges) = canonical;
        Ok(Extension {
            matched: self.to_actual(&matched),
            commit_edges: self.to_actual(&commit_edges),
            commit_non_edges: self.to_actual(&commit_non_edges),
        })
    }
}

impl ExtensionRule for ThreeRoundRule {
    fn domain(&self) -> VertexSet {
        self.natural.domain()
    }

    fn round_budget(&self) -> Option<usize> {
        Some(3)
    }

    fn extend(&mut self, round: usize, residual: VertexSet, state: &CommitState) -> Result<Extension, String> {
        match round {
            1 => Ok(self.first_round(residual)),
            2 => self.second_round(residual, state),
            3 => self.third_round(residual, state),
            _ => Err(format!("the three-round rule has no round {round}")),
        }
    }

    fn perfect_matching_hint(&self) -> Vec<Edge> {
        self.to_actual(&[ab(1, 4), ab(2, 3), ab(3, 5), ab(4, 1), ab(5, 2)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::{three_round_oracle, AdversaryOracle, AdversaryRule};
    use crate::oracle::Oracle;

    fn rule(o: &AdversaryOracle) -> &ThreeRoundRule {
        match &o.rules()[0] {
            AdversaryRule::ThreeRound(r) => r,
            _ => unreachable!(),
        }
    }

    fn canonical(o: &AdversaryOracle, vs: &[usize]) -> VertexSet {
        rule(o).labels().actual_of(vs.iter().copied().collect())
    }

    fn after_first_round() -> AdversaryOracle {
        let mut o = three_round_oracle(1).unwrap();
        o.respond(VertexSet::full(10)).unwrap();
        o
    }

    #[test]
    fn first_round_builds_h1() {
        let o = after_first_round();
        assert_eq!(rule(&o).canonical_view(o.state()), ThreeRoundRule::h1());
    }

    #[test]
    fn second_round_case_four() {
        let mut o = after_first_round();
        let q = canonical(&o, &[a(1), a(2), b(3), b(5)]);
        let m = o.respond(q).unwrap();
        let l = *rule(&o).labels();
        let mut expected: Vec<Edge> = vec![l.edge(a(1), b(5)), l.edge(a(2), b(3))];
        expected.sort();
        assert_eq!(m.edges(), expected.as_slice());
        assert_eq!(rule(&o).canonical_view(o.state()), ThreeRoundRule::h2());
    }

    #[test]
    fn third_round_cases() {
        let mut o = after_first_round();
        o.respond(VertexSet::EMPTY).unwrap();
        assert_eq!(rule(&o).canonical_view(o.state()), ThreeRoundRule::h2());

        let mut case1 = o.clone();
        let q = canonical(&case1, &[b(1), b(2), b(3), a(4), a(5)]);
        let m = case1.respond(q).unwrap();
        let l = *rule(&case1).labels();
        assert_eq!(m.edge_set(), [l.edge(a(4), b(2)), l.edge(a(5), b(3))].into_iter().collect());
        assert_eq!(rule(&case1).canonical_view(case1.state()).0, ThreeRoundRule::h3(1).0);

        let mut case2 = o.clone();
        let q = canonical(&case2, &[a(1), b(2), b(3)]);
        let m = case2.respond(q).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(rule(&case2).canonical_view(case2.state()).0, ThreeRoundRule::h3(2).0);
    }
}
