use serde::{Deserialize, Serialize};

use crate::adversaries::OracleKind;
use crate::graph::{EdgeSet, Layout, VertexSet};

/// How the solver shrinks the set of candidate queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Canonicalization {
    /// Every reduced query; siblings that leave the oracle in the same state
    /// are searched once.
    Full,
    /// As `Full`, except that round 1 tries one query per pair
    /// `(|A_q|, |B_q|)`, made of the lowest vertices of each side.
    Round1BySize,
    /// As `Full`, but siblings are merged whenever their response histories
    /// agree. Sound for oracles whose future answers depend only on what
    /// they have returned.
    ResponseClasses,
}

impl Canonicalization {
    /// Best reduction known to be safe for `kind`.
    pub fn for_kind(kind: &OracleKind) -> Self {
        match kind {
            OracleKind::TwoRound { .. } | OracleKind::ThreeRound { gadgets: 1 } => Canonicalization::Round1BySize,
            OracleKind::Bomb { .. } => Canonicalization::ResponseClasses,
            _ => Canonicalization::Full,
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Canonicalization::Full => "full enumeration of reduced queries, identical sibling states merged",
            Canonicalization::Round1BySize => "round 1: one query per (|A_q|, |B_q|); later rounds: full enumeration",
            Canonicalization::ResponseClasses => "full enumeration, siblings merged by response history",
        }
    }
}

/// Round-1 representatives: the lowest `i` A-vertices with the lowest `j`
/// B-vertices, for every `(i, j)`.
pub fn round1_by_size(layout: &Layout) -> Option<Vec<VertexSet>> {
    let bp = layout.bipartition?;
    let mut out = Vec::with_capacity((bp.a + 1) * (bp.b + 1));
    for i in 0..=bp.a {
        for j in 0..=bp.b {
            out.push(bp.a_side().lowest(i).union(bp.b_side().lowest(j)));
        }
    }
    Some(out)
}

/// Every subset of `0..n` that contains no edge of `known`, in increasing
/// bitmask order.
pub fn reduced_queries(n: usize, known: &EdgeSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    fn rec(v: usize, n: usize, known: &EdgeSet, cur: VertexSet, out: &mut Vec<VertexSet>) {
        if v == n {
            out.push(cur);
            return;
        }
        rec(v + 1, n, known, cur, out);
        if known.neighbors(v).intersection(cur).is_empty() {
            let mut next = cur;
            next.insert(v);
            rec(v + 1, n, known, next, out);
        }
    }
    rec(0, n, known, VertexSet::EMPTY, &mut out);
    out.sort_unstable_by_key(|q| q.bits());
    out
}

/// All `2^n` subsets of `0..n`.
pub fn all_queries(n: usize) -> Vec<VertexSet> {
    (0..1u64 << n).map(VertexSet::from_bits).collect()
}
