use std::fmt;

use super::insert_independent;
use crate::game::Transcript;
use crate::graph::{greedy::greedy_over, is_maximal, Edge, EdgeSet, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// `round` is 1-based; `None` for problems with the final commitment.
    Fail {
        round: Option<usize>,
        reason: String,
    },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail { round: Some(r), reason } => write!(f, "fail at round {r}: {reason}"),
            Verdict::Fail { round: None, reason } => write!(f, "fail: {reason}"),
        }
    }
}

fn fail(round: Option<usize>, reason: String) -> Verdict {
    Verdict::Fail { round, reason }
}

/// Replays every round against the transcript's final stream.
///
/// Errors only on a structurally malformed transcript; inconsistencies are
/// reported through the verdict.
pub fn verify_streaming_consistency(t: &Transcript) -> Result<Verdict, String> {
    let layout = &t.layout;
    check_format(t)?;

    if let Some(e) = t.final_stream.edge_set().first_common(&t.non_edges) {
        return Ok(fail(None, format!("stream contains committed non-edge {}", layout.format_edge(e))));
    }
    let pm = &t.perfect_matching;
    if 2 * pm.len() != layout.n {
        return Ok(fail(None, format!("declared perfect matching has {} edges, expected {}", pm.len(), layout.n / 2)));
    }
    for e in pm.iter() {
        if !t.final_stream.contains(e) {
            return Ok(fail(None, format!("perfect matching edge {} is not in the stream", layout.format_edge(e))));
        }
    }

    let graph =
        Graph::new(layout.n, layout.bipartition, t.final_stream.edges().iter().copied()).map_err(|e| e.to_string())?;
    for (i, r) in t.rounds.iter().enumerate() {
        let round = Some(i + 1);
        if let Some(e) = r.response.iter().find(|e| !e.endpoints().is_subset(r.query)) {
            return Ok(fail(round, format!("response edge {} leaves the query", layout.format_edge(e))));
        }
        let replay = greedy_over(t.final_stream.edges().iter().copied(), r.query);
        if replay != r.response {
            return Ok(fail(
                round,
                format!(
                    "greedy replay gives {} but the response was {}",
                    layout.format_matching(&replay),
                    layout.format_matching(&r.response)
                ),
            ));
        }
        if !is_maximal(&r.response, &graph, r.query) {
            return Ok(fail(round, "response is not maximal in the final graph".into()));
        }
        let mut implied = EdgeSet::new();
        insert_independent(layout.bipartition, r.query.difference(r.response.covered()), &mut implied);
        let missing = implied.iter().find(|&e| !t.non_edges.contains(e));
        if let Some(e) = missing {
            return Ok(fail(round, format!("unmatched pair {} is not a committed non-edge", layout.format_edge(e))));
        }
    }
    Ok(Verdict::Pass)
}

fn check_format(t: &Transcript) -> Result<(), String> {
    let layout = &t.layout;
    let check_edge = |what: &str, e: Edge| -> Result<(), String> {
        if e.v() >= layout.n {
            return Err(format!("{what} edge {e} has an endpoint outside 0..{}", layout.n));
        }
        if let Some(bp) = layout.bipartition {
            if !bp.crosses(e) {
                return Err(format!("{what} edge {} joins one side", layout.format_edge(e)));
            }
        }
        Ok(())
    };
    for &e in t.final_stream.edges() {
        check_edge("stream", e)?;
    }
    for e in t.non_edges.iter() {
        check_edge("non-edge", e)?;
    }
    for e in t.perfect_matching.iter() {
        check_edge("perfect matching", e)?;
    }
    for (i, r) in t.rounds.iter().enumerate() {
        if !r.query.is_subset(layout.vertices()) {
            return Err(format!("round {} query names vertices outside 0..{}", i + 1, layout.n));
        }
        for e in r.response.iter() {
            check_edge("response", e)?;
        }
    }
    Ok(())
}
