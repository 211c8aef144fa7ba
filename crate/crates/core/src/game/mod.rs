//! The rounds-based game between a player and an oracle.

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{
    greedy::greedy_over, max_matching_bipartite, max_matching_general, Edge, EdgeSet, EdgeStream, Graph, GraphError,
    Layout, Matching, VertexSet,
};
use crate::oracle::{Oracle, OracleError};
use crate::players::{Player, PlayerError, RoundContext};

/// One query and the oracle's answer to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RoundRecord {
    pub query: VertexSet,
    pub response: Matching,
}

/// A finished (or aborted) game together with the oracle's final graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub layout: Layout,
    pub rounds: Vec<RoundRecord>,
    pub final_stream: EdgeStream,
    pub non_edges: EdgeSet,
    pub perfect_matching: Matching,
}

impl Transcript {
    /// Edges of the final graph, which are exactly the edges of the stream.
    pub fn committed_edges(&self) -> &EdgeSet {
        self.final_stream.edge_set()
    }

    /// Union of all responses.
    pub fn learned_edges(&self) -> EdgeSet {
        self.rounds.iter().flat_map(|r| r.response.iter()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameResult {
    pub player_matching: Matching,
    pub opt: usize,
    pub ratio: Ratio<usize>,
}

/// Prints a ratio as `p/q`, including `0/1` and `1/1`.
pub fn format_ratio(r: &Ratio<usize>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameOptions {
    /// Strip already-learned edges from queries before the oracle sees them.
    pub normalize: bool,
}

impl Default for GameOptions {
    fn default() -> Self {
        GameOptions { normalize: true }
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("protocol error in round {round}: {reason}")]
    Protocol { round: usize, reason: String },
    #[error("oracle error in round {round}: {source}")]
    Oracle { round: usize, source: OracleError },
    #[error("player error in round {round}: {source}")]
    Player { round: usize, source: PlayerError },
    #[error("aborted at round {round}")]
    Aborted { round: usize, transcript: Box<Transcript> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Greedily pre-matches known edges inside `query`, in the order they were
/// learned, and returns the remaining vertices with the pre-matched edges.
pub fn normalize_query(query: VertexSet, known: &[Edge]) -> (VertexSet, Matching) {
    let pre = greedy_over(known.iter().copied(), query);
    (query.difference(pre.covered()), pre)
}

/// Maximum matching inside the union of the responses.
pub fn score(transcript: &Transcript) -> Result<GameResult, GraphError> {
    score_edges(&transcript.layout, &transcript.learned_edges())
}

pub(crate) fn score_edges(layout: &Layout, learned: &EdgeSet) -> Result<GameResult, GraphError> {
    let g = Graph::new(layout.n, layout.bipartition, learned.iter())?;
    let m = if layout.is_bipartite() { max_matching_bipartite(&g)? } else { max_matching_general(&g)? };
    let opt = layout.n / 2;
    let ratio = if opt == 0 { Ratio::from_integer(1) } else { Ratio::new(m.len(), opt) };
    Ok(GameResult { player_matching: m, opt, ratio })
}

pub fn run_game<P, O>(
    player: &mut P,
    oracle: &mut O,
    rounds: usize,
    options: GameOptions,
) -> Result<(Transcript, GameResult), GameError>
where
    P: Player + ?Sized,
    O: Oracle + ?Sized,
{
    run_game_observed(player, oracle, rounds, options, |_, _| {})
}

/// Like [`run_game`], calling `observer` with the oracle and the history after
/// every round.
pub fn run_game_observed<P, O, F>(
    player: &mut P,
    oracle: &mut O,
    rounds: usize,
    options: GameOptions,
    mut observer: F,
) -> Result<(Transcript, GameResult), GameError>
where
    P: Player + ?Sized,
    O: Oracle + ?Sized,
    F: FnMut(&O, &[RoundRecord]),
{
    let layout = oracle.layout();
    let normalize = options.normalize && oracle.accepts_reduced_queries();
    let mut history: Vec<RoundRecord> = Vec::with_capacity(rounds);
    let mut known: Vec<Edge> = Vec::new();
    let mut known_set = EdgeSet::new();

    for round in 1..=rounds {
        let ctx = RoundContext { layout, round, total_rounds: rounds, history: &history };
        let query = match player.next_query(&ctx) {
            Ok(q) => q,
            Err(PlayerError::Aborted) => {
                let transcript = partial_transcript(oracle, layout, history);
                return Err(GameError::Aborted { round, transcript: Box::new(transcript) });
            }
            Err(source) => return Err(GameError::Player { round, source }),
        };
        if let Some(v) = query.difference(layout.vertices()).first() {
            return Err(GameError::Protocol {
                round,
                reason: format!("query names vertex {v} outside 0..{}", layout.n),
            });
        }

        let (asked, pre) = if normalize { normalize_query(query, &known) } else { (query, Matching::new()) };
        let answer = oracle.respond(asked).map_err(|source| GameError::Oracle { round, source })?;
        let mut response = pre;
        for e in answer.iter() {
            if !e.endpoints().is_subset(asked) {
                return Err(oracle_fault(round, format!("edge {} leaves the query", layout.format_edge(e))));
            }
            if let Some(bp) = layout.bipartition {
                if !bp.crosses(e) {
                    return Err(oracle_fault(round, format!("edge {} joins one side", layout.format_edge(e))));
                }
            }
            if !response.try_add(e) {
                return Err(oracle_fault(round, format!("edge {} reuses a vertex", layout.format_edge(e))));
            }
        }
        for e in response.iter() {
            if known_set.insert(e) {
                known.push(e);
            }
        }
        history.push(RoundRecord { query, response });
        observer(oracle, &history);
    }

    let commitment = oracle.commitment().map_err(|source| GameError::Oracle { round: rounds, source })?;
    let transcript = Transcript {
        layout,
        rounds: history,
        final_stream: commitment.final_stream,
        non_edges: commitment.non_edges,
        perfect_matching: commitment.perfect_matching,
    };
    let result = score(&transcript)?;
    player.finish(&transcript, &result);
    Ok((transcript, result))
}

fn oracle_fault(round: usize, reason: String) -> GameError {
    GameError::Oracle { round, source: OracleError::Fault { round, reason } }
}

fn partial_transcript<O: Oracle + ?Sized>(oracle: &O, layout: Layout, rounds: Vec<RoundRecord>) -> Transcript {
    let (final_stream, non_edges, perfect_matching) = match oracle.commitment() {
        Ok(c) => (c.final_stream, c.non_edges, c.perfect_matching),
        Err(_) => (EdgeStream::new(), EdgeSet::new(), Matching::new()),
    };
    Transcript { layout, rounds, final_stream, non_edges, perfect_matching }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_prematches_known_edges() {
        // a1..a5 = 0..5, b1..b5 = 5..10; M = a_i b_i.
        let known = [Edge::new(0, 5), Edge::new(1, 6), Edge::new(2, 7)];
        let q: VertexSet = [0, 5, 1, 7].into_iter().collect();
        let (reduced, pre) = normalize_query(q, &known);
        assert_eq!(pre.edges(), &[Edge::new(0, 5)]);
        assert_eq!(reduced, [1, 7].into_iter().collect());

        let untouched: VertexSet = [3, 4, 8].into_iter().collect();
        let (same, none) = normalize_query(untouched, &known);
        assert_eq!(same, untouched);
        assert!(none.is_empty());
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(format_ratio(&Ratio::new(0usize, 5)), "0/1");
        assert_eq!(format_ratio(&Ratio::new(4usize, 8)), "1/2");
        assert_eq!(format_ratio(&Ratio::new(3usize, 3)), "1/1");
    }

    #[test]
    fn score_uses_union_of_responses() {
        let layout = Layout::bipartite(5, 5);
        // M ∪ E_2 ∪ {a4b2, a5b3}
        let edges = [(0, 5), (1, 6), (2, 7), (0, 9), (1, 7), (3, 6), (4, 7)];
        let rounds = vec![RoundRecord { query: layout.vertices(), response: Matching::new() }];
        let mut t = Transcript {
            layout,
            rounds,
            final_stream: EdgeStream::new(),
            non_edges: EdgeSet::new(),
            perfect_matching: Matching::new(),
        };
        let learned: EdgeSet = edges.iter().map(|&(u, v)| Edge::new(u, v)).collect();
        let r = score_edges(&layout, &learned).unwrap();
        assert_eq!(r.player_matching.len(), 3);
        assert_eq!(r.ratio, Ratio::new(3, 5));
        t.rounds.clear();
        assert_eq!(score(&t).unwrap().ratio, Ratio::from_integer(0));
    }
}
