//! Exhaustive minimax search over adaptive query strategies.

mod canon;

use std::collections::HashSet;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::adversaries::semi_complete_oracle;
use crate::game::{run_game, GameOptions, RoundRecord};
use crate::graph::{max_matching_general, max_matching_on_sides, EdgeSet, Graph, Layout, Matching, VertexSet};
use crate::oracle::{Oracle, OracleError};
use crate::players::ScriptedPlayer;

pub use canon::{all_queries, reduced_queries, round1_by_size, Canonicalization};

/// Default largest `n` the solver accepts.
pub const DEFAULT_MAX_N: usize = 20;
/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "MATCHGAME_MAX_N";

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("{n} vertices exceed the solver capacity of {cap} (set {MAX_N_ENV} to raise it)")]
    Capacity { n: usize, cap: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("search check failed after query {query:?}: {reason}")]
    Hook { query: VertexSet, reason: String },
    #[error("replaying the witness gave {got}, the search claimed {expected}")]
    Replay { expected: usize, got: usize },
    #[error("replaying the witness failed: {0}")]
    Engine(String),
}

/// Capacity from the environment, else [`DEFAULT_MAX_N`].
pub fn solver_capacity() -> usize {
    std::env::var(MAX_N_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_N)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub oracle: String,
    pub layout: Layout,
    pub rounds: usize,
    pub best_value: usize,
    pub best_ratio: Ratio<usize>,
    /// A query sequence reaching `best_value`.
    pub witness: Vec<VertexSet>,
    pub nodes_expanded: u64,
    pub canonicalization: String,
}

/// Per-node check, called with the child oracle and the history ending in
/// the new round.
pub type Hook<'a, O> = &'a (dyn Fn(&O, &[RoundRecord]) -> Result<(), String> + Sync);

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub rounds: usize,
    pub canonicalization: Canonicalization,
    pub max_n: usize,
}

impl SolverConfig {
    pub fn new(rounds: usize, canonicalization: Canonicalization) -> Self {
        SolverConfig { rounds, canonicalization, max_n: solver_capacity() }
    }
}

/// Best matching size any `rounds`-round player can force against `oracle`.
pub fn solve<O>(oracle: &O, config: &SolverConfig) -> Result<SolveReport, SolverError>
where
    O: Oracle + Clone + Hash + Eq + Send + Sync,
{
    solve_with_hook(oracle, config, &|_, _| Ok(()))
}

pub fn solve_with_hook<O>(oracle: &O, config: &SolverConfig, hook: Hook<'_, O>) -> Result<SolveReport, SolverError>
where
    O: Oracle + Clone + Hash + Eq + Send + Sync,
{
    let layout = oracle.layout();
    if layout.n > config.max_n {
        return Err(SolverError::Capacity { n: layout.n, cap: config.max_n });
    }
    let search =
        Search { layout, rounds: config.rounds, canon: config.canonicalization, hook, nodes: AtomicU64::new(0) };
    let (best_value, witness) = search.root(oracle)?;
    let opt = layout.n / 2;
    let best_ratio = if opt == 0 { Ratio::from_integer(1) } else { Ratio::new(best_value, opt) };
    let report = SolveReport {
        oracle: oracle.name(),
        layout,
        rounds: config.rounds,
        best_value,
        best_ratio,
        witness,
        nodes_expanded: search.nodes.load(Ordering::Relaxed),
        canonicalization: config.canonicalization.describe().to_string(),
    };
    let got = replay_witness(oracle, &report)?;
    if got != best_value {
        return Err(SolverError::Replay { expected: best_value, got });
    }
    Ok(report)
}

/// Plays the witness through the game engine and returns the matching size.
pub fn replay_witness<O: Oracle + Clone>(oracle: &O, report: &SolveReport) -> Result<usize, SolverError> {
    let mut o = oracle.clone();
    let mut player = ScriptedPlayer::new(report.witness.clone());
    let (_, result) = run_game(&mut player, &mut o, report.rounds, GameOptions::default())
        .map_err(|e| SolverError::Engine(e.to_string()))?;
    Ok(result.player_matching.len())
}

struct Search<'a, O> {
    layout: Layout,
    rounds: usize,
    canon: Canonicalization,
    hook: Hook<'a, O>,
    nodes: AtomicU64,
}

#[derive(PartialEq, Eq, Hash)]
struct ChildKey<O> {
    oracle: Option<O>,
    responses: Vec<Matching>,
}

type Outcome = Result<(usize, Vec<VertexSet>), SolverError>;

impl<O> Search<'_, O>
where
    O: Oracle + Clone + Hash + Eq + Send + Sync,
{
    fn cap(&self) -> usize {
        self.layout.n / 2
    }

    fn value(&self, learned: &EdgeSet) -> usize {
        match self.layout.bipartition {
            Some(bp) => max_matching_on_sides(bp.a_side(), learned).len(),
            None => {
                let g = Graph::new(self.layout.n, None, learned.iter()).expect("learned edges lie inside the layout");
                max_matching_general(&g).expect("general matching within its size limit").len()
            }
        }
    }

    fn candidates(&self, oracle: &O, depth: usize, learned: &EdgeSet) -> Vec<VertexSet> {
        if !oracle.accepts_reduced_queries() {
            return all_queries(self.layout.n);
        }
        if depth == 0 && self.canon == Canonicalization::Round1BySize {
            if let Some(reps) = round1_by_size(&self.layout) {
                return reps;
            }
        }
        reduced_queries(self.layout.n, learned)
    }

    fn key(&self, child: &O, history: &[RoundRecord]) -> ChildKey<O> {
        let oracle = match self.canon {
            Canonicalization::ResponseClasses => None,
            _ => Some(child.clone()),
        };
        ChildKey { oracle, responses: history.iter().map(|r| r.response.clone()).collect() }
    }

    /// Asks `q` of a copy of `oracle`.
    fn expand(
        &self,
        oracle: &O,
        history: &[RoundRecord],
        learned: &EdgeSet,
        q: VertexSet,
    ) -> Result<(O, Vec<RoundRecord>, EdgeSet), SolverError> {
        let mut child = oracle.clone();
        let response = child.respond(q)?;
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let mut learned = learned.clone();
        for e in response.iter() {
            learned.insert(e);
        }
        let mut history = history.to_vec();
        history.push(RoundRecord { query: q, response });
        (self.hook)(&child, &history).map_err(|reason| SolverError::Hook { query: q, reason })?;
        Ok((child, history, learned))
    }

    fn root(&self, oracle: &O) -> Outcome {
        if self.rounds == 0 {
            return Ok((0, Vec::new()));
        }
        let learned = EdgeSet::new();
        let mut seen = HashSet::new();
        let mut children = Vec::new();
        for q in self.candidates(oracle, 0, &learned) {
            let (child, history, learned) = self.expand(oracle, &[], &learned, q)?;
            if self.rounds == 1 || seen.insert(self.key(&child, &history)) {
                children.push((q, child, history, learned));
            }
        }
        let results: Vec<Outcome> = children
            .par_iter()
            .map(|(q, child, history, learned)| {
                let (v, mut w) = self.node(child, history, learned, 1)?;
                w.insert(0, *q);
                Ok((v, w))
            })
            .collect();
        let mut best: Option<(usize, Vec<VertexSet>)> = None;
        for r in results {
            let (v, w) = r?;
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, w));
            }
        }
        Ok(best.expect("the empty query is always a candidate"))
    }

    fn node(&self, oracle: &O, history: &[RoundRecord], learned: &EdgeSet, depth: usize) -> Outcome {
        if depth == self.rounds {
            return Ok((self.value(learned), Vec::new()));
        }
        let mut best = (self.value(learned), vec![VertexSet::EMPTY; self.rounds - depth]);
        if best.0 == self.cap() {
            return Ok(best);
        }
        let last = depth + 1 == self.rounds;
        let mut seen = HashSet::new();
        for q in self.candidates(oracle, depth, learned) {
            let (child, history, learned) = self.expand(oracle, history, learned, q)?;
            let (v, mut w) = if last {
                (self.value(&learned), Vec::new())
            } else {
                if !seen.insert(self.key(&child, &history)) {
                    continue;
                }
                self.node(&child, &history, &learned, depth + 1)?
            };
            if v > best.0 {
                w.insert(0, q);
                best = (v, w);
                if v == self.cap() {
                    break;
                }
            }
        }
        Ok(best)
    }
}

/// Rounds needed to force a perfect matching of one semi-complete gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRequirement {
    pub c: usize,
    pub rounds: usize,
    /// Best value for `1..=rounds` rounds.
    pub values: Vec<usize>,
}

/// Smallest `r` whose minimax value against `G_c` is `c`, searching up to
/// `max_rounds`. Every searched response is checked to hold at most one
/// edge of `M*`.
pub fn perfect_matching_round_requirement(c: usize, max_rounds: usize) -> Result<RoundRequirement, SolverError> {
    let oracle = semi_complete_oracle(c, 1)?;
    let m_star: EdgeSet = (0..c).map(|i| crate::graph::Edge::new(i, c + i)).collect();
    let hook = |_: &_, h: &[RoundRecord]| {
        let hits = h.last().map_or(0, |r| r.response.iter().filter(|&e| m_star.contains(e)).count());
        if hits > 1 {
            return Err(format!("{hits} edges of M* in one response"));
        }
        Ok(())
    };
    let mut values = Vec::new();
    for r in 1..=max_rounds {
        let report = solve_with_hook(&oracle, &SolverConfig::new(r, Canonicalization::Full), &hook)?;
        values.push(report.best_value);
        if report.best_value == c {
            return Ok(RoundRequirement { c, rounds: r, values });
        }
    }
    Err(SolverError::Engine(format!("no perfect matching of G_{c} within {max_rounds} rounds")))
}
