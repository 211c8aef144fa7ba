//! Player strategies.

mod interactive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{GameResult, RoundRecord, Transcript};
use crate::graph::{Layout, Matching, VertexSet};

pub use interactive::InteractivePlayer;

#[derive(Debug, Error)]
pub enum PlayerError {
    #[error("strategy needs a bipartite game")]
    WrongClass,
    #[error("player aborted")]
    Aborted,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// What a player sees before choosing a query.
pub struct RoundContext<'a> {
    pub layout: Layout,
    /// 1-based.
    pub round: usize,
    pub total_rounds: usize,
    pub history: &'a [RoundRecord],
}

pub trait Player {
    fn next_query(&mut self, ctx: &RoundContext<'_>) -> Result<VertexSet, PlayerError>;

    /// Called once after a completed game.
    fn finish(&mut self, _transcript: &Transcript, _result: &GameResult) {}

    fn name(&self) -> String;
}

/// Queries every vertex in round 1 and nothing afterwards.
#[derive(Debug, Clone, Default)]
pub struct GreedyOnce;

impl Player for GreedyOnce {
    fn next_query(&mut self, ctx: &RoundContext<'_>) -> Result<VertexSet, PlayerError> {
        Ok(if ctx.round == 1 { ctx.layout.vertices() } else { VertexSet::EMPTY })
    }

    fn name(&self) -> String {
        "greedy-once".into()
    }
}

/// The three-pass bipartite strategy: a maximal matching `M`, then greedy on
/// `A(M) ∪ B \ B(M)` for `M_L`, then greedy on `A \ A(M) ∪ B'` for `M_R`,
/// where `B'` are the `M`-partners of the `A` vertices that `M_L` matched.
#[derive(Debug, Clone, Default)]
pub struct ThreeRoundMatch;

impl ThreeRoundMatch {
    fn second_query(layout: &Layout, m: &Matching) -> Result<VertexSet, PlayerError> {
        let bp = layout.bipartition.ok_or(PlayerError::WrongClass)?;
        let covered = m.covered();
        Ok(bp.a_side().intersection(covered).union(bp.b_side().difference(covered)))
    }

    fn third_query(layout: &Layout, m: &Matching, m_l: &Matching) -> Result<VertexSet, PlayerError> {
        let bp = layout.bipartition.ok_or(PlayerError::WrongClass)?;
        let covered = m.covered();
        // Length-2 paths b' - a - b with b'a in M and ab in M_L end in B(M) at b'.
        let b_prime: VertexSet = bp
            .a_side()
            .intersection(covered)
            .iter()
            .filter(|&a| m_l.is_matched(a))
            .filter_map(|a| m.partner(a))
            .collect();
        if b_prime.is_empty() {
            return Ok(VertexSet::EMPTY);
        }
        Ok(bp.a_side().difference(covered).union(b_prime))
    }
}

impl Player for ThreeRoundMatch {
    fn next_query(&mut self, ctx: &RoundContext<'_>) -> Result<VertexSet, PlayerError> {
        if !ctx.layout.is_bipartite() {
            return Err(PlayerError::WrongClass);
        }
        let h = ctx.history;
        match ctx.round {
            1 => Ok(ctx.layout.vertices()),
            2 => Self::second_query(&ctx.layout, &h[0].response),
            3 => Self::third_query(&ctx.layout, &h[0].response, &h[1].response),
            _ => Ok(VertexSet::EMPTY),
        }
    }

    fn name(&self) -> String {
        "3roundmatch".into()
    }
}

/// Includes each vertex independently with probability `density`.
#[derive(Debug, Clone)]
pub struct RandomPlayer {
    rng: ChaCha8Rng,
    density: f64,
}

impl RandomPlayer {
    pub fn new(seed: u64, density: f64) -> Self {
        RandomPlayer { rng: ChaCha8Rng::seed_from_u64(seed), density: density.clamp(0.0, 1.0) }
    }
}

impl Player for RandomPlayer {
    fn next_query(&mut self, ctx: &RoundContext<'_>) -> Result<VertexSet, PlayerError> {
        let density = self.density;
        Ok(ctx.layout.vertices().iter().filter(|_| self.rng.gen_bool(density)).collect())
    }

    fn name(&self) -> String {
        "random".into()
    }
}

/// Replays a fixed query sequence, then queries nothing.
#[derive(Debug, Clone)]
pub struct ScriptedPlayer {
    queries: Vec<VertexSet>,
}

impl ScriptedPlayer {
    pub fn new(queries: Vec<VertexSet>) -> Self {
        ScriptedPlayer { queries }
    }
}

impl Player for ScriptedPlayer {
    fn next_query(&mut self, ctx: &RoundContext<'_>) -> Result<VertexSet, PlayerError> {
        Ok(self.queries.get(ctx.round - 1).copied().unwrap_or_default())
    }

    fn name(&self) -> String {
        "scripted".into()
    }
}
