//! The vertex-query matching game: graphs, oracles, adversaries, players and
//! an exhaustive minimax solver.

pub mod adversaries;
pub mod game;
pub mod graph;
pub mod json;
pub mod oracle;
pub mod players;
pub mod solver;
