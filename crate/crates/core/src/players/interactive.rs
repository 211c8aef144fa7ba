use std::io::{BufRead, Write};

use super::{Player, PlayerError, RoundContext};
use crate::game::{format_ratio, GameResult, Transcript};
use crate::graph::{Layout, VertexSet};
use crate::oracle::player_view;

/// A human player on a line-based console.
///
/// Each round prints
///
/// ```text
/// round <i> of <r>
/// known edges: <edges or {}>
/// known non-edges: <edges or {}>
/// query>
/// ```
///
/// and reads one line of whitespace-separated vertex names. An empty line is
/// the empty query; an unknown name re-prompts; end of input aborts the game.
pub struct InteractivePlayer<R, W> {
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> InteractivePlayer<R, W> {
    pub fn new(input: R, output: W) -> Self {
        InteractivePlayer { input, output }
    }

    pub fn into_output(self) -> W {
        self.output
    }

    fn parse(layout: &Layout, line: &str) -> Result<VertexSet, String> {
        let mut q = VertexSet::EMPTY;
        for token in line.split_whitespace() {
            match layout.parse_vertex(token) {
                Some(v) => q.insert(v),
                None => return Err(token.to_string()),
            }
        }
        Ok(q)
    }
}

impl<R: BufRead, W: Write> Player for InteractivePlayer<R, W> {
    fn next_query(&mut self, ctx: &RoundContext<'_>) -> Result<VertexSet, PlayerError> {
        let view = player_view(&ctx.layout, ctx.history);
        writeln!(self.output, "round {} of {}", ctx.round, ctx.total_rounds)?;
        writeln!(self.output, "known edges: {}", ctx.layout.format_edges(view.edges.iter()))?;
        writeln!(self.output, "known non-edges: {}", ctx.layout.format_edges(view.non_edges.iter()))?;
        loop {
            write!(self.output, "query> ")?;
            self.output.flush()?;
            let mut line = String::new();
            if self.input.read_line(&mut line)? == 0 {
                writeln!(self.output)?;
                return Err(PlayerError::Aborted);
            }
            match Self::parse(&ctx.layout, &line) {
                Ok(q) => return Ok(q),
                Err(token) => writeln!(self.output, "unknown vertex '{token}', try again")?,
            }
        }
    }

    fn finish(&mut self, transcript: &Transcript, result: &GameResult) {
        let layout = &transcript.layout;
        let _ = writeln!(self.output, "best matching: {}", layout.format_matching(&result.player_matching));
        let _ = writeln!(
            self.output,
            "size {} of {}, ratio {}",
            result.player_matching.len(),
            result.opt,
            format_ratio(&result.ratio)
        );
        let _ = writeln!(
            self.output,
            "oracle's perfect matching: {}",
            layout.format_matching(&transcript.perfect_matching)
        );
    }

    fn name(&self) -> String {
        "interactive".into()
    }
}
