//! `matchgame`: run, play, solve, verify and report on the vertex-query
//! matching game.
//!
//! Exit codes: 0 success, 1 verification or report failure, 2 usage or
//! configuration error, 3 unparsable transcript, 4 oracle fault, 5 player or
//! protocol error, 6 solver capacity exceeded, 7 game aborted, 8 i/o error.

mod report;

use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use matchgame::adversaries::{AdversaryOracle, OracleKind};
use matchgame::game::{format_ratio, run_game, GameError, GameOptions, GameResult, Transcript};
use matchgame::json::{report_to_json, transcript_from_json, transcript_to_json, JsonError};
use matchgame::oracle::{verify_streaming_consistency, BudgetPolicy, Oracle, OracleError, Verdict};
use matchgame::players::{GreedyOnce, InteractivePlayer, Player, RandomPlayer, ThreeRoundMatch};
use matchgame::solver::{solve, Canonicalization, SolverConfig, SolverError};

/// Failure codes beyond what the error type implies.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

#[derive(Parser)]
#[command(name = "matchgame", version, about = "Vertex-query matching game laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one scripted game and save its transcript.
    Run(RunArgs),
    /// Play against an oracle from the terminal.
    Play(PlayArgs),
    /// Find the best value any adaptive player can force.
    Solve(SolveArgs),
    /// Check a transcript for streaming consistency.
    Verify { transcript: PathBuf },
    /// Re-derive the headline bounds and print a pass/fail table.
    Report {
        #[arg(value_enum)]
        suite: report::Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    TwoRound,
    ThreeRound,
    SemiComplete,
    Bomb,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlayerArg {
    GreedyOnce,
    #[value(name = "3roundmatch")]
    ThreeRoundMatch,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum CanonArg {
    Auto,
    Full,
    Size,
    Responses,
}

#[derive(clap::Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    oracle: OracleArg,
    /// Number of vertices; for gadget oracles it must be a whole number of gadgets.
    #[arg(long)]
    n: Option<usize>,
    /// Semi-complete gadget half-size.
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    gadgets: Option<usize>,
    /// Answer rounds past the oracle's budget with the generic fallback.
    #[arg(long)]
    fallback: bool,
}

#[derive(clap::Args)]
struct RunArgs {
    #[command(flatten)]
    oracle: OracleArgs,
    #[arg(long, value_enum, default_value = "greedy-once")]
    player: PlayerArg,
    #[arg(long)]
    rounds: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Inclusion probability for the random player.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value = "transcript.json")]
    out: PathBuf,
}

#[derive(clap::Args)]
struct PlayArgs {
    #[command(flatten)]
    oracle: OracleArgs,
    #[arg(long)]
    rounds: usize,
    #[arg(long, default_value = "transcript.json")]
    out: PathBuf,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[command(flatten)]
    oracle: OracleArgs,
    #[arg(long)]
    rounds: usize,
    #[arg(long, value_enum, default_value = "auto")]
    canonical: CanonArg,
    /// Where to write the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OracleArgs {
    fn kind(&self) -> Result<OracleKind> {
        let gadgets_from_n = |size: usize| -> Result<usize> {
            match (self.n, self.gadgets) {
                (None, g) => Ok(g.unwrap_or(1)),
                (Some(n), g) if n > 0 && n % size == 0 && g.is_none_or(|g| g * size == n) => Ok(n / size),
                (Some(n), _) => Err(usage(format!("n = {n} is not a whole number of gadgets with {size} vertices"))),
            }
        };
        let kind = match self.oracle {
            OracleArg::TwoRound => OracleKind::TwoRound { n: self.n.unwrap_or(16) },
            OracleArg::ThreeRound => OracleKind::ThreeRound { gadgets: gadgets_from_n(10)? },
            OracleArg::SemiComplete => {
                let c = self.c.unwrap_or(3);
                if c == 0 {
                    return Err(usage("c must be positive"));
                }
                OracleKind::SemiComplete { c, gadgets: gadgets_from_n(2 * c)? }
            }
            OracleArg::Bomb => OracleKind::Bomb { n: self.n.unwrap_or(12) },
        };
        Ok(kind)
    }

    fn build(&self, rounds: usize) -> Result<(OracleKind, AdversaryOracle)> {
        let kind = self.kind()?;
        let mut oracle = kind.build()?;
        if let Some(budget) = oracle.round_budget() {
            if rounds > budget {
                if !self.fallback {
                    return Err(usage(format!(
                        "the {} oracle is defined for {budget} rounds; pass --fallback to play {rounds}",
                        kind.label()
                    )));
                }
                oracle = oracle.with_policy(BudgetPolicy::Fallback);
            }
        }
        Ok((kind, oracle))
    }
}

fn describe(kind: &OracleKind) -> String {
    match kind {
        OracleKind::TwoRound { n } | OracleKind::Bomb { n } => format!("{} (n={n})", kind.label()),
        OracleKind::ThreeRound { gadgets } => format!("{} (n={}, {gadgets} gadget(s))", kind.label(), kind.n()),
        OracleKind::SemiComplete { c, gadgets } => {
            format!("{} (n={}, c={c}, {gadgets} gadget(s))", kind.label(), kind.n())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn print_result(out: &mut impl Write, t: &Transcript, r: &GameResult) -> io::Result<()> {
    writeln!(out, "best matching: {}", t.layout.format_matching(&r.player_matching))?;
    writeln!(out, "size {} of {}, ratio {}", r.player_matching.len(), r.opt, format_ratio(&r.ratio))
}

fn cmd_run(args: RunArgs) -> Result<u8> {
    if !(0.0..=1.0).contains(&args.density) {
        return Err(usage("density must lie in [0, 1]"));
    }
    let (kind, mut oracle) = args.oracle.build(args.rounds)?;
    let mut player: Box<dyn Player> = match args.player {
        PlayerArg::GreedyOnce => Box::new(GreedyOnce),
        PlayerArg::ThreeRoundMatch => Box::new(ThreeRoundMatch),
        PlayerArg::Random => Box::new(RandomPlayer::new(args.seed, args.density)),
    };
    let (t, r) = run_game(player.as_mut(), &mut oracle, args.rounds, GameOptions::default())?;
    write_file(&args.out, &transcript_to_json(&t))?;
    let mut out = io::stdout().lock();
    writeln!(out, "oracle: {}", describe(&kind))?;
    writeln!(out, "player: {}, rounds: {}", player.name(), args.rounds)?;
    for (i, round) in t.rounds.iter().enumerate() {
        writeln!(
            out,
            "round {}: query {} -> {}",
            i + 1,
            t.layout.format_set(round.query),
            t.layout.format_matching(&round.response)
        )?;
    }
    print_result(&mut out, &t, &r)?;
    writeln!(out, "transcript: {}", args.out.display())?;
    Ok(0)
}

fn cmd_play(args: PlayArgs, input: impl BufRead, output: impl Write) -> Result<u8> {
    let (kind, mut oracle) = args.oracle.build(args.rounds)?;
    let mut player = InteractivePlayer::new(input, output);
    match run_game(&mut player, &mut oracle, args.rounds, GameOptions::default()) {
        Ok((t, _)) => {
            let mut out = player.into_output();
            write_file(&args.out, &transcript_to_json(&t))?;
            writeln!(out, "{} game saved to {}", describe(&kind), args.out.display())?;
            Ok(0)
        }
        Err(GameError::Aborted { round, transcript }) => {
            write_file(&args.out, &transcript_to_json(&transcript))?;
            let mut out = player.into_output();
            writeln!(out, "partial transcript saved to {}", args.out.display())?;
            Err(GameError::Aborted { round, transcript }.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<u8> {
    let (kind, oracle) = args.oracle.build(args.rounds)?;
    let canonicalization = match args.canonical {
        CanonArg::Auto => Canonicalization::for_kind(&kind),
        CanonArg::Full => Canonicalization::Full,
        CanonArg::Size => Canonicalization::Round1BySize,
        CanonArg::Responses => Canonicalization::ResponseClasses,
    };
    let report = solve(&oracle, &SolverConfig::new(args.rounds, canonicalization))?;
    let layout = report.layout;
    let mut out = io::stdout().lock();
    writeln!(out, "oracle: {}, rounds: {}", describe(&kind), report.rounds)?;
    writeln!(out, "best value {} of {}, ratio {}", report.best_value, layout.n / 2, format_ratio(&report.best_ratio))?;
    for (i, q) in report.witness.iter().enumerate() {
        writeln!(out, "witness round {}: {}", i + 1, layout.format_set(*q))?;
    }
    writeln!(out, "nodes expanded: {}", report.nodes_expanded)?;
    writeln!(out, "canonicalization: {}", report.canonicalization)?;
    if let Some(path) = &args.out {
        write_file(path, &report_to_json(&report))?;
        writeln!(out, "report: {}", path.display())?;
    }
    Ok(0)
}

fn cmd_verify(path: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let t = transcript_from_json(&text)?;
    let verdict = verify_streaming_consistency(&t).map_err(|e| anyhow!(JsonError::Invalid(e)))?;
    println!("{verdict}");
    Ok(match verdict {
        Verdict::Pass => 0,
        Verdict::Fail { .. } => 1,
    })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    if err.downcast_ref::<JsonError>().is_some() {
        return 3;
    }
    if let Some(e) = err.downcast_ref::<GameError>() {
        return match e {
            GameError::Aborted { .. } => 7,
            GameError::Player { .. } | GameError::Protocol { .. } => 5,
            GameError::Oracle { source: OracleError::Config(_), .. } => 2,
            GameError::Oracle { .. } | GameError::Graph(_) => 4,
        };
    }
    if let Some(e) = err.downcast_ref::<SolverError>() {
        return match e {
            SolverError::Capacity { .. } => 6,
            SolverError::Oracle(OracleError::Config(_)) => 2,
            _ => 4,
        };
    }
    if let Some(e) = err.downcast_ref::<OracleError>() {
        return if matches!(e, OracleError::Config(_)) { 2 } else { 4 };
    }
    if err.downcast_ref::<io::Error>().is_some() {
        return 8;
    }
    1
}

/// The error chain, skipping causes already spelled out by their parent.
fn message(err: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in err.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Play(args) => cmd_play(args, io::stdin().lock(), io::stdout()),
        Command::Solve(args) => cmd_solve(args),
        Command::Verify { transcript } => cmd_verify(&transcript),
        Command::Report { suite } => report::run(suite),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", message(&err));
            ExitCode::from(exit_code(&err))
        }
    }
}
