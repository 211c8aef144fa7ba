//! Headline bounds, re-derived on small instances.

use anyhow::Result;
use clap::ValueEnum;
use matchgame::adversaries::{bomb_oracle, three_round_oracle, two_round_oracle, OracleKind};
use matchgame::game::{format_ratio, run_game, GameOptions};
use matchgame::players::{GreedyOnce, ThreeRoundMatch};
use matchgame::solver::{perfect_matching_round_requirement, solve, Canonicalization, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    TwoRound,
    ThreeRound,
    SemiComplete,
    Bomb,
    All,
}

struct Row {
    claim: String,
    bound: String,
    measured: String,
    pass: bool,
}

fn two_round(rows: &mut Vec<Row>) -> Result<()> {
    let n = 16;
    let kind = OracleKind::TwoRound { n };
    let oracle = two_round_oracle(n)?;
    for r in 1..=2 {
        let report = solve(&oracle, &SolverConfig::new(r, Canonicalization::for_kind(&kind)))?;
        rows.push(Row {
            claim: format!("two-round oracle, n={n}: best {r}-round value"),
            bound: format!("<= {}", n / 4),
            measured: report.best_value.to_string(),
            pass: 4 * report.best_value <= n,
        });
    }
    let (_, res) = run_game(&mut GreedyOnce, &mut two_round_oracle(n)?, 1, GameOptions::default())?;
    rows.push(Row {
        claim: "greedy-once against the two-round oracle".into(),
        bound: "= 1/2".into(),
        measured: format_ratio(&res.ratio),
        pass: *res.ratio.numer() * 2 == *res.ratio.denom(),
    });
    Ok(())
}

fn three_round(rows: &mut Vec<Row>) -> Result<()> {
    let kind = OracleKind::ThreeRound { gadgets: 1 };
    let oracle = three_round_oracle(1)?;
    let report = solve(&oracle, &SolverConfig::new(3, Canonicalization::for_kind(&kind)))?;
    rows.push(Row {
        claim: "three-round oracle, n=10: best 3-round value".into(),
        bound: "<= 3 (ratio 3/5)".into(),
        measured: format!("{} ({})", report.best_value, format_ratio(&report.best_ratio)),
        pass: report.best_value <= 3,
    });
    let (_, res) = run_game(&mut ThreeRoundMatch, &mut three_round_oracle(1)?, 3, GameOptions::default())?;
    rows.push(Row {
        claim: "3roundmatch against the three-round oracle".into(),
        bound: ">= 3/5".into(),
        measured: format_ratio(&res.ratio),
        pass: 5 * res.ratio.numer() >= 3 * res.ratio.denom(),
    });
    Ok(())
}

fn semi_complete(rows: &mut Vec<Row>) -> Result<()> {
    for c in 1..=3 {
        let req = perfect_matching_round_requirement(c, c + 1)?;
        rows.push(Row {
            claim: format!("semi-complete G_{c}: rounds to force a perfect matching"),
            bound: format!("= {c}"),
            measured: format!("{} (values {:?})", req.rounds, req.values),
            pass: req.rounds == c,
        });
    }
    Ok(())
}

fn bomb(rows: &mut Vec<Row>) -> Result<()> {
    let n = 12;
    let kind = OracleKind::Bomb { n };
    let oracle = bomb_oracle(n)?;
    for r in 1..=2 {
        let report = solve(&oracle, &SolverConfig::new(r, Canonicalization::for_kind(&kind)))?;
        rows.push(Row {
            claim: format!("bomb oracle, n={n}: best {r}-round value"),
            bound: format!("<= n/4 + r/2 = {}/4", n + 2 * r),
            measured: report.best_value.to_string(),
            pass: 4 * report.best_value <= n + 2 * r,
        });
    }
    Ok(())
}

/// Prints the table; exit code 1 if any row fails.
pub fn run(suite: Suite) -> Result<u8> {
    let mut rows = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::TwoRound {
        two_round(&mut rows)?;
    }
    if all || suite == Suite::ThreeRound {
        three_round(&mut rows)?;
    }
    if all || suite == Suite::SemiComplete {
        semi_complete(&mut rows)?;
    }
    if all || suite == Suite::Bomb {
        bomb(&mut rows)?;
    }
    let headers = ["claim", "bound", "measured", "pass"];
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| [r.claim.clone(), r.bound.clone(), r.measured.clone(), if r.pass { "yes" } else { "NO" }.into()])
        .collect();
    let mut width = headers.map(str::len);
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cols: [&str; 4]| {
        let parts: Vec<String> = cols.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
        println!("{}", parts.join("  ").trim_end());
    };
    line(headers);
    for row in &cells {
        line([&row[0], &row[1], &row[2], &row[3]]);
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    println!("{} of {} rows pass", rows.len() - failed, rows.len());
    Ok(if failed == 0 { 0 } else { 1 })
}
