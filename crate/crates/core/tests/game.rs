mod common;

use common::FuzzGraph;
use matchgame::adversaries::{bomb_oracle, three_round_oracle, two_round_oracle};
use matchgame::game::{format_ratio, run_game, GameError, GameOptions};
use matchgame::graph::{Layout, VertexSet};
use matchgame::oracle::{verify_streaming_consistency, Oracle};
use matchgame::players::{GreedyOnce, InteractivePlayer, PlayerError, ThreeRoundMatch};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn greedy_once_gets_half_against_two_rounds() {
    let mut o = two_round_oracle(16).unwrap();
    let (t, r) = run_game(&mut GreedyOnce, &mut o, 1, GameOptions::default()).unwrap();
    assert_eq!(format_ratio(&r.ratio), "1/2");
    assert!(verify_streaming_consistency(&t).unwrap().is_pass());
}

#[test]
fn three_round_match_gets_three_fifths_against_three_rounds() {
    let mut o = three_round_oracle(1).unwrap();
    let (t, r) = run_game(&mut ThreeRoundMatch, &mut o, 3, GameOptions::default()).unwrap();
    assert_eq!(format_ratio(&r.ratio), "3/5");
    assert!(verify_streaming_consistency(&t).unwrap().is_pass());
}

#[test]
fn zero_rounds_scores_zero() {
    let mut o = two_round_oracle(8).unwrap();
    let (_, r) = run_game(&mut GreedyOnce, &mut o, 0, GameOptions::default()).unwrap();
    assert_eq!(format_ratio(&r.ratio), "0/1");
}

#[test]
fn three_round_match_needs_sides() {
    let mut o = bomb_oracle(8).unwrap();
    let err = run_game(&mut ThreeRoundMatch, &mut o, 3, GameOptions::default()).unwrap_err();
    assert!(matches!(err, GameError::Player { round: 1, source: PlayerError::WrongClass }));
}

#[test]
fn three_round_match_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let g = FuzzGraph::random(&mut rng);
        let mut o = g.oracle();
        let (t, r) = run_game(&mut ThreeRoundMatch, &mut o, 3, GameOptions::default()).unwrap();
        let opt = g.opt();
        assert!(5 * r.player_matching.len() >= 3 * opt, "{g:?}");
        assert!(r.player_matching.len() <= opt);
        // Honest transcripts replay too, with the maximum matching as declared matching.
        assert_eq!(t.perfect_matching.len(), opt);
    }
}

#[test]
fn interactive_game_and_abort() {
    let mut o = two_round_oracle(16).unwrap();
    let names: Vec<String> = (0..16).map(|v| o.layout().name(v)).collect();
    let input = format!("{}\n\n", names.join(" "));
    let mut p = InteractivePlayer::new(input.as_bytes(), Vec::new());
    let (t, _) = run_game(&mut p, &mut o, 2, GameOptions::default()).unwrap();
    assert_eq!(t.rounds[0].response.len(), 4);
    let out = String::from_utf8(p.into_output()).unwrap();
    assert!(out.contains("round 2 of 2"));
    assert!(out.contains("size 4 of 8, ratio 1/2"));
    assert!(out.contains("oracle's perfect matching:"));

    let mut o = two_round_oracle(16).unwrap();
    let mut p = InteractivePlayer::new(&b""[..], Vec::new());
    match run_game(&mut p, &mut o, 2, GameOptions::default()) {
        Err(e @ GameError::Aborted { round: 1, .. }) => assert_eq!(e.to_string(), "aborted at round 1"),
        other => panic!("expected an abort, got {other:?}"),
    }
}

#[test]
fn out_of_range_queries_are_protocol_errors() {
    struct Wild;
    impl matchgame::players::Player for Wild {
        fn next_query(&mut self, _: &matchgame::players::RoundContext<'_>) -> Result<VertexSet, PlayerError> {
            Ok(VertexSet::singleton(40))
        }
        fn name(&self) -> String {
            "wild".into()
        }
    }
    let mut o = two_round_oracle(8).unwrap();
    assert!(matches!(
        run_game(&mut Wild, &mut o, 1, GameOptions::default()),
        Err(GameError::Protocol { round: 1, .. })
    ));
    let _ = Layout::bipartite(1, 1);
}
