mod common;

use common::{brute_greedy, brute_max_matching, pairs};
use matchgame::graph::{
    greedy_matching, is_maximal, max_matching_bipartite, max_matching_general, perfect_matching_avoiding, Edge,
    EdgeSet, EdgeStream, Graph, VertexSet,
};
use proptest::prelude::*;

/// `(n, edges in stream order)` of a general graph on at most 12 vertices.
fn general_graph() -> impl Strategy<Value = (usize, Vec<Edge>)> {
    (1usize..=12).prop_flat_map(|n| {
        let all: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v))).collect();
        let len = all.len();
        (Just(n), proptest::sample::subsequence(all, 0..=len).prop_shuffle())
    })
}

/// `(a, b, edges in stream order)` of a bipartite graph with sides `1..=6`.
fn bipartite_graph() -> impl Strategy<Value = (usize, usize, Vec<Edge>)> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(a, b)| {
        let all: Vec<Edge> = (0..a).flat_map(|u| (a..a + b).map(move |v| Edge::new(u, v))).collect();
        let len = all.len();
        (Just(a), Just(b), proptest::sample::subsequence(all, 0..=len).prop_shuffle())
    })
}

fn maximal_by_hand(n: usize, edges: &[Edge], m: &[(usize, usize)], allowed: VertexSet) -> bool {
    let mut used = vec![false; n];
    for &(u, v) in m {
        used[u] = true;
        used[v] = true;
    }
    edges.iter().all(|e| !(allowed.contains(e.u()) && allowed.contains(e.v()) && !used[e.u()] && !used[e.v()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn greedy_matches_the_definition((n, edges) in general_graph(), mask in any::<u64>()) {
        let allowed = VertexSet::from_bits(mask).intersection(VertexSet::full(n));
        let stream = EdgeStream::from_edges(edges.iter().copied()).unwrap();
        let m = greedy_matching(n, &stream, allowed).unwrap();
        let flags: Vec<bool> = (0..n).map(|v| allowed.contains(v)).collect();
        let mut expected = brute_greedy(n, &pairs(edges.iter().copied()), &flags);
        expected.sort();
        prop_assert_eq!(pairs(m.iter()), expected);
    }

    #[test]
    fn greedy_is_maximal_and_half_optimal((n, edges) in general_graph(), mask in any::<u64>()) {
        let allowed = VertexSet::from_bits(mask).intersection(VertexSet::full(n));
        let stream = EdgeStream::from_edges(edges.iter().copied()).unwrap();
        let g = Graph::new(n, None, edges.iter().copied()).unwrap();
        let m = greedy_matching(n, &stream, allowed).unwrap();
        prop_assert!(is_maximal(&m, &g, allowed));
        prop_assert!(maximal_by_hand(n, &edges, &pairs(m.iter()), allowed));
        let whole = greedy_matching(n, &stream, VertexSet::full(n)).unwrap();
        prop_assert!(2 * whole.len() >= brute_max_matching(n, &pairs(edges.iter().copied())));
    }

    #[test]
    fn is_maximal_rejects_a_removed_edge((n, edges) in general_graph()) {
        let stream = EdgeStream::from_edges(edges.iter().copied()).unwrap();
        let g = Graph::new(n, None, edges.iter().copied()).unwrap();
        let m = greedy_matching(n, &stream, VertexSet::full(n)).unwrap();
        if let Some(&drop) = m.edges().first() {
            let smaller = matchgame::graph::Matching::from_edges(m.iter().filter(|&e| e != drop)).unwrap();
            prop_assert!(!is_maximal(&smaller, &g, VertexSet::full(n)));
        }
    }

    #[test]
    fn maximum_matchings_agree((a, b, edges) in bipartite_graph()) {
        let g = Graph::bipartite(a, b, edges.iter().copied()).unwrap();
        let brute = brute_max_matching(a + b, &pairs(edges.iter().copied()));
        let bip = max_matching_bipartite(&g).unwrap();
        let gen = max_matching_general(&g).unwrap();
        prop_assert_eq!(bip.len(), brute);
        prop_assert_eq!(gen.len(), brute);
        prop_assert!(bip.iter().all(|e| g.has_edge(e)));
        prop_assert!(gen.iter().all(|e| g.has_edge(e)));
    }

    #[test]
    fn general_matching_is_maximum((n, edges) in general_graph()) {
        let g = Graph::new(n, None, edges.iter().copied()).unwrap();
        let m = max_matching_general(&g).unwrap();
        prop_assert_eq!(m.len(), brute_max_matching(n, &pairs(edges.iter().copied())));
    }

    #[test]
    fn perfect_matching_avoiding_is_self_consistent(k in 1usize..=5, mask in any::<u32>()) {
        let all: Vec<Edge> = (0..k).flat_map(|u| (k..2 * k).map(move |v| Edge::new(u, v))).collect();
        let forbidden: EdgeSet = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let allowed: Vec<(usize, usize)> = pairs(all.iter().copied().filter(|&e| !forbidden.contains(e)));
        let pm = perfect_matching_avoiding(k, k, &forbidden).unwrap();
        prop_assert_eq!(pm.is_some(), brute_max_matching(2 * k, &allowed) == k);
        if let Some(m) = pm {
            prop_assert_eq!(m.len(), k);
            prop_assert!(m.iter().all(|e| !forbidden.contains(e) && e.u() < k && e.v() >= k));
        }
    }
}

/// Every order of every small edge set obeys the 1/2 bound.
#[test]
fn greedy_half_bound_over_all_orders() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(2..=8);
        let mut edges = Vec::new();
        while edges.len() < 6 {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && !edges.contains(&Edge::new(u, v)) {
                edges.push(Edge::new(u, v));
            }
            if edges.len() == n * (n - 1) / 2 {
                break;
            }
        }
        let opt = brute_max_matching(n, &pairs(edges.iter().copied()));
        permute(&mut edges, 0, &mut |order| {
            let stream = EdgeStream::from_edges(order.iter().copied()).unwrap();
            let m = greedy_matching(n, &stream, VertexSet::full(n)).unwrap();
            assert!(2 * m.len() >= opt, "order {order:?}");
        });
    }
}

fn permute(xs: &mut Vec<Edge>, k: usize, f: &mut impl FnMut(&[Edge])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

#[test]
fn worked_examples() {
    // path a1-b1-a2-b2 with a1 = 0, a2 = 1, b1 = 2, b2 = 3
    let g = Graph::bipartite(2, 2, [Edge::new(0, 2), Edge::new(1, 2), Edge::new(1, 3)]).unwrap();
    assert_eq!(max_matching_bipartite(&g).unwrap().len(), 2);
    let m = matchgame::graph::Matching::from_edges([Edge::new(0, 2)]).unwrap();
    assert!(!is_maximal(&m, &g, VertexSet::full(4)));
    let m = matchgame::graph::Matching::from_edges([Edge::new(1, 2)]).unwrap();
    assert!(is_maximal(&m, &g, VertexSet::full(4)));
    let triangle = Graph::new(3, None, [Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)]).unwrap();
    assert_eq!(max_matching_general(&triangle).unwrap().len(), 1);
    assert!(perfect_matching_avoiding(3, 3, &EdgeSet::new()).unwrap().is_some());
    let mut everything = EdgeSet::new();
    everything.insert_biclique(VertexSet::range(0, 3), Some(VertexSet::range(3, 6)));
    assert!(perfect_matching_avoiding(3, 3, &everything).unwrap().is_none());
}
