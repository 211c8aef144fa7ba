#![allow(dead_code)]

use matchgame::graph::{Edge, EdgeStream, Graph, Layout};
use matchgame::oracle::HonestOracle;
use rand::seq::SliceRandom;
use rand::Rng;

/// Maximum matching size by branching on the lowest vertex: leave it single
/// or match it to each neighbour in turn.
pub fn brute_max_matching(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    fn go(adj: &[Vec<bool>], used: &mut Vec<bool>, from: usize) -> usize {
        let n = adj.len();
        let Some(u) = (from..n).find(|&u| !used[u]) else { return 0 };
        used[u] = true;
        let mut best = go(adj, used, u + 1);
        for v in u + 1..n {
            if adj[u][v] && !used[v] {
                used[v] = true;
                best = best.max(1 + go(adj, used, u + 1));
                used[v] = false;
            }
        }
        used[u] = false;
        best
    }
    go(&adj, &mut vec![false; n], 0)
}

/// Greedy over a pair list, restricted to `allowed`.
pub fn brute_greedy(n: usize, stream: &[(usize, usize)], allowed: &[bool]) -> Vec<(usize, usize)> {
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for &(u, v) in stream {
        if allowed[u] && allowed[v] && !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            out.push((u.min(v), u.max(v)));
        }
    }
    out
}

pub fn pairs(edges: impl IntoIterator<Item = Edge>) -> Vec<(usize, usize)> {
    edges.into_iter().map(|e| (e.u(), e.v())).collect()
}

/// A random bipartite graph with sides of size `1..=6` and a random stream
/// order.
#[derive(Debug, Clone)]
pub struct FuzzGraph {
    pub a: usize,
    pub b: usize,
    pub stream: Vec<Edge>,
}

impl FuzzGraph {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let a = rng.gen_range(1..=6);
        let b = rng.gen_range(1..=6);
        let p: f64 = rng.gen_range(0.1..0.9);
        let mut stream = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                if rng.gen_bool(p) {
                    stream.push(Edge::new(u, v));
                }
            }
        }
        stream.shuffle(rng);
        FuzzGraph { a, b, stream }
    }

    pub fn n(&self) -> usize {
        self.a + self.b
    }

    pub fn opt(&self) -> usize {
        brute_max_matching(self.n(), &pairs(self.stream.iter().copied()))
    }

    pub fn oracle(&self) -> HonestOracle {
        let layout = Layout::bipartite(self.a, self.b);
        let graph = Graph::bipartite(self.a, self.b, self.stream.iter().copied()).unwrap();
        HonestOracle::new(layout, graph, EdgeStream::from_edges(self.stream.iter().copied()).unwrap()).unwrap()
    }
}
