use super::{Edge, Graph, GraphError, Matching, VertexSet, MAX_VERTICES};
use crate::graph::greedy::greedy_over;

/// Default vertex limit for [`max_matching_general`].
pub const GENERAL_MATCHING_LIMIT: usize = 32;

/// Maximum matching in an arbitrary graph by branch and bound.
///
/// Exponential in the worst case, so the vertex count is capped at
/// [`GENERAL_MATCHING_LIMIT`].
pub fn max_matching_general(g: &Graph) -> Result<Matching, GraphError> {
    max_matching_general_with_limit(g, GENERAL_MATCHING_LIMIT)
}

pub fn max_matching_general_with_limit(g: &Graph, limit: usize) -> Result<Matching, GraphError> {
    if g.n() > limit {
        return Err(GraphError::SizeLimit { n: g.n(), limit });
    }
    let mut adj = [0u64; MAX_VERTICES];
    for (v, row) in adj.iter_mut().enumerate().take(g.n()) {
        *row = g.neighbors(v).bits();
    }
    let initial = greedy_over(g.edges().iter(), g.vertices());
    let mut search = Search { adj, best: initial.edges().to_vec(), current: Vec::new(), ceiling: g.n() / 2 };
    search.run(g.vertices().bits());
    Ok(Matching::from_edges(search.best).expect("search yields a matching"))
}

struct Search {
    adj: [u64; MAX_VERTICES],
    best: Vec<Edge>,
    current: Vec<Edge>,
    ceiling: usize,
}

impl Search {
    fn run(&mut self, active: u64) {
        if self.best.len() == self.ceiling {
            return;
        }
        // Vertices without an active neighbor can never be matched again.
        let mut live = active;
        for v in VertexSet::from_bits(active) {
            if self.adj[v] & active == 0 {
                live &= !(1u64 << v);
            }
        }
        if self.current.len() + live.count_ones() as usize / 2 <= self.best.len() {
            return;
        }
        let Some(v) = VertexSet::from_bits(live).first() else {
            return;
        };
        let rest = live & !(1u64 << v);
        for w in VertexSet::from_bits(self.adj[v] & rest) {
            self.current.push(Edge::new(v, w));
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            self.run(rest & !(1u64 << w));
            self.current.pop();
        }
        self.run(rest);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)));
        Graph::new(n, None, edges).unwrap()
    }

    #[test]
    fn triangle_has_one_edge() {
        assert_eq!(max_matching_general(&complete(3)).unwrap().len(), 1);
    }

    #[test]
    fn complete_six_is_perfect() {
        assert_eq!(max_matching_general(&complete(6)).unwrap().len(), 3);
    }

    #[test]
    fn greedy_start_is_improved() {
        // Lexicographic greedy takes 0-1 and stops; the optimum is {0-2, 1-3}.
        let g = Graph::new(4, None, [Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 3)]).unwrap();
        assert_eq!(max_matching_general(&g).unwrap().len(), 2);
    }

    #[test]
    fn size_limit() {
        let g = Graph::new(40, None, []).unwrap();
        assert_eq!(
            max_matching_general(&g).unwrap_err(),
            GraphError::SizeLimit { n: 40, limit: GENERAL_MATCHING_LIMIT }
        );
    }
}
