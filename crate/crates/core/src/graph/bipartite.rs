use super::{Edge, EdgeSet, Graph, GraphError, Matching, VertexSet, MAX_VERTICES};

/// Maximum matching of a bipartite graph by repeated augmenting-path search.
///
/// Uses the stored bipartition when present, otherwise two-colors the graph.
pub fn max_matching_bipartite(g: &Graph) -> Result<Matching, GraphError> {
    let left = match g.bipartition() {
        Some(bp) => bp.a_side(),
        None => two_color(g).ok_or(GraphError::NotBipartite)?,
    };
    Ok(max_matching_on_sides(left, g.edges()))
}

/// Maximum matching over `edges`, where every edge has exactly one endpoint
/// in `left`.
pub fn max_matching_on_sides(left: VertexSet, edges: &EdgeSet) -> Matching {
    let mut mate = [u8::MAX; MAX_VERTICES];
    for a in left {
        let mut seen = VertexSet::EMPTY;
        augment(a, edges, &mut mate, &mut seen);
    }
    let mut m = Matching::new();
    for a in left {
        if mate[a] != u8::MAX {
            m.try_add(Edge::new(a, mate[a] as usize));
        }
    }
    m
}

fn augment(a: usize, edges: &EdgeSet, mate: &mut [u8; MAX_VERTICES], seen: &mut VertexSet) -> bool {
    for b in edges.neighbors(a).difference(*seen) {
        seen.insert(b);
        let prev = mate[b];
        if prev == u8::MAX || augment(prev as usize, edges, mate, seen) {
            mate[a] = b as u8;
            mate[b] = a as u8;
            return true;
        }
    }
    false
}

/// One color class of a proper two-coloring, or `None` on an odd cycle.
fn two_color(g: &Graph) -> Option<VertexSet> {
    let mut color: [Option<bool>; MAX_VERTICES] = [None; MAX_VERTICES];
    let mut left = VertexSet::EMPTY;
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let c = color[v].expect("colored");
            if !c {
                left.insert(v);
            }
            for w in g.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        stack.push(w);
                    }
                    Some(cw) if cw == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(left)
}

/// Perfect matching between `A = 0..n_a` and `B = n_a..n_a+n_b` using only
/// pairs outside `forbidden`.
pub fn perfect_matching_avoiding(n_a: usize, n_b: usize, forbidden: &EdgeSet) -> Result<Option<Matching>, GraphError> {
    if n_a + n_b > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n: n_a + n_b, capacity: MAX_VERTICES });
    }
    perfect_matching_avoiding_sets(VertexSet::full(n_a), VertexSet::range(n_a, n_a + n_b), forbidden)
}

/// Same as [`perfect_matching_avoiding`] for arbitrary disjoint sides.
pub fn perfect_matching_avoiding_sets(
    a: VertexSet,
    b: VertexSet,
    forbidden: &EdgeSet,
) -> Result<Option<Matching>, GraphError> {
    if a.len() != b.len() {
        return Err(GraphError::UnequalSides { a: a.len(), b: b.len() });
    }
    let mut allowed = EdgeSet::new();
    for u in a {
        for v in b.difference(forbidden.neighbors(u)) {
            allowed.insert(Edge::new(u, v));
        }
    }
    let m = max_matching_on_sides(a, &allowed);
    Ok((m.len() == a.len()).then_some(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_three_by_three() {
        let edges = (0..3).flat_map(|a| (3..6).map(move |b| Edge::new(a, b)));
        let g = Graph::bipartite(3, 3, edges).unwrap();
        assert_eq!(max_matching_bipartite(&g).unwrap().len(), 3);
    }

    #[test]
    fn path_needs_augmentation() {
        // a1-b1, a2-b1, a2-b2 with a1 = 0, a2 = 1, b1 = 2, b2 = 3
        let g = Graph::bipartite(2, 2, [Edge::new(1, 2), Edge::new(0, 2), Edge::new(1, 3)]).unwrap();
        assert_eq!(max_matching_bipartite(&g).unwrap().len(), 2);
    }

    #[test]
    fn untagged_graph_is_two_colored() {
        let g = Graph::new(4, None, [Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3)]).unwrap();
        assert_eq!(max_matching_bipartite(&g).unwrap().len(), 2);
        let triangle = Graph::new(3, None, [Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)]).unwrap();
        assert_eq!(max_matching_bipartite(&triangle).unwrap_err(), GraphError::NotBipartite);
    }

    #[test]
    fn avoiding_everything_fails() {
        let mut all = EdgeSet::new();
        all.insert_biclique(VertexSet::full(3), Some(VertexSet::range(3, 6)));
        assert_eq!(perfect_matching_avoiding(3, 3, &all).unwrap(), None);
        assert!(perfect_matching_avoiding(3, 3, &EdgeSet::new()).unwrap().is_some());
        assert!(matches!(
            perfect_matching_avoiding(3, 2, &EdgeSet::new()),
            Err(GraphError::UnequalSides { a: 3, b: 2 })
        ));
    }
}
