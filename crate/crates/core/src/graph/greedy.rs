use super::{Edge, EdgeStream, Graph, GraphError, Matching, VertexSet};

/// Scans `stream` in order and keeps every edge inside `allowed` whose
/// endpoints are both still free.
pub fn greedy_matching(n: usize, stream: &EdgeStream, allowed: VertexSet) -> Result<Matching, GraphError> {
    if let Some(e) = stream.edges().iter().find(|e| e.v() >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: e.v(), n });
    }
    Ok(greedy_over(stream.edges().iter().copied(), allowed))
}

/// Unchecked greedy pass, shared by the oracles and the engine.
pub(crate) fn greedy_over<I: IntoIterator<Item = Edge>>(edges: I, allowed: VertexSet) -> Matching {
    let mut m = Matching::new();
    let mut free = allowed;
    for e in edges {
        if free.contains(e.u()) && free.contains(e.v()) {
            free.remove(e.u());
            free.remove(e.v());
            m.try_add(e);
        }
    }
    m
}

/// True iff no edge of `g[subset]` has both endpoints unmatched by `m`.
pub fn is_maximal(m: &Matching, g: &Graph, subset: VertexSet) -> bool {
    let free = subset.difference(m.covered());
    free.iter().all(|v| g.neighbors(v).intersection(free).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    // a1 = 0, a2 = 1, b1 = 2, b2 = 3
    fn path() -> Graph {
        Graph::bipartite(2, 2, [Edge::new(0, 2), Edge::new(1, 2), Edge::new(1, 3)]).unwrap()
    }

    #[test]
    fn greedy_trace() {
        let s = EdgeStream::from_edges([Edge::new(0, 2), Edge::new(0, 3), Edge::new(1, 3)]).unwrap();
        let m = greedy_matching(4, &s, VertexSet::full(4)).unwrap();
        assert_eq!(m.edges(), &[Edge::new(0, 2), Edge::new(1, 3)]);
    }

    #[test]
    fn greedy_empty_cases() {
        let empty = EdgeStream::new();
        assert!(greedy_matching(4, &empty, VertexSet::full(4)).unwrap().is_empty());
        let s = EdgeStream::from_edges([Edge::new(0, 2), Edge::new(1, 3)]).unwrap();
        let allowed: VertexSet = [0, 3].into_iter().collect();
        assert!(greedy_matching(4, &s, allowed).unwrap().is_empty());
    }

    #[test]
    fn greedy_rejects_out_of_range() {
        let s = EdgeStream::from_edges([Edge::new(0, 7)]).unwrap();
        assert_eq!(
            greedy_matching(4, &s, VertexSet::full(4)).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 7, n: 4 }
        );
    }

    #[test]
    fn maximality_on_path() {
        let g = path();
        let all = VertexSet::full(4);
        assert!(!is_maximal(&Matching::from_edges([Edge::new(0, 2)]).unwrap(), &g, all));
        assert!(is_maximal(&Matching::from_edges([Edge::new(1, 2)]).unwrap(), &g, all));
        let lonely: VertexSet = [0, 3].into_iter().collect();
        assert!(is_maximal(&Matching::new(), &g, lonely));
    }
}
