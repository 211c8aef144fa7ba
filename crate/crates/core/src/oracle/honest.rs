use super::{insert_independent, Commitment, Oracle, OracleError, StructureGraph};
use crate::graph::{
    greedy::greedy_over, max_matching_bipartite, max_matching_general, EdgeSet, EdgeStream, Graph, GraphError, Layout,
    Matching, VertexSet,
};

/// Answers every query with greedy over a fixed graph's fixed edge order.
///
/// Used to test players on ordinary inputs. The graph need not have a perfect
/// matching, so the declared matching is merely maximum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HonestOracle {
    layout: Layout,
    graph: Graph,
    stream: EdgeStream,
}

impl HonestOracle {
    /// `stream` must list every edge of `graph` exactly once.
    pub fn new(layout: Layout, graph: Graph, stream: EdgeStream) -> Result<Self, OracleError> {
        if layout.n != graph.n() || layout.bipartition != graph.bipartition() {
            return Err(OracleError::Config("layout does not match the graph".into()));
        }
        if stream.edge_set() != graph.edges() {
            return Err(OracleError::Config("stream must list exactly the graph's edges".into()));
        }
        Ok(HonestOracle { layout, graph, stream })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn stream(&self) -> &EdgeStream {
        &self.stream
    }

    pub fn maximum_matching(&self) -> Result<Matching, GraphError> {
        if self.graph.bipartition().is_some() {
            max_matching_bipartite(&self.graph)
        } else {
            max_matching_general(&self.graph)
        }
    }

    fn non_edges(&self) -> EdgeSet {
        let mut all = EdgeSet::new();
        insert_independent(self.layout.bipartition, VertexSet::full(self.layout.n), &mut all);
        all.iter().filter(|&e| !self.graph.has_edge(e)).collect()
    }
}

impl Oracle for HonestOracle {
    fn layout(&self) -> Layout {
        self.layout
    }

    fn respond(&mut self, query: VertexSet) -> Result<Matching, OracleError> {
        if let Some(v) = query.difference(self.layout.vertices()).first() {
            return Err(OracleError::QueryOutOfRange { vertex: v, n: self.layout.n });
        }
        Ok(greedy_over(self.stream.edges().iter().copied(), query))
    }

    /// The fixed stream does not start with the learned edges, so pre-matching
    /// them could change the answer.
    fn accepts_reduced_queries(&self) -> bool {
        false
    }

    fn commitment(&self) -> Result<Commitment, OracleError> {
        Ok(Commitment {
            final_stream: self.stream.clone(),
            non_edges: self.non_edges(),
            perfect_matching: self.maximum_matching()?,
        })
    }

    fn structure(&self) -> StructureGraph {
        StructureGraph {
            n: self.layout.n,
            bipartition: self.layout.bipartition,
            edges: self.graph.edges().clone(),
            non_edges: self.non_edges(),
        }
    }

    fn name(&self) -> String {
        "honest".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn answers_are_greedy_over_the_fixed_stream() {
        // a1-b1, a2-b1, a2-b2 streamed with a2b1 first.
        let edges = [Edge::new(1, 2), Edge::new(0, 2), Edge::new(1, 3)];
        let g = Graph::bipartite(2, 2, edges).unwrap();
        let s = EdgeStream::from_edges(edges).unwrap();
        let mut o = HonestOracle::new(Layout::bipartite(2, 2), g, s).unwrap();
        assert_eq!(o.respond(VertexSet::full(4)).unwrap().edges(), &[Edge::new(1, 2)]);
        let q: VertexSet = [0, 2].into_iter().collect();
        assert_eq!(o.respond(q).unwrap().edges(), &[Edge::new(0, 2)]);
        assert_eq!(o.structure().non_edges.iter().collect::<Vec<_>>(), vec![Edge::new(0, 3)]);
        assert_eq!(o.commitment().unwrap().perfect_matching.len(), 2);
    }

    #[test]
    fn stream_must_match_graph() {
        let g = Graph::bipartite(1, 1, [Edge::new(0, 1)]).unwrap();
        assert!(HonestOracle::new(Layout::bipartite(1, 1), g, EdgeStream::new()).is_err());
    }
}
