//! Graph, matching and stream primitives.
//!
//! Everything here works on small vertex sets (at most [`MAX_VERTICES`]
//! vertices) so that vertex subsets are single machine words and adjacency is
//! a fixed array of bitmasks. That keeps cloning cheap, which the minimax
//! solver relies on.

mod bipartite;
mod general;
pub(crate) mod greedy;
mod layout;

use std::fmt;

use thiserror::Error;

pub use bipartite::{
    max_matching_bipartite, max_matching_on_sides, perfect_matching_avoiding, perfect_matching_avoiding_sets,
};
pub use general::{max_matching_general, max_matching_general_with_limit, GENERAL_MATCHING_LIMIT};
pub use greedy::{greedy_matching, is_maximal};
pub use layout::{Layout, Naming};

/// Capacity of a [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has {n} vertices, capacity is {capacity}")]
    TooManyVertices { n: usize, capacity: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("edge {0} joins two vertices on the same side")]
    SameSideEdge(Edge),
    #[error("edges {0} and {1} share an endpoint")]
    NotAMatching(Edge, Edge),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("sides have {a} and {b} vertices, a perfect matching needs equal sides")]
    UnequalSides { a: usize, b: usize },
    #[error("general matching is limited to {limit} vertices, got {n}")]
    SizeLimit { n: usize, limit: usize },
}

/// A subset of `0..64`, one bit per vertex.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// The set `start..end`.
    pub fn range(start: usize, end: usize) -> Self {
        if start >= end {
            return VertexSet::EMPTY;
        }
        VertexSet(Self::full(end).0 & !Self::full(start).0)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Highest member, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    /// The lowest `k` members (all of them when `k >= len`).
    pub fn lowest(self, k: usize) -> Self {
        self.iter().take(k).collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An undirected edge, endpoints stored smaller-first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: u8,
    v: u8,
}

impl Edge {
    /// Panics on a self-loop or an endpoint beyond [`MAX_VERTICES`]; use
    /// [`Edge::try_new`] for untrusted input.
    pub fn new(u: usize, v: usize) -> Self {
        Self::try_new(u, v).expect("invalid edge")
    }

    pub fn try_new(u: usize, v: usize) -> Result<Self, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        if hi >= MAX_VERTICES {
            return Err(GraphError::VertexOutOfRange { vertex: hi, n: MAX_VERTICES });
        }
        Ok(Edge { u: lo as u8, v: hi as u8 })
    }

    pub fn u(self) -> usize {
        self.u as usize
    }

    pub fn v(self) -> usize {
        self.v as usize
    }

    pub fn endpoints(self) -> VertexSet {
        VertexSet((1u64 << self.u) | (1u64 << self.v))
    }

    pub fn touches(self, w: usize) -> bool {
        self.u() == w || self.v() == w
    }

    pub fn other(self, w: usize) -> usize {
        if self.u() == w {
            self.v()
        } else {
            self.u()
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A set of edges stored as a symmetric adjacency bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    adj: [u64; MAX_VERTICES],
    len: usize,
}

impl Default for EdgeSet {
    fn default() -> Self {
        EdgeSet { adj: [0; MAX_VERTICES], len: 0 }
    }
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` if the edge was not present.
    pub fn insert(&mut self, e: Edge) -> bool {
        if self.contains(e) {
            return false;
        }
        self.adj[e.u()] |= 1u64 << e.v();
        self.adj[e.v()] |= 1u64 << e.u();
        self.len += 1;
        true
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        if !self.contains(e) {
            return false;
        }
        self.adj[e.u()] &= !(1u64 << e.v());
        self.adj[e.v()] &= !(1u64 << e.u());
        self.len -= 1;
        true
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.adj[e.u()] >> e.v() & 1 == 1
    }

    pub fn contains_pair(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Edges in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, &row)| VertexSet(row & !VertexSet::full(u + 1).0).iter().map(move |v| Edge::new(u, v)))
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.adj.iter().zip(other.adj.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.adj.iter().zip(other.adj.iter()).all(|(a, b)| a & b == 0)
    }

    /// First edge (lexicographically) present in both sets.
    pub fn first_common(&self, other: &EdgeSet) -> Option<Edge> {
        for (u, (a, b)) in self.adj.iter().zip(other.adj.iter()).enumerate() {
            let common = VertexSet(a & b & !VertexSet::full(u + 1).0);
            if let Some(v) = common.first() {
                return Some(Edge::new(u, v));
            }
        }
        None
    }

    pub fn extend_from(&mut self, other: &EdgeSet) {
        for e in other.iter() {
            self.insert(e);
        }
    }

    /// Every pair inside `left × right` (or every pair inside `left` when
    /// `right` is `None`).
    pub fn insert_biclique(&mut self, left: VertexSet, right: Option<VertexSet>) {
        match right {
            Some(right) => {
                for u in left {
                    for v in right.difference(VertexSet::singleton(u)) {
                        self.insert(Edge::new(u, v));
                    }
                }
            }
            None => {
                for u in left {
                    for v in left.difference(VertexSet::full(u + 1)) {
                        self.insert(Edge::new(u, v));
                    }
                }
            }
        }
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut s = EdgeSet::new();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

/// Sides of a bipartite vertex set: `A = 0..a`, `B = a..a+b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Bipartition {
    pub fn new(a: usize, b: usize) -> Self {
        Bipartition { a, b }
    }

    pub fn n(self) -> usize {
        self.a + self.b
    }

    pub fn side(self, v: usize) -> Side {
        if v < self.a {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn a_side(self) -> VertexSet {
        VertexSet::full(self.a)
    }

    pub fn b_side(self) -> VertexSet {
        VertexSet::range(self.a, self.a + self.b)
    }

    pub fn crosses(self, e: Edge) -> bool {
        self.side(e.u()) != self.side(e.v())
    }
}

/// An ordered edge sequence without duplicates.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeStream {
    edges: Vec<Edge>,
    members: EdgeSet,
}

impl EdgeStream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Result<Self, GraphError> {
        let mut s = EdgeStream::new();
        for e in edges {
            s.push(e)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, e: Edge) -> Result<(), GraphError> {
        if !self.members.insert(e) {
            return Err(GraphError::DuplicateEdge(e));
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.members.contains(e)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> &EdgeSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl fmt::Debug for EdgeStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.edges.iter()).finish()
    }
}

const UNMATCHED: u8 = u8::MAX;

/// Vertex-disjoint edges plus the partner index they induce.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<Edge>,
    mate: [u8; MAX_VERTICES],
}

impl Default for Matching {
    fn default() -> Self {
        Matching { edges: Vec::new(), mate: [UNMATCHED; MAX_VERTICES] }
    }
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a matching, rejecting edges that share an endpoint.
    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Result<Self, GraphError> {
        let mut m = Matching::new();
        for e in edges {
            if m.contains(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
            if !m.try_add(e) {
                let clash =
                    m.edges.iter().copied().find(|f| f.touches(e.u()) || f.touches(e.v())).expect("clashing edge");
                return Err(GraphError::NotAMatching(clash, e));
            }
        }
        Ok(m)
    }

    /// Adds `e` if both endpoints are free. Edges stay sorted.
    pub fn try_add(&mut self, e: Edge) -> bool {
        if self.is_matched(e.u()) || self.is_matched(e.v()) {
            return false;
        }
        self.mate[e.u()] = e.v() as u8;
        self.mate[e.v()] = e.u() as u8;
        let pos = self.edges.binary_search(&e).unwrap_err();
        self.edges.insert(pos, e);
        true
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.mate[v] != UNMATCHED
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.is_matched(v).then(|| self.mate[v] as usize)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.mate[e.u()] == e.v() as u8
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices covered by the matching.
    pub fn covered(&self) -> VertexSet {
        self.edges.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(e.endpoints()))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.edges.iter()).finish()
    }
}

/// A simple graph on `0..n`, optionally bipartite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    bipartition: Option<Bipartition>,
    edges: EdgeSet,
}

impl Graph {
    pub fn new<I: IntoIterator<Item = Edge>>(
        n: usize,
        bipartition: Option<Bipartition>,
        edges: I,
    ) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n, capacity: MAX_VERTICES });
        }
        if let Some(bp) = bipartition {
            assert_eq!(bp.n(), n, "bipartition must cover the vertex set");
        }
        let mut set = EdgeSet::new();
        for e in edges {
            if e.v() >= n {
                return Err(GraphError::VertexOutOfRange { vertex: e.v(), n });
            }
            if let Some(bp) = bipartition {
                if !bp.crosses(e) {
                    return Err(GraphError::SameSideEdge(e));
                }
            }
            set.insert(e);
        }
        Ok(Graph { n, bipartition, edges: set })
    }

    pub fn bipartite<I: IntoIterator<Item = Edge>>(a: usize, b: usize, edges: I) -> Result<Self, GraphError> {
        Graph::new(a + b, Some(Bipartition::new(a, b)), edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bipartition(&self) -> Option<Bipartition> {
        self.bipartition
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.edges.neighbors(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [1, 5, 9].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.last(), Some(9));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 5, 9]);
        assert_eq!(s.lowest(2), [1, 5].into_iter().collect());
        assert_eq!(VertexSet::range(2, 5), [2, 3, 4].into_iter().collect());
        assert_eq!(VertexSet::full(64).len(), 64);
        assert!(VertexSet::EMPTY.is_subset(s));
    }

    #[test]
    fn edge_is_order_insensitive() {
        assert_eq!(Edge::new(3, 1), Edge::new(1, 3));
        assert_eq!(Edge::new(3, 1).u(), 1);
        assert!(Edge::try_new(2, 2).is_err());
    }

    #[test]
    fn stream_rejects_duplicates() {
        let err = EdgeStream::from_edges([Edge::new(0, 1), Edge::new(1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge(Edge::new(0, 1)));
    }

    #[test]
    fn matching_rejects_shared_endpoints() {
        let err = Matching::from_edges([Edge::new(0, 1), Edge::new(1, 2)]).unwrap_err();
        assert!(matches!(err, GraphError::NotAMatching(..)));
        let m = Matching::from_edges([Edge::new(2, 3), Edge::new(0, 1)]).unwrap();
        assert_eq!(m.edges(), &[Edge::new(0, 1), Edge::new(2, 3)]);
        assert_eq!(m.partner(3), Some(2));
        assert_eq!(m.partner(4), None);
    }

    #[test]
    fn bipartite_graph_rejects_same_side_edges() {
        assert_eq!(Graph::bipartite(2, 2, [Edge::new(0, 1)]).unwrap_err(), GraphError::SameSideEdge(Edge::new(0, 1)));
        assert!(matches!(
            Graph::bipartite(2, 2, [Edge::new(0, 4)]),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn edge_set_biclique() {
        let mut f = EdgeSet::new();
        f.insert_biclique([0, 1].into_iter().collect(), Some([2, 3].into_iter().collect()));
        assert_eq!(f.len(), 4);
        let mut c = EdgeSet::new();
        c.insert_biclique([0, 1, 2].into_iter().collect(), None);
        assert_eq!(c.len(), 3);
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
    }
}
