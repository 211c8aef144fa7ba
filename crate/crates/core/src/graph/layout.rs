use std::fmt::Write as _;

use super::{Bipartition, Edge, Matching, VertexSet, MAX_VERTICES};

/// How vertices are named in transcripts and on the console.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Naming {
    /// `a1..` for the A side, `b1..` for the B side.
    Ab,
    /// `u1..` for the first half, `v1..` for the second half (bomb graphs).
    Uv,
    /// Plain integers `0..n`.
    Index,
}

/// The vertex set of a game: its size, optional sides and naming scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    pub n: usize,
    pub bipartition: Option<Bipartition>,
    pub naming: Naming,
}

impl Layout {
    pub fn bipartite(a: usize, b: usize) -> Self {
        assert!(a + b <= MAX_VERTICES);
        Layout { n: a + b, bipartition: Some(Bipartition::new(a, b)), naming: Naming::Ab }
    }

    /// `n/2` independent vertices `u_i` followed by `n/2` clique vertices `v_i`.
    pub fn bomb(n: usize) -> Self {
        assert!(n.is_multiple_of(2) && n <= MAX_VERTICES);
        Layout { n, bipartition: None, naming: Naming::Uv }
    }

    pub fn indexed(n: usize, bipartition: Option<Bipartition>) -> Self {
        assert!(n <= MAX_VERTICES);
        Layout { n, bipartition, naming: Naming::Index }
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    pub fn name(&self, v: usize) -> String {
        match (self.naming, self.bipartition) {
            (Naming::Ab, Some(bp)) if v < bp.a => format!("a{}", v + 1),
            (Naming::Ab, Some(bp)) => format!("b{}", v - bp.a + 1),
            (Naming::Uv, _) if v < self.n / 2 => format!("u{}", v + 1),
            (Naming::Uv, _) => format!("v{}", v - self.n / 2 + 1),
            _ => v.to_string(),
        }
    }

    pub fn parse_vertex(&self, token: &str) -> Option<usize> {
        let numbered = |prefix: char, count: usize, offset: usize| -> Option<usize> {
            let i: usize = token.strip_prefix(prefix)?.parse().ok()?;
            (1..=count).contains(&i).then(|| offset + i - 1)
        };
        match (self.naming, self.bipartition) {
            (Naming::Ab, Some(bp)) => numbered('a', bp.a, 0).or_else(|| numbered('b', bp.b, bp.a)),
            (Naming::Uv, _) => {
                let h = self.n / 2;
                numbered('u', h, 0).or_else(|| numbered('v', h, h))
            }
            _ => token.parse().ok().filter(|&v| v < self.n),
        }
    }

    /// Space-separated names, or `{}` for the empty set.
    pub fn format_set(&self, set: VertexSet) -> String {
        if set.is_empty() {
            return "{}".to_string();
        }
        let names: Vec<String> = set.iter().map(|v| self.name(v)).collect();
        names.join(" ")
    }

    pub fn format_edge(&self, e: Edge) -> String {
        match self.naming {
            Naming::Index => format!("{}-{}", e.u(), e.v()),
            _ => format!("{}{}", self.name(e.u()), self.name(e.v())),
        }
    }

    pub fn format_edges<I: IntoIterator<Item = Edge>>(&self, edges: I) -> String {
        let mut out = String::new();
        for (i, e) in edges.into_iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", self.format_edge(e));
        }
        if out.is_empty() {
            out.push_str("{}");
        }
        out
    }

    pub fn format_matching(&self, m: &Matching) -> String {
        self.format_edges(m.iter())
    }
}
