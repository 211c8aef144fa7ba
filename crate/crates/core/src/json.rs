//! JSON forms of transcripts and solver reports.
//!
//! Vertices are written by name (`a1`, `v3`, ...) or, for indexed layouts, as
//! plain numbers. Edges are two-element arrays.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{format_ratio, RoundRecord, Transcript};
use crate::graph::{Bipartition, Edge, EdgeSet, EdgeStream, Layout, Matching, Naming, VertexSet, MAX_VERTICES};
use crate::solver::SolveReport;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid transcript: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Name {
    Index(usize),
    Named(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum NamingJson {
    Ab,
    Uv,
    Index,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RoundJson {
    query: Vec<Name>,
    response: Vec<[Name; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TranscriptJson {
    n: usize,
    bipartition: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    naming: Option<NamingJson>,
    rounds: Vec<RoundJson>,
    stream: Vec<[Name; 2]>,
    non_edges: Vec<[Name; 2]>,
    perfect_matching: Vec<[Name; 2]>,
}

fn name(layout: &Layout, v: usize) -> Name {
    match layout.naming {
        Naming::Index => Name::Index(v),
        _ => Name::Named(layout.name(v)),
    }
}

fn edge_json(layout: &Layout, e: Edge) -> [Name; 2] {
    [name(layout, e.u()), name(layout, e.v())]
}

pub fn transcript_to_json(t: &Transcript) -> String {
    let l = &t.layout;
    let edges = |it: &mut dyn Iterator<Item = Edge>| it.map(|e| edge_json(l, e)).collect::<Vec<_>>();
    let doc = TranscriptJson {
        n: l.n,
        bipartition: l.bipartition.map(|bp| [bp.a, bp.b]),
        naming: Some(match l.naming {
            Naming::Ab => NamingJson::Ab,
            Naming::Uv => NamingJson::Uv,
            Naming::Index => NamingJson::Index,
        }),
        rounds: t
            .rounds
            .iter()
            .map(|r| RoundJson {
                query: r.query.iter().map(|v| name(l, v)).collect(),
                response: edges(&mut r.response.iter()),
            })
            .collect(),
        stream: edges(&mut t.final_stream.edges().iter().copied()),
        non_edges: edges(&mut t.non_edges.iter()),
        perfect_matching: edges(&mut t.perfect_matching.iter()),
    };
    serde_json::to_string_pretty(&doc).expect("transcripts always serialize")
}

fn infer_naming(doc: &TranscriptJson) -> Naming {
    if let Some(n) = doc.naming {
        return match n {
            NamingJson::Ab => Naming::Ab,
            NamingJson::Uv => Naming::Uv,
            NamingJson::Index => Naming::Index,
        };
    }
    let first = doc
        .rounds
        .iter()
        .flat_map(|r| r.query.iter().chain(r.response.iter().flatten()))
        .chain(doc.stream.iter().flatten())
        .next();
    match first {
        Some(Name::Index(_)) => Naming::Index,
        _ if doc.bipartition.is_some() => Naming::Ab,
        Some(Name::Named(_)) => Naming::Uv,
        None => Naming::Index,
    }
}

pub fn transcript_from_json(text: &str) -> Result<Transcript, JsonError> {
    let doc: TranscriptJson = serde_json::from_str(text)?;
    let invalid = |s: String| JsonError::Invalid(s);
    if doc.n > MAX_VERTICES {
        return Err(invalid(format!("{} vertices exceed the capacity of {MAX_VERTICES}", doc.n)));
    }
    let bipartition = match doc.bipartition {
        Some([a, b]) if a + b == doc.n => Some(Bipartition::new(a, b)),
        Some([a, b]) => return Err(invalid(format!("sides {a} + {b} do not add up to n = {}", doc.n))),
        None => None,
    };
    let naming = infer_naming(&doc);
    if naming == Naming::Ab && bipartition.is_none() {
        return Err(invalid("a1/b1 names need a bipartition".into()));
    }
    if naming == Naming::Uv && doc.n % 2 == 1 {
        return Err(invalid("u/v names need an even n".into()));
    }
    let layout = Layout { n: doc.n, bipartition, naming };

    let vertex = |x: &Name| -> Result<usize, JsonError> {
        let v = match (x, naming) {
            (Name::Index(i), Naming::Index) => Some(*i).filter(|&i| i < doc.n),
            (Name::Named(s), Naming::Ab | Naming::Uv) => layout.parse_vertex(s),
            _ => None,
        };
        v.ok_or_else(|| invalid(format!("unknown vertex {x:?}")))
    };
    let edge = |[x, y]: &[Name; 2]| -> Result<Edge, JsonError> {
        Edge::try_new(vertex(x)?, vertex(y)?).map_err(|e| invalid(e.to_string()))
    };
    let matching = |es: &[[Name; 2]]| -> Result<Matching, JsonError> {
        let edges = es.iter().map(edge).collect::<Result<Vec<_>, _>>()?;
        Matching::from_edges(edges).map_err(|e| invalid(e.to_string()))
    };

    let mut rounds = Vec::with_capacity(doc.rounds.len());
    for r in &doc.rounds {
        let query = r.query.iter().map(vertex).collect::<Result<VertexSet, _>>()?;
        rounds.push(RoundRecord { query, response: matching(&r.response)? });
    }
    let mut final_stream = EdgeStream::new();
    for e in &doc.stream {
        final_stream.push(edge(e)?).map_err(|e| invalid(e.to_string()))?;
    }
    let non_edges = doc.non_edges.iter().map(edge).collect::<Result<EdgeSet, _>>()?;
    let perfect_matching = matching(&doc.perfect_matching)?;
    Ok(Transcript { layout, rounds, final_stream, non_edges, perfect_matching })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReportJson {
    pub oracle: String,
    pub n: usize,
    pub rounds: usize,
    pub best_value: usize,
    pub best_ratio: String,
    pub witness: Vec<Vec<Name>>,
    pub nodes_expanded: u64,
    pub canonicalization: String,
}

impl From<&SolveReport> for SolveReportJson {
    fn from(r: &SolveReport) -> Self {
        SolveReportJson {
            oracle: r.oracle.clone(),
            n: r.layout.n,
            rounds: r.rounds,
            best_value: r.best_value,
            best_ratio: format_ratio(&r.best_ratio),
            witness: r.witness.iter().map(|q| q.iter().map(|v| name(&r.layout, v)).collect()).collect(),
            nodes_expanded: r.nodes_expanded,
            canonicalization: r.canonicalization.clone(),
        }
    }
}

pub fn report_to_json(r: &SolveReport) -> String {
    serde_json::to_string_pretty(&SolveReportJson::from(r)).expect("reports always serialize")
}
