//! Edge-list text format and versioned JSON documents.
//!
//! Edge lists look like
//!
//! ```text
//! # comment
//! n 6 complete
//! 0 1 +1
//! 1 2 -1 3/2
//! ```
//!
//! The header `n <count> [complete]` comes first. Each edge line is
//! `u v s [w]` with `s` in `{+1, -1}` and an optional weight (integer,
//! fraction or decimal). With `complete`, every unlisted pair is a negative
//! unit-weight edge.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{BttError, Result};
use crate::graph::{Clustering, Completeness, Edge, EdgeCover, EdgeId, GraphBuilder, NodeId, Sign, SignedGraph};
use crate::scalar::Scalar;

pub const SCHEMA_VERSION: u32 = 1;

pub fn parse_edge_list<W: Scalar>(text: &str) -> Result<SignedGraph<W>> {
    let mut builder: Option<GraphBuilder<W>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let perr = |message: String| BttError::Parse { line: line_no, message };
        if tokens[0] == "n" {
            if builder.is_some() {
                return Err(perr("duplicate header".into()));
            }
            let n: usize = tokens
                .get(1)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| perr("header must be `n <count> [complete]`".into()))?;
            let mut b = GraphBuilder::new(n);
            match tokens.get(2) {
                None => {}
                Some(&"complete") => b = b.complete(),
                Some(other) => return Err(perr(format!("unknown header flag `{other}`"))),
            }
            if tokens.len() > 3 {
                return Err(perr("trailing tokens in header".into()));
            }
            builder = Some(b);
            continue;
        }
        let b = builder.as_mut().ok_or_else(|| perr("edge before `n <count>` header".into()))?;
        if !(3..=4).contains(&tokens.len()) {
            return Err(perr(format!("expected `u v s [w]`, got {} tokens", tokens.len())));
        }
        let u: NodeId = tokens[0].parse().map_err(|_| perr(format!("bad node `{}`", tokens[0])))?;
        let v: NodeId = tokens[1].parse().map_err(|_| perr(format!("bad node `{}`", tokens[1])))?;
        let sign = parse_sign(tokens[2]).ok_or_else(|| perr(format!("bad sign `{}`", tokens[2])))?;
        let weight = match tokens.get(3) {
            Some(t) => W::parse_text(t).ok_or_else(|| perr(format!("bad weight `{t}`")))?,
            None => W::one(),
        };
        b.push(u, v, sign, weight);
    }
    let b = builder.ok_or_else(|| BttError::Parse { line: 0, message: "missing `n <count>` header".into() })?;
    b.build()
}

fn parse_sign(t: &str) -> Option<Sign> {
    match t {
        "+1" | "1" | "+" => Some(Sign::Positive),
        "-1" | "-" => Some(Sign::Negative),
        _ => None,
    }
}

/// Writes the edge-list form. Complete graphs list only positive edges and
/// non-unit negative edges.
pub fn write_edge_list<W: Scalar>(g: &SignedGraph<W>) -> String {
    let mut out = String::new();
    let complete = g.is_complete();
    let _ = writeln!(out, "n {}{}", g.node_count(), if complete { " complete" } else { "" });
    let mut edges: Vec<&Edge<W>> = g.edges().iter().collect();
    edges.sort_by_key(|e| (e.u, e.v));
    for e in edges {
        let unit = e.weight == W::one();
        if complete && e.sign == Sign::Negative && unit {
            continue;
        }
        let s = if e.sign == Sign::Positive { "+1" } else { "-1" };
        if unit {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, s);
        } else {
            let _ = writeln!(out, "{} {} {} {}", e.u, e.v, s, e.weight.to_text());
        }
    }
    out
}

/// Unsigned graph in the same layout (`n <count>` then `u v` lines).
pub fn parse_unsigned_edge_list(text: &str) -> Result<(usize, Vec<(NodeId, NodeId)>)> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |message: String| BttError::Parse { line: idx + 1, message };
        let t: Vec<&str> = line.split_whitespace().collect();
        if t[0] == "n" {
            n = Some(t.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| perr("bad header".into()))?);
            continue;
        }
        if t.len() != 2 {
            return Err(perr("expected `u v`".into()));
        }
        let u = t[0].parse().map_err(|_| perr(format!("bad node `{}`", t[0])))?;
        let v = t[1].parse().map_err(|_| perr(format!("bad node `{}`", t[1])))?;
        edges.push((u, v));
    }
    let n = n.ok_or_else(|| BttError::Parse { line: 0, message: "missing `n <count>` header".into() })?;
    Ok((n, edges))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeDoc {
    pub u: NodeId,
    pub v: NodeId,
    pub sign: i8,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphDoc {
    pub schema_version: u32,
    pub n: usize,
    /// `partial`, `complete` or `implicit-negative`.
    pub completeness: String,
    /// Edges in id order.
    pub edges: Vec<EdgeDoc>,
}

impl GraphDoc {
    pub fn from_graph<W: Scalar>(g: &SignedGraph<W>) -> Self {
        GraphDoc {
            schema_version: SCHEMA_VERSION,
            n: g.node_count(),
            completeness: completeness_name(g.completeness()).to_string(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDoc { u: e.u, v: e.v, sign: e.sign.as_i8(), weight: e.weight.to_text() })
                .collect(),
        }
    }

    pub fn to_graph<W: Scalar>(&self) -> Result<SignedGraph<W>> {
        check_version(self.schema_version)?;
        let completeness = match self.completeness.as_str() {
            "partial" => Completeness::Partial,
            "complete" => Completeness::Complete,
            "implicit-negative" => Completeness::ImplicitNegative,
            other => return Err(BttError::input(format!("unknown completeness `{other}`"))),
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let sign = match e.sign {
                    1 => Sign::Positive,
                    -1 => Sign::Negative,
                    s => return Err(BttError::input(format!("bad sign {s}"))),
                };
                let weight = W::parse_text(&e.weight).ok_or_else(|| BttError::input(format!("bad weight `{}`", e.weight)))?;
                Ok(Edge { u: e.u, v: e.v, sign, weight })
            })
            .collect::<Result<Vec<_>>>()?;
        SignedGraph::from_parts(self.n, edges, completeness)
    }
}

pub fn completeness_name(c: Completeness) -> &'static str {
    match c {
        Completeness::Partial => "partial",
        Completeness::Complete => "complete",
        Completeness::ImplicitNegative => "implicit-negative",
    }
}

fn check_version(v: u32) -> Result<()> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(BttError::input(format!("unsupported schema version {v} (expected {SCHEMA_VERSION})")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoverDoc {
    pub schema_version: u32,
    pub ids: Vec<u32>,
    /// Endpoints of each edge in `ids`, in the same order.
    pub pairs: Vec<[NodeId; 2]>,
    pub cost: String,
}

impl CoverDoc {
    pub fn from_cover<W: Scalar>(g: &SignedGraph<W>, c: &EdgeCover<W>) -> Self {
        CoverDoc {
            schema_version: SCHEMA_VERSION,
            ids: c.edges().iter().map(|e| e.0).collect(),
            pairs: c
                .edges()
                .iter()
                .map(|&e| {
                    let (u, v) = g.endpoints(e);
                    [u, v]
                })
                .collect(),
            cost: c.cost().to_text(),
        }
    }

    /// Resolves the cover against `g` by endpoint pairs.
    pub fn to_cover<W: Scalar>(&self, g: &SignedGraph<W>) -> Result<EdgeCover<W>> {
        check_version(self.schema_version)?;
        let ids = self
            .pairs
            .iter()
            .map(|&[u, v]| {
                g.edge_between(u, v).ok_or_else(|| BttError::input(format!("cover edge ({u}, {v}) is not an edge of the graph")))
            })
            .collect::<Result<Vec<EdgeId>>>()?;
        EdgeCover::new(g, ids)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClusteringDoc {
    pub schema_version: u32,
    pub labels: Vec<u32>,
    pub clusters: usize,
}

impl ClusteringDoc {
    pub fn from_clustering(p: &Clustering) -> Self {
        ClusteringDoc { schema_version: SCHEMA_VERSION, labels: p.labels().to_vec(), clusters: p.cluster_count() }
    }

    pub fn to_clustering(&self) -> Result<Clustering> {
        check_version(self.schema_version)?;
        Ok(Clustering::from_labels(&self.labels))
    }
}
