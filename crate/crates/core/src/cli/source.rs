//! Graph sources: files in either format, and `--gen` specs.

use std::io::Read as _;
use std::path::Path;

use serde_json::Value;

use crate::error::{BttError, Result};
use crate::generators::{
    gen_figure2, gen_hardness_reduction, gen_hexagram, gen_integrality_gap, gen_random, gen_vc_reduction, GadgetMap,
    PositiveSpec, RandomSpec, TwoCnfFormula, Validity, WeightSpec,
};
use crate::graph::SignedGraph;
use crate::io::{parse_edge_list, parse_unsigned_edge_list, GraphDoc};

/// Parsed `--gen` argument.
#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    Figure2,
    Gap(usize),
    Hexagram,
    Random(RandomSpec),
    VertexCover(String),
    Reduction { path: String, relaxed: bool },
}

impl GenSpec {
    /// Accepts `fig2`, `gap:N`, `hexagram`,
    /// `random:n=N,p=P[,m=M][,complete][,density=D][,weights=int:K|frac:K]`,
    /// `vc:PATH` and `reduction:PATH[,relaxed]`.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        match kind {
            "fig2" => Ok(GenSpec::Figure2),
            "hexagram" => Ok(GenSpec::Hexagram),
            "gap" => rest
                .parse()
                .map(GenSpec::Gap)
                .map_err(|_| BttError::input(format!("`gap:N` needs an integer, got `{rest}`"))),
            "vc" if !rest.is_empty() => Ok(GenSpec::VertexCover(rest.to_string())),
            "reduction" if !rest.is_empty() => {
                let (path, flag) = match rest.rsplit_once(',') {
                    Some((p, "relaxed")) => (p, true),
                    Some((p, "strict")) => (p, false),
                    _ => (rest, false),
                };
                Ok(GenSpec::Reduction { path: path.to_string(), relaxed: flag })
            }
            "random" => parse_random(rest).map(GenSpec::Random),
            _ => Err(BttError::input(format!("unknown generator `{text}`"))),
        }
    }

    /// Builds the graph; `seed` only matters for random graphs.
    pub fn build(&self, seed: u64) -> Result<(SignedGraph, Option<GadgetMap>)> {
        Ok(match self {
            GenSpec::Figure2 => (gen_figure2(), None),
            GenSpec::Gap(n) => (gen_integrality_gap(*n)?, None),
            GenSpec::Hexagram => {
                let (g, map) = gen_hexagram();
                (g, Some(map))
            }
            GenSpec::Random(spec) => (gen_random(spec, seed)?, None),
            GenSpec::VertexCover(path) => {
                let (n, edges) = parse_unsigned_edge_list(&read_source(path)?)?;
                (gen_vc_reduction(n, &edges)?, None)
            }
            GenSpec::Reduction { path, relaxed } => {
                let f = TwoCnfFormula::parse_dimacs(&read_source(path)?)?;
                let mode = if *relaxed { Validity::Relaxed } else { Validity::Strict };
                let (g, map) = gen_hardness_reduction(&f, mode)?;
                (g, Some(map))
            }
        })
    }
}

fn parse_random(rest: &str) -> Result<RandomSpec> {
    let mut n = None;
    let mut positive = None;
    let mut complete = false;
    let mut density = None;
    let mut weights = WeightSpec::Unit;
    for item in rest.split(',').filter(|s| !s.is_empty()) {
        let bad = || BttError::input(format!("bad random generator option `{item}`"));
        match item.split_once('=') {
            None if item == "complete" => complete = true,
            None => return Err(bad()),
            Some(("n", v)) => n = Some(v.parse().map_err(|_| bad())?),
            Some(("p", v)) => positive = Some(PositiveSpec::Probability(v.parse().map_err(|_| bad())?)),
            Some(("m", v)) => positive = Some(PositiveSpec::Count(v.parse().map_err(|_| bad())?)),
            Some(("density", v)) => density = Some(v.parse().map_err(|_| bad())?),
            Some(("weights", v)) => {
                weights = match v.split_once(':') {
                    None if v == "unit" => WeightSpec::Unit,
                    Some(("int", k)) => WeightSpec::Int(k.parse().map_err(|_| bad())?),
                    Some(("frac", k)) => WeightSpec::Frac(k.parse().map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
            }
            Some(_) => return Err(bad()),
        }
    }
    let n = n.ok_or_else(|| BttError::input("random generator needs `n=`"))?;
    let positive = positive.unwrap_or(PositiveSpec::Probability(0.5));
    if complete && density.is_some() {
        return Err(BttError::input("`complete` and `density=` are exclusive"));
    }
    Ok(RandomSpec { n, positive, complete, density: if complete { 1.0 } else { density.unwrap_or(0.5) }, weights })
}

/// Reads a path, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(Path::new(path))
            .map_err(|e| BttError::input(format!("cannot read `{path}`: {e}")))
    }
}

/// Graph from edge-list text, a graph document, or any result document
/// carrying a `graph` field.
pub fn parse_graph_text(text: &str) -> Result<SignedGraph> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text)?;
        graph_from_value(&v)
    } else {
        parse_edge_list(text)
    }
}

pub fn graph_from_value(v: &Value) -> Result<SignedGraph> {
    let doc = v.get("graph").unwrap_or(v);
    let doc: GraphDoc = serde_json::from_value(doc.clone())?;
    doc.to_graph()
}
