//! Hexagram gadgets and the 2CNF reduction built from them.
//!
//! A hexagram has an inner 6-cycle `c1..c6` and six crowns `z1..z6`; tooth
//! `i` is the positive triangle on `c_i, c_{i+1}, z_i` (indices mod 6). Its
//! parity is the parity of `i`. Hexagram `j` occupies nodes `12j..12j+5`
//! (inner) and `12j+6..12j+11` (crowns); clause `l` is node `12n + l`.

use serde::{Deserialize, Serialize};

use super::cnf::{TwoCnfFormula, Validity};
use crate::error::{BttError, Result};
use crate::graph::{EdgeCover, EdgeId, NodeId, SignedGraph};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hexagram {
    pub inner: [NodeId; 6],
    /// `crowns[i]` is `z_{i+1}`.
    pub crowns: [NodeId; 6],
}

impl Hexagram {
    fn at(base: NodeId) -> Self {
        Hexagram { inner: std::array::from_fn(|i| base + i as NodeId), crowns: std::array::from_fn(|i| base + 6 + i as NodeId) }
    }

    /// Node triple of tooth `i` (1-based, as in `z_i`).
    pub fn tooth(&self, i: usize) -> [NodeId; 3] {
        [self.inner[i - 1], self.inner[i % 6], self.crowns[i - 1]]
    }

    /// The 18 positive pairs: inner cycle plus two spokes per crown.
    pub fn positive_pairs(&self) -> Vec<(NodeId, NodeId)> {
        (1..=6)
            .flat_map(|i| {
                let [a, b, z] = self.tooth(i);
                [(a, b), (a, z), (b, z)]
            })
            .collect()
    }

    /// Node pairs of the three teeth with the given parity (9 pairs).
    pub fn teeth_pairs(&self, even: bool) -> Vec<(NodeId, NodeId)> {
        (1..=6)
            .filter(|i| (i % 2 == 0) == even)
            .flat_map(|i| {
                let [a, b, z] = self.tooth(i);
                [(a, b), (a, z), (b, z)]
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseGadget {
    pub node: NodeId,
    /// Crown joined to each literal, in clause order.
    pub crowns: [NodeId; 2],
    /// Crown index (1-based) of each literal inside its hexagram.
    pub crown_index: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMap {
    pub hexagrams: Vec<Hexagram>,
    pub clauses: Vec<ClauseGadget>,
    /// False for formulas accepted only in relaxed mode.
    pub theorem_mode: bool,
}

/// A lone hexagram as a complete signed graph on 12 nodes.
pub fn gen_hexagram<W: Scalar>() -> (SignedGraph<W>, GadgetMap) {
    let h = Hexagram::at(0);
    let g = SignedGraph::complete_from_positive(12, h.positive_pairs()).expect("hexagram is well formed");
    (g, GadgetMap { hexagrams: vec![h], clauses: Vec::new(), theorem_mode: true })
}

/// Builds the reduction graph of `f`, validated under `mode`.
pub fn gen_hardness_reduction<W: Scalar>(f: &TwoCnfFormula, mode: Validity) -> Result<(SignedGraph<W>, GadgetMap)> {
    f.validate(mode)?;
    let n = f.var_count() as usize;
    let hexagrams: Vec<Hexagram> = (0..n).map(|j| Hexagram::at(12 * j as NodeId)).collect();
    let mut positive: Vec<(NodeId, NodeId)> = hexagrams.iter().flat_map(Hexagram::positive_pairs).collect();
    let mut used = vec![[false; 6]; n];
    let mut clauses = Vec::with_capacity(f.clauses().len());
    for (l, clause) in f.clauses().iter().enumerate() {
        let node = (12 * n + l) as NodeId;
        let mut crowns = [0; 2];
        let mut crown_index = [0; 2];
        for (k, lit) in clause.iter().enumerate() {
            let v = lit.var as usize;
            // negated → odd crowns z1, z3, z5; positive → even crowns z2, z4, z6
            let start = if lit.negated { 1 } else { 2 };
            let i = (start..=6)
                .step_by(2)
                .find(|&i| !used[v][i - 1])
                .ok_or_else(|| BttError::Internal(format!("no free crown left for variable {}", v + 1)))?;
            used[v][i - 1] = true;
            crowns[k] = hexagrams[v].crowns[i - 1];
            crown_index[k] = i;
            positive.push((node, crowns[k]));
        }
        clauses.push(ClauseGadget { node, crowns, crown_index });
    }
    let g = SignedGraph::complete_from_positive(12 * n + f.clauses().len(), positive)?;
    Ok((g, GadgetMap { hexagrams, clauses, theorem_mode: mode == Validity::Strict }))
}

/// Cover induced by an assignment: even teeth for true variables and odd
/// teeth for false ones, then per clause the clause edges whose crown tooth
/// is not taken (one edge if both teeth are taken).
pub fn consistent_cover<W: Scalar>(
    g: &SignedGraph<W>,
    map: &GadgetMap,
    assignment: &[bool],
) -> Result<EdgeCover<W>> {
    if assignment.len() != map.hexagrams.len() {
        return Err(BttError::input(format!(
            "assignment has {} values for {} variables",
            assignment.len(),
            map.hexagrams.len()
        )));
    }
    let edge = |u: NodeId, v: NodeId| {
        g.edge_between(u, v).ok_or_else(|| BttError::input(format!("pair ({u}, {v}) is not an edge")))
    };
    let mut ids: Vec<EdgeId> = Vec::new();
    for (h, &value) in map.hexagrams.iter().zip(assignment) {
        for (u, v) in h.teeth_pairs(value) {
            ids.push(edge(u, v)?);
        }
    }
    for c in &map.clauses {
        let taken: Vec<bool> = (0..2)
            .map(|k| {
                let var = (c.crowns[k] / 12) as usize;
                (c.crown_index[k] % 2 == 0) == assignment[var]
            })
            .collect();
        match (taken[0], taken[1]) {
            (true, true) => ids.push(edge(c.node, c.crowns[0])?),
            (a, b) => {
                if !a {
                    ids.push(edge(c.node, c.crowns[0])?);
                }
                if !b {
                    ids.push(edge(c.node, c.crowns[1])?);
                }
            }
        }
    }
    EdgeCover::new(g, ids)
}
