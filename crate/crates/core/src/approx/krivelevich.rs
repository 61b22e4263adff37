use super::{Algorithm, RoundingOutcome};
use crate::error::Result;
use crate::graph::{EdgeCover, EdgeId, NodeId, SignedGraph};
use crate::lp::{solve_exact_with, ExactLpOptions};
use crate::scalar::Scalar;

/// Bipartition of the node set; `side[v]` is true for the second part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side: Vec<bool>,
}

impl Cut {
    pub fn part(&self, second: bool) -> Vec<NodeId> {
        (0..self.side.len() as NodeId).filter(|&v| self.side[v as usize] == second).collect()
    }

    pub fn separates(&self, u: NodeId, v: NodeId) -> bool {
        self.side[u as usize] != self.side[v as usize]
    }
}

/// Local search on the edges `edges` of `g`: move the first node (in id
/// order) whose move increases the cut weight, until no move helps. Every
/// node ends with at least half its incident weight cut.
pub fn local_search_max_cut<W: Scalar>(g: &SignedGraph<W>, edges: &[EdgeId]) -> Cut {
    let n = g.node_count();
    let mut incident: Vec<Vec<(NodeId, W)>> = vec![Vec::new(); n];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        incident[u as usize].push((v, g.weight(e).clone()));
        incident[v as usize].push((u, g.weight(e).clone()));
    }
    let mut side = vec![false; n];
    'search: loop {
        for v in 0..n {
            let (same, across) = incident[v].iter().fold((W::zero(), W::zero()), |(s, a), (u, w)| {
                if side[*u as usize] == side[v] {
                    (s + w.clone(), a)
                } else {
                    (s, a + w.clone())
                }
            });
            if same > across {
                side[v] = !side[v];
                continue 'search;
            }
        }
        break;
    }
    Cut { side }
}

pub fn krivelevich<W: Scalar>(g: &SignedGraph<W>) -> Result<RoundingOutcome<W>> {
    krivelevich_with(g, ExactLpOptions::default())
}

/// Harvest-and-resolve loop followed by a max-cut finish. Only edges lying
/// in some bad triangle take part; the others never need covering. The lower
/// bound is the LP value of the original graph.
pub fn krivelevich_with<W: Scalar>(g: &SignedGraph<W>, opts: ExactLpOptions) -> Result<RoundingOutcome<W>> {
    let half = W::from_ratio(1, 2);
    let mut in_triangle = vec![false; g.edge_count()];
    for t in g.bad_triangles() {
        for e in t.edges {
            in_triangle[e.index()] = true;
        }
    }
    let start: Vec<EdgeId> = g.edge_ids().filter(|e| in_triangle[e.index()]).collect();
    let (mut sub, mut orig) = g.edge_subgraph(&start);
    let mut lp = solve_exact_with(&sub, opts)?;
    let lp_value = lp.value().clone();
    let mut chosen: Vec<EdgeId> = Vec::new();
    let mut iterations = 0;

    while lp.primal.values().iter().any(|x| x.is_zero()) {
        iterations += 1;
        let mut keep = Vec::new();
        for e in sub.edge_ids() {
            let x = lp.primal.value(e);
            if *x >= half {
                chosen.push(orig[e.index()]);
            } else if !x.is_zero() {
                keep.push(e);
            }
        }
        let (next, local) = sub.edge_subgraph(&keep);
        orig = local.iter().map(|e| orig[e.index()]).collect();
        sub = next;
        lp = solve_exact_with(&sub, opts)?;
    }

    let remaining: Vec<EdgeId> = sub.edge_ids().collect();
    let cut = local_search_max_cut(&sub, &remaining);
    for e in remaining {
        let (u, v) = sub.endpoints(e);
        if !cut.separates(u, v) {
            chosen.push(orig[e.index()]);
        }
    }

    let cover = EdgeCover::new(g, chosen)?;
    let mut out = RoundingOutcome::new(g, cover, Algorithm::Krivelevich)?.with_lower_bound(lp_value)?;
    out.iterations = Some(iterations);
    Ok(out)
}
