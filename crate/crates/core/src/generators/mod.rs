//! Instance families: the integrality-gap clique, the six-node example with a
//! negative 4-cycle, vertex-cover and 2CNF reductions, and seeded random
//! signed graphs.

mod cnf;
mod gadgets;
mod random;

pub use cnf::{Literal, TwoCnfFormula, Validity};
pub use gadgets::{consistent_cover, gen_hardness_reduction, gen_hexagram, ClauseGadget, GadgetMap, Hexagram};
pub use random::{gen_random, PositiveSpec, RandomSpec, WeightSpec};

use crate::error::{BttError, Result};
use crate::graph::{GraphBuilder, NodeId, Sign, SignedGraph};
use crate::scalar::Scalar;

/// Negative clique on nodes `1..=n` plus an apex `0` joined positively to all
/// of them. LP value `n/2`, integral optimum `n - 1`.
pub fn gen_integrality_gap<W: Scalar>(n: usize) -> Result<SignedGraph<W>> {
    if n < 2 {
        return Err(BttError::input(format!("clique size must be at least 2, got {n}")));
    }
    SignedGraph::complete_from_fn(n + 1, |u, _| if u == 0 { Sign::Positive } else { Sign::Negative })
}

/// Nodes `a..f = 0..5`; negative edges form the 4-cycle `b-c-d-e`, all other
/// pairs are positive.
pub fn gen_figure2<W: Scalar>() -> SignedGraph<W> {
    SignedGraph::complete_from_fn(6, |u, v| match (u, v) {
        (1, 2) | (2, 3) | (3, 4) | (1, 4) => Sign::Negative,
        _ => Sign::Positive,
    })
    .expect("fixed instance is well formed")
}

/// Node letters for the six-node example.
pub const FIGURE2_LABELS: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

/// Original edges become negative; a new node `n` is joined positively to
/// every original node. Non-adjacent original pairs stay absent.
pub fn gen_vc_reduction<W: Scalar>(n: usize, edges: &[(NodeId, NodeId)]) -> Result<SignedGraph<W>> {
    let apex = n as NodeId;
    let mut b = GraphBuilder::new(n + 1);
    for &(u, v) in edges {
        if u as usize >= n || v as usize >= n {
            return Err(BttError::input(format!("edge ({u}, {v}) out of range for {n} nodes")));
        }
        b.push(u, v, Sign::Negative, W::one());
    }
    for v in 0..apex {
        b.push(v, apex, Sign::Positive, W::one());
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_feasible_cover, Clustering, EdgeCover, EdgeId};
    use crate::scalar::Rational;

    #[test]
    fn integrality_gap_shape() {
        let g = gen_integrality_gap::<Rational>(2).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.bad_triangles().len(), 1);
        let g = gen_integrality_gap::<Rational>(3).unwrap();
        assert_eq!(g.bad_triangles().len(), 3);
        assert!(gen_integrality_gap::<Rational>(1).is_err());
    }

    #[test]
    fn six_node_shape_and_bad_cycle() {
        let g = gen_figure2::<Rational>();
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.negative_edges().count(), 4);
        // a=0 b=1 c=2 d=3 e=4 f=5; removing {ac, ae, bf, df} leaves cycle a-b-c-f-a
        let removed = [(0, 2), (0, 4), (1, 5), (3, 5)];
        let ids: Vec<EdgeId> = removed.iter().map(|&(u, v)| g.edge_between(u, v).unwrap()).collect();
        assert!(is_feasible_cover(&g, &EdgeCover::new(&g, ids).unwrap()).unwrap());
        let cycle = [(0, 1), (1, 2), (2, 5), (0, 5)];
        assert!(cycle.iter().all(|p| !removed.contains(p)));
        let negatives = cycle.iter().filter(|&&(u, v)| g.sign(g.edge_between(u, v).unwrap()) == Sign::Negative).count();
        assert_eq!(negatives, 1);
        let all_neg = EdgeCover::new(&g, g.negative_edges().collect::<Vec<_>>()).unwrap();
        assert!(is_feasible_cover(&g, &all_neg).unwrap());
        assert_eq!(*all_neg.cost(), Rational::from_ratio(4, 1));
        assert_eq!(crate::graph::cc_cost(&g, &Clustering::single(6)).unwrap(), Rational::from_ratio(4, 1));
    }

    #[test]
    fn vc_reduction_single_edge() {
        let g = gen_vc_reduction::<Rational>(2, &[(0, 1)]).unwrap();
        assert_eq!(g.negative_edges().count(), 1);
        assert_eq!(g.positive_edges().count(), 2);
        assert_eq!(g.bad_triangles().len(), 1);
        assert!(gen_vc_reduction::<Rational>(2, &[(0, 2)]).is_err());
    }
}
