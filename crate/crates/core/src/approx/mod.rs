//! Integral covers from packings and LP solutions.
//!
//! * [`standard_three_approx`] takes every edge of a greedy maximal set of
//!   edge-disjoint bad triangles.
//! * [`krivelevich`] repeatedly harvests edges with `x_e ≥ 1/2`, drops edges
//!   with `x_e = 0`, re-solves, and finishes with a local-search max cut.
//! * [`round_deterministic`], [`round_randomized`] and [`derandomized_sweep`]
//!   threshold a fractional cover: a positive edge is taken when
//!   `x_e ≥ r/2`, a negative edge when `x_e > 1 - r`.

mod krivelevich;
mod threshold;

pub use krivelevich::{krivelevich, krivelevich_with, local_search_max_cut, Cut};
pub use threshold::{derandomized_sweep, round_deterministic, round_randomized, round_with_threshold, ThresholdRounder};

use crate::error::{BttError, Result};
use crate::graph::{is_feasible_cover, EdgeCover, SignedGraph};
use crate::lp::{greedy_maximal_packing, packing_lower_bound};
use crate::scalar::{ratio_or_one, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    ThreeApprox,
    Krivelevich,
    Deterministic,
    Randomized,
    Sweep,
}

impl Algorithm {
    /// Name used on the command line and in reports.
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::ThreeApprox => "3approx",
            Algorithm::Krivelevich => "kriv",
            Algorithm::Deterministic => "det2",
            Algorithm::Randomized => "rand2",
            Algorithm::Sweep => "sweep2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundingOutcome<W> {
    cover: EdgeCover<W>,
    algorithm: Algorithm,
    /// Threshold `r` for randomized rounding and the sweep.
    threshold: Option<W>,
    seed: Option<u64>,
    /// LP re-solves performed by the Krivelevich loop.
    iterations: Option<usize>,
    lower_bound: W,
}

impl<W: Scalar> RoundingOutcome<W> {
    /// Checks feasibility of `cover`. The lower bound starts at the greedy
    /// packing value, which is valid for every graph.
    fn new(g: &SignedGraph<W>, cover: EdgeCover<W>, algorithm: Algorithm) -> Result<Self> {
        if !is_feasible_cover(g, &cover)? {
            return Err(BttError::Internal(format!("{} produced an infeasible cover", algorithm.tag())));
        }
        let lower_bound = packing_lower_bound(g, &greedy_maximal_packing(g));
        Ok(RoundingOutcome { cover, algorithm, threshold: None, seed: None, iterations: None, lower_bound })
    }

    /// Replaces the lower bound by `lb` when it is tighter.
    pub fn with_lower_bound(mut self, lb: W) -> Result<Self> {
        if lb > *self.cover.cost() {
            return Err(BttError::input(format!(
                "lower bound {} exceeds the cost {} of a feasible cover",
                lb.to_text(),
                self.cover.cost().to_text()
            )));
        }
        if lb > self.lower_bound {
            self.lower_bound = lb;
        }
        Ok(self)
    }

    pub fn cover(&self) -> &EdgeCover<W> {
        &self.cover
    }

    pub fn into_cover(self) -> EdgeCover<W> {
        self.cover
    }

    pub fn cost(&self) -> &W {
        self.cover.cost()
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn threshold(&self) -> Option<&W> {
        self.threshold.as_ref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn iterations(&self) -> Option<usize> {
        self.iterations
    }

    pub fn lower_bound(&self) -> &W {
        &self.lower_bound
    }

    /// `cost / lower bound`, with `0/0 = 1`.
    pub fn ratio(&self) -> f64 {
        ratio_or_one(self.cover.cost(), &self.lower_bound)
    }
}

/// All edges of a greedy maximal edge-disjoint packing; the packing value
/// is the lower bound.
pub fn standard_three_approx<W: Scalar>(g: &SignedGraph<W>) -> Result<RoundingOutcome<W>> {
    let packing = greedy_maximal_packing(g);
    let cover = EdgeCover::new(g, packing.iter().flat_map(|t| t.edges))?;
    RoundingOutcome::new(g, cover, Algorithm::ThreeApprox)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_integrality_gap, gen_random, RandomSpec};
    use crate::graph::Sign::*;
    use crate::scalar::Rational;

    #[test]
    fn three_approx_examples() {
        let single: SignedGraph =
            SignedGraph::from_edges(3, [(0, 1, Positive), (0, 2, Positive), (1, 2, Negative)]).unwrap();
        assert_eq!(standard_three_approx(&single).unwrap().cover().len(), 3);

        let free: SignedGraph = SignedGraph::complete_from_fn(5, |_, _| Positive).unwrap();
        let out = standard_three_approx(&free).unwrap();
        assert!(out.cover().is_empty());
        assert_eq!(out.ratio(), 1.0);

        let out = standard_three_approx(&gen_integrality_gap::<Rational>(4).unwrap()).unwrap();
        assert_eq!(out.cover().len(), 6);
        assert_eq!(out.ratio(), 3.0);
    }

    #[test]
    fn three_approx_size_is_three_times_packing() {
        for seed in 0..20 {
            let g: SignedGraph = gen_random(&RandomSpec::complete(8, 0.6), seed).unwrap();
            let out = standard_three_approx(&g).unwrap();
            assert_eq!(out.cover().len(), 3 * greedy_maximal_packing(&g).len());
        }
    }

    #[test]
    fn lower_bound_cannot_exceed_cost() {
        let g = gen_integrality_gap::<Rational>(4).unwrap();
        let out = standard_three_approx(&g).unwrap();
        assert!(out.clone().with_lower_bound(Rational::from_ratio(7, 1)).is_err());
        let tightened = out.with_lower_bound(Rational::from_ratio(3, 1)).unwrap();
        assert_eq!(tightened.ratio(), 2.0);
    }
}
