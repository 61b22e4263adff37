//! Turning covers into clusterings with randomized pivoting.
//!
//! Each round picks a uniformly random unclustered pivot `u` and offers every
//! other unclustered node `v` a seat in `u`'s cluster. [`cover_pivot`] joins
//! positive non-cover pairs surely, positive cover pairs with probability
//! 1/4, negative cover pairs with probability 3/4 and negative non-cover
//! pairs never. [`standard_pivot`] joins exactly the positive pairs, and
//! [`match_flip_pivot`] runs it on the graph with the cover's signs flipped.

mod expectation;
mod tables;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use expectation::{expected_disagreements, MAX_EXHAUSTIVE_NODES};
pub use tables::{
    charging_report, endpoint_pivot_terms, inclusion_probability, matches_printed, triplet_sums,
    verify_charging_tables, ChargingReport, Check, TableCell, TripletConfig, TripletSums, MEMBERSHIP_COLUMNS,
    REFERENCE_B, REFERENCE_D, REFERENCE_RATIO, SIGN_ROWS,
};

use crate::error::{BttError, Result};
use crate::graph::{flip_edges, is_feasible_cover, Clustering, EdgeCover, NodeId, Sign, SignedGraph};
use crate::rng::{seeded, stream};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PivotKind {
    Standard,
    Cover,
    MatchFlip,
}

impl PivotKind {
    pub fn tag(self) -> &'static str {
        match self {
            PivotKind::Standard => "pivot",
            PivotKind::Cover => "cover-pivot",
            PivotKind::MatchFlip => "flip-pivot",
        }
    }
}

/// One pivot run.
#[derive(Clone, Debug, PartialEq)]
pub struct PivotTrace<W> {
    pub order: Vec<NodeId>,
    pub clustering: Clustering,
    pub disagreements: W,
    /// Disagreements settled in each round.
    pub round_disagreements: Vec<W>,
    /// Cover edges removed in each round.
    pub round_cover_removed: Vec<usize>,
}

/// Join probability as `k / 4`.
type Quarters = fn(Sign, bool) -> u8;

fn cover_quarters(sign: Sign, in_cover: bool) -> u8 {
    match (sign, in_cover) {
        (Sign::Positive, false) => 4,
        (Sign::Positive, true) => 1,
        (Sign::Negative, true) => 3,
        (Sign::Negative, false) => 0,
    }
}

fn standard_quarters(sign: Sign, _in_cover: bool) -> u8 {
    if sign == Sign::Positive {
        4
    } else {
        0
    }
}

/// Prepared pivot run: the graph that decides joins, its cover mask, and
/// the graph on which disagreements are counted.
struct Runner<'a, W: Scalar> {
    join: std::borrow::Cow<'a, SignedGraph<W>>,
    eval: &'a SignedGraph<W>,
    /// Cover membership by edge id of `eval` (ids agree with `join`).
    cover: Vec<bool>,
    quarters: Quarters,
}

impl<'a, W: Scalar> Runner<'a, W> {
    fn new(g: &'a SignedGraph<W>, f: Option<&EdgeCover<W>>, kind: PivotKind) -> Result<Self> {
        let cover = match f {
            Some(f) => {
                if !is_feasible_cover(g, f)? {
                    return Err(BttError::input("the supplied cover misses a bad triangle"));
                }
                f.mask(g.edge_count())
            }
            None => vec![false; g.edge_count()],
        };
        let (join, quarters): (std::borrow::Cow<'a, SignedGraph<W>>, Quarters) = match kind {
            PivotKind::Standard => (std::borrow::Cow::Borrowed(g), standard_quarters),
            PivotKind::Cover => (std::borrow::Cow::Borrowed(g), cover_quarters),
            PivotKind::MatchFlip => {
                let flipped = flip_edges(g, f.map(|c| c.edges()).unwrap_or(&[]))?;
                (std::borrow::Cow::Owned(flipped), standard_quarters)
            }
        };
        Ok(Runner { join, eval: g, cover, quarters })
    }

    fn quarters_for(&self, u: NodeId, v: NodeId) -> u8 {
        match self.join.edge_between(u, v) {
            Some(e) => (self.quarters)(self.join.sign(e), self.cover.get(e.index()).copied().unwrap_or(false)),
            // unstored pairs are negative (or absent) and outside the cover
            None => 0,
        }
    }

    fn run<R: Rng>(&self, rng: &mut R) -> PivotTrace<W> {
        let n = self.eval.node_count();
        let mut label = vec![u32::MAX; n];
        let mut unclustered: Vec<NodeId> = (0..n as NodeId).collect();
        let mut order = Vec::new();
        let mut round_disagreements = Vec::new();
        let mut round_cover_removed = Vec::new();
        let mut round = 0u32;
        while !unclustered.is_empty() {
            let u = unclustered[rng.gen_range(0..unclustered.len())];
            order.push(u);
            label[u as usize] = round;
            let mut members = vec![u];
            for &v in &unclustered {
                if v == u {
                    continue;
                }
                let k = self.quarters_for(u, v);
                let joins = match k {
                    0 => false,
                    4 => true,
                    k => rng.gen_range(0..4u8) < k,
                };
                if joins {
                    label[v as usize] = round;
                    members.push(v);
                }
            }
            let (d, b) = self.settle(&members, &label);
            round_disagreements.push(d);
            round_cover_removed.push(b);
            unclustered.retain(|v| label[*v as usize] == u32::MAX);
            round += 1;
        }
        let clustering = Clustering::from_labels(&label);
        let disagreements = round_disagreements.iter().cloned().sum();
        PivotTrace { order, clustering, disagreements, round_disagreements, round_cover_removed }
    }

    /// Disagreements and cover edges among pairs removed this round: pairs
    /// inside the new cluster and pairs from it to the remaining nodes.
    fn settle(&self, members: &[NodeId], label: &[u32]) -> (W, usize) {
        let g = self.eval;
        let mut d = W::zero();
        let mut b = 0;
        for (i, &v) in members.iter().enumerate() {
            for &w in &members[i + 1..] {
                if let Some((sign, weight)) = g.pair(v, w) {
                    if sign == Sign::Negative {
                        d = d + weight;
                    }
                }
                if let Some(e) = g.edge_between(v, w) {
                    b += usize::from(self.cover[e.index()]);
                }
            }
            for &(w, e) in g.neighbors(v) {
                if label[w as usize] == u32::MAX {
                    if g.sign(e) == Sign::Positive {
                        d = d + g.weight(e).clone();
                    }
                    b += usize::from(self.cover[e.index()]);
                }
            }
        }
        (d, b)
    }
}

/// Cover-aware pivot. `f` must cover every bad triangle of `g`.
pub fn cover_pivot<W: Scalar>(g: &SignedGraph<W>, f: &EdgeCover<W>, seed: u64) -> Result<PivotTrace<W>> {
    Ok(Runner::new(g, Some(f), PivotKind::Cover)?.run(&mut seeded(seed)))
}

/// Joins exactly the positive pairs.
pub fn standard_pivot<W: Scalar>(g: &SignedGraph<W>, seed: u64) -> Result<PivotTrace<W>> {
    Ok(Runner::new(g, None, PivotKind::Standard)?.run(&mut seeded(seed)))
}

/// Standard pivot on `g` with the signs of `f` flipped; disagreements are
/// counted on `g` itself.
pub fn match_flip_pivot<W: Scalar>(g: &SignedGraph<W>, f: &EdgeCover<W>, seed: u64) -> Result<PivotTrace<W>> {
    Ok(Runner::new(g, Some(f), PivotKind::MatchFlip)?.run(&mut seeded(seed)))
}

/// Per-trial disagreement counts with summary statistics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialBatch {
    pub algorithm: String,
    pub seed: u64,
    pub trials: usize,
    pub mean: f64,
    pub stderr: f64,
    pub min: f64,
    pub max: f64,
    pub values: Vec<f64>,
}

impl TrialBatch {
    pub fn from_values(algorithm: &str, seed: u64, values: Vec<f64>) -> Self {
        let (mean, stderr) = mean_stderr(&values);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        TrialBatch { algorithm: algorithm.to_string(), seed, trials: values.len(), mean, stderr, min, max, values }
    }

    /// `trial,disagreements` rows.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["trial", "seed", "disagreements"])?;
        for (i, v) in self.values.iter().enumerate() {
            w.write_record([i.to_string(), self.seed.to_string(), v.to_string()])?;
        }
        let bytes = w.into_inner().map_err(|e| BttError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| BttError::Internal(e.to_string()))
    }
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs `trials` pivots in parallel; trial `i` uses stream `i` of `seed`, so
/// results do not depend on scheduling.
pub fn pivot_trials<W: Scalar>(
    g: &SignedGraph<W>,
    f: Option<&EdgeCover<W>>,
    kind: PivotKind,
    seed: u64,
    trials: usize,
) -> Result<TrialBatch> {
    if kind != PivotKind::Standard && f.is_none() {
        return Err(BttError::input(format!("{} needs a cover", kind.tag())));
    }
    let runner = Runner::new(g, f, kind)?;
    let values: Vec<f64> =
        (0..trials as u64).into_par_iter().map(|i| runner.run(&mut stream(seed, i)).disagreements.to_f64()).collect();
    Ok(TrialBatch::from_values(kind.tag(), seed, values))
}

/// Exact expected disagreements of one pivot variant (small graphs only).
pub fn expected_pivot_cost<W: Scalar>(g: &SignedGraph<W>, f: Option<&EdgeCover<W>>, kind: PivotKind) -> Result<Rational> {
    let runner = Runner::new(g, f, kind)?;
    expected_disagreements(g, |u, v| Rational::from_ratio(runner.quarters_for(u, v) as i64, 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::generators::{gen_figure2, gen_random, RandomSpec};
    use crate::graph::{cc_cost, EdgeId};
    use crate::lp::solve_exact;

    fn fig2_cover(g: &SignedGraph) -> EdgeCover {
        let ids: Vec<EdgeId> = [(0, 2), (0, 4), (1, 5), (3, 5)].iter().map(|&(u, v)| g.edge_between(u, v).unwrap()).collect();
        EdgeCover::new(g, ids).unwrap()
    }

    #[test]
    fn triangle_free_graphs_cost_nothing() {
        let g: SignedGraph = gen_random(&RandomSpec::complete(8, 1.0), 1).unwrap();
        assert!(standard_pivot(&g, 3).unwrap().disagreements.is_zero());
        assert_eq!(standard_pivot(&g, 3).unwrap().clustering.cluster_count(), 1);
        let neg: SignedGraph = gen_random(&RandomSpec::complete(6, 0.0), 1).unwrap();
        let t = standard_pivot(&neg, 3).unwrap();
        assert_eq!(t.clustering.cluster_count(), 6);
        assert!(t.disagreements.is_zero());
        let empty = EdgeCover::empty();
        assert!(cover_pivot(&g, &empty, 9).unwrap().disagreements.is_zero());
        assert!(match_flip_pivot(&g, &empty, 9).unwrap().disagreements.is_zero());
    }

    #[test]
    fn trace_is_consistent() {
        let g: SignedGraph = gen_figure2();
        let f = fig2_cover(&g);
        for seed in 0..50 {
            for t in [cover_pivot(&g, &f, seed).unwrap(), match_flip_pivot(&g, &f, seed).unwrap()] {
                assert_eq!(t.disagreements, cc_cost(&g, &t.clustering).unwrap());
                assert_eq!(t.round_cover_removed.iter().sum::<usize>(), 4);
                assert_eq!(t.order.len(), t.clustering.cluster_count());
                let mut seen: Vec<u32> = t.order.iter().map(|&u| t.clustering.label(u)).collect();
                seen.sort_unstable();
                seen.dedup();
                assert_eq!(seen.len(), t.order.len());
            }
        }
    }

    #[test]
    fn infeasible_cover_is_rejected() {
        let g: SignedGraph = gen_figure2();
        assert!(matches!(cover_pivot(&g, &EdgeCover::empty(), 1), Err(BttError::Input(_))));
        assert!(pivot_trials(&g, None, PivotKind::Cover, 1, 10).is_err());
    }

    #[test]
    fn monte_carlo_on_six_node_example() {
        let g: SignedGraph = gen_figure2();
        let f = fig2_cover(&g);
        let cover = pivot_trials(&g, Some(&f), PivotKind::Cover, 7, 20_000).unwrap();
        assert!(cover.mean <= 1.5 * 4.0 + 3.0 * cover.stderr, "{}", cover.mean);
        let flip = pivot_trials(&g, Some(&f), PivotKind::MatchFlip, 7, 20_000).unwrap();
        assert!(flip.mean <= 2.0 * 4.0 + 3.0 * flip.stderr);
        let lp = solve_exact(&g).unwrap().value().to_f64();
        let plain = pivot_trials(&g, None, PivotKind::Standard, 7, 20_000).unwrap();
        assert!(plain.mean <= 3.0 * lp);
    }

    #[test]
    fn exact_expectation_single_triangle() {
        let g: SignedGraph =
            SignedGraph::from_edges(3, [(0, 1, Sign::Positive), (0, 2, Sign::Positive), (1, 2, Sign::Negative)]).unwrap();
        let f = EdgeCover::new(&g, [g.edge_between(1, 2).unwrap()]).unwrap();
        let e = expected_pivot_cost(&g, Some(&f), PivotKind::Cover).unwrap();
        assert!(e <= Rational::from_ratio(3, 2));
    }

    #[test]
    fn batches_are_reproducible() {
        let g: SignedGraph = gen_figure2();
        let f = fig2_cover(&g);
        let a = pivot_trials(&g, Some(&f), PivotKind::Cover, 5, 300).unwrap();
        let b = pivot_trials(&g, Some(&f), PivotKind::Cover, 5, 300).unwrap();
        assert_eq!(a, b);
        assert!(a.to_csv().unwrap().starts_with("trial,seed,disagreements\n0,5,"));
    }
}
