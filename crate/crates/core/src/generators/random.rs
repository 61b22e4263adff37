//! Seeded random signed graphs.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{BttError, Result};
use crate::graph::{GraphBuilder, NodeId, Sign, SignedGraph};
use crate::rng::seeded;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PositiveSpec {
    /// Each present pair is positive with this probability.
    Probability(f64),
    /// Exactly this many positive pairs, chosen uniformly.
    Count(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum WeightSpec {
    Unit,
    /// Uniform integers in `1..=max`.
    Int(u32),
    /// `a/b` with `b` uniform in `1..=max_den` and `a` uniform in `1..=2b`.
    Frac(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    pub positive: PositiveSpec,
    /// Every pair carries an edge.
    pub complete: bool,
    /// Probability that a pair carries an edge when not complete.
    pub density: f64,
    pub weights: WeightSpec,
}

impl RandomSpec {
    pub fn complete(n: usize, p: f64) -> Self {
        RandomSpec { n, positive: PositiveSpec::Probability(p), complete: true, density: 1.0, weights: WeightSpec::Unit }
    }

    pub fn sparse(n: usize, density: f64, p: f64) -> Self {
        RandomSpec { n, positive: PositiveSpec::Probability(p), complete: false, density, weights: WeightSpec::Unit }
    }

    pub fn with_weights(mut self, weights: WeightSpec) -> Self {
        self.weights = weights;
        self
    }
}

/// Pairs are visited in lexicographic order; for each one the generator
/// draws presence, then sign, then weight.
pub fn gen_random<W: Scalar>(spec: &RandomSpec, seed: u64) -> Result<SignedGraph<W>> {
    let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
    if !prob_ok(spec.density) {
        return Err(BttError::input(format!("density {} outside [0, 1]", spec.density)));
    }
    let pairs: Vec<(NodeId, NodeId)> =
        (0..spec.n as NodeId).flat_map(|u| (u + 1..spec.n as NodeId).map(move |v| (u, v))).collect();
    let mut rng = seeded(seed);
    let forced: Option<Vec<bool>> = match spec.positive {
        PositiveSpec::Probability(p) if !prob_ok(p) => {
            return Err(BttError::input(format!("positive probability {p} outside [0, 1]")));
        }
        PositiveSpec::Probability(_) => None,
        PositiveSpec::Count(k) if k > pairs.len() => {
            return Err(BttError::input(format!("{k} positive pairs requested but only {} exist", pairs.len())));
        }
        PositiveSpec::Count(k) => {
            let mut mark = vec![false; pairs.len()];
            for i in sample(&mut rng, pairs.len(), k) {
                mark[i] = true;
            }
            Some(mark)
        }
    };
    match spec.weights {
        WeightSpec::Int(0) | WeightSpec::Frac(0) => return Err(BttError::input("weight bound must be positive")),
        _ => {}
    }
    let mut b = GraphBuilder::new(spec.n);
    if spec.complete {
        b = b.complete();
    }
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let positive_forced = forced.as_ref().map(|m| m[i]);
        if !spec.complete && positive_forced != Some(true) && !rng.gen_bool(spec.density) {
            continue;
        }
        let sign = match (positive_forced, spec.positive) {
            (Some(true), _) => Sign::Positive,
            (Some(false), _) => Sign::Negative,
            (None, PositiveSpec::Probability(p)) => {
                if rng.gen_bool(p) {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
            (None, PositiveSpec::Count(_)) => unreachable!("count mode always forces signs"),
        };
        let weight = match spec.weights {
            WeightSpec::Unit => W::one(),
            WeightSpec::Int(max) => W::from_ratio(rng.gen_range(1..=max as i64), 1),
            WeightSpec::Frac(max_den) => {
                let den = rng.gen_range(1..=max_den as i64);
                let num = rng.gen_range(1..=2 * den);
                W::from_rational(&Rational::from_ratio(num, den))
            }
        };
        b.push(u, v, sign, weight);
    }
    b.build()
}
