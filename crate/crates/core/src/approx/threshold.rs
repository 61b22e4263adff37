//! Threshold rounding of fractional covers.
//!
//! With threshold `r ∈ [0, 1]` a positive edge is taken when
//! `x_e ≥ (r - τ)/2` and a negative edge when `x_e > 1 - r + τ/2`, where `τ`
//! is the scalar's positivity threshold (0 for rationals) and inputs may
//! violate constraints by `τ/2`. If a triangle's two positive edges both
//! miss, they sum to less than `r - τ`, so the negative edge exceeds
//! `1 - r + τ/2` and is taken: every threshold yields a feasible cover.

use rand::Rng;

use super::{Algorithm, RoundingOutcome};
use crate::error::{BttError, Result};
use crate::graph::{EdgeCover, EdgeId, Sign, SignedGraph};
use crate::lp::{is_feasible_on, FractionalCover};
use crate::rng::seeded;
use crate::scalar::Scalar;

/// A validated fractional cover ready to be rounded at any threshold.
#[derive(Clone, Debug)]
pub struct ThresholdRounder<'g, W> {
    g: &'g SignedGraph<W>,
    x: Vec<W>,
    tau: W,
}

impl<'g, W: Scalar> ThresholdRounder<'g, W> {
    /// Clamps `x` into `[0, 1]` after checking it is feasible up to `τ/2`.
    pub fn new(g: &'g SignedGraph<W>, x: &FractionalCover<W>) -> Result<Self> {
        if x.values().len() != g.edge_count() {
            return Err(BttError::input(format!(
                "fractional cover has {} values for {} edges",
                x.values().len(),
                g.edge_count()
            )));
        }
        let tau = W::tau();
        let tol = tau.clone() / W::from_ratio(2, 1);
        if !is_feasible_on(&g.bad_triangles(), x.values(), &tol) {
            return Err(BttError::input("fractional cover violates a bad-triangle constraint"));
        }
        Ok(ThresholdRounder { g, x: x.values().iter().cloned().map(W::clamp_unit).collect(), tau })
    }

    pub fn includes(&self, e: EdgeId, r: &W) -> bool {
        let x = &self.x[e.index()];
        match self.g.sign(e) {
            Sign::Positive => x.clone() + x.clone() + self.tau.clone() >= *r,
            Sign::Negative => *x > W::one() - r.clone() + self.tau.clone() / W::from_ratio(2, 1),
        }
    }

    pub fn cover_at(&self, r: &W) -> EdgeCover<W> {
        let mask: Vec<bool> = self.g.edge_ids().map(|e| self.includes(e, r)).collect();
        EdgeCover::from_mask(self.g, &mask)
    }

    /// Uniform draw from `[0, 1)`, exact in both scalar kinds.
    pub fn draw<R: Rng>(rng: &mut R) -> W {
        W::from_rational(&rng.gen::<f64>().to_rational())
    }

    /// Threshold in `[0, 1]` with the cheapest cover, smallest on ties.
    pub fn best_threshold(&self) -> W {
        let two = W::from_ratio(2, 1);
        let half_tau = self.tau.clone() / two.clone();
        let mut pos: Vec<(W, W)> = Vec::new();
        let mut neg: Vec<(W, W)> = Vec::new();
        for (e, x) in self.g.edges().iter().zip(&self.x) {
            match e.sign {
                // taken while r ≤ key
                Sign::Positive => pos.push((x.clone() * two.clone() + self.tau.clone(), e.weight.clone())),
                // taken once r > key
                Sign::Negative => neg.push((W::one() - x.clone() + half_tau.clone(), e.weight.clone())),
            }
        }
        let by_key = |a: &(W, W), b: &(W, W)| a.0.partial_cmp(&b.0).expect("comparable keys");
        pos.sort_by(by_key);
        neg.sort_by(by_key);
        let mut pos_suffix = vec![W::zero(); pos.len() + 1];
        for i in (0..pos.len()).rev() {
            pos_suffix[i] = pos_suffix[i + 1].clone() + pos[i].1.clone();
        }
        let mut neg_prefix = vec![W::zero(); neg.len() + 1];
        for i in 0..neg.len() {
            neg_prefix[i + 1] = neg_prefix[i].clone() + neg[i].1.clone();
        }
        let cost = |r: &W| {
            let p = pos.partition_point(|(k, _)| k < r);
            let q = neg.partition_point(|(k, _)| k < r);
            pos_suffix[p].clone() + neg_prefix[q].clone()
        };

        let (zero, one) = (W::zero(), W::one());
        let mut points: Vec<W> = pos
            .iter()
            .chain(&neg)
            .map(|(k, _)| k.clone())
            .filter(|k| *k >= zero && *k <= one)
            .chain([zero.clone(), one.clone()])
            .collect();
        points.sort_by(|a, b| a.partial_cmp(b).expect("comparable keys"));
        points.dedup();
        let mids: Vec<W> = points.windows(2).map(|w| (w[0].clone() + w[1].clone()) / two.clone()).collect();
        points.extend(mids);
        points.sort_by(|a, b| a.partial_cmp(b).expect("comparable keys"));

        let mut best: Option<(W, W)> = None;
        for r in points {
            let c = cost(&r);
            if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                best = Some((c, r));
            }
        }
        best.map(|(_, r)| r).unwrap_or(zero)
    }

    fn outcome(&self, r: W, algorithm: Algorithm, seed: Option<u64>) -> Result<RoundingOutcome<W>> {
        let mut out = RoundingOutcome::new(self.g, self.cover_at(&r), algorithm)?;
        out.threshold = Some(r);
        out.seed = seed;
        Ok(out)
    }
}

/// Negative edges with `x_e > τ/2` and positive edges with `x_e ≥ (1 - τ)/2`
/// (threshold `r = 1`).
pub fn round_deterministic<W: Scalar>(g: &SignedGraph<W>, x: &FractionalCover<W>) -> Result<RoundingOutcome<W>> {
    let mut out = ThresholdRounder::new(g, x)?.outcome(W::one(), Algorithm::Deterministic, None)?;
    out.threshold = None;
    Ok(out)
}

/// Rounds at a fixed threshold `r ∈ [0, 1]`.
pub fn round_with_threshold<W: Scalar>(g: &SignedGraph<W>, x: &FractionalCover<W>, r: W) -> Result<RoundingOutcome<W>> {
    if r < W::zero() || r > W::one() {
        return Err(BttError::input(format!("threshold {} outside [0, 1]", r.to_text())));
    }
    ThresholdRounder::new(g, x)?.outcome(r, Algorithm::Randomized, None)
}

/// Draws `r` uniformly from `[0, 1)` with the generator seeded by `seed`.
pub fn round_randomized<W: Scalar>(g: &SignedGraph<W>, x: &FractionalCover<W>, seed: u64) -> Result<RoundingOutcome<W>> {
    let r = ThresholdRounder::<W>::draw(&mut seeded(seed));
    ThresholdRounder::new(g, x)?.outcome(r, Algorithm::Randomized, Some(seed))
}

/// Cheapest cover over every distinct threshold.
pub fn derandomized_sweep<W: Scalar>(g: &SignedGraph<W>, x: &FractionalCover<W>) -> Result<RoundingOutcome<W>> {
    let rounder = ThresholdRounder::new(g, x)?;
    let r = rounder.best_threshold();
    rounder.outcome(r, Algorithm::Sweep, None)
}
