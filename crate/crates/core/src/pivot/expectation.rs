//! Exact expected pivot cost by exhaustive recursion.
//!
//! `E(U)` for the set `U` of unclustered nodes averages over the pivot
//! `u ∈ U` and over every joint outcome of the join coins, adding the
//! disagreements settled in that round to `E(U \ P_u)`. Values are memoised
//! on `U` as a bitmask.

use std::collections::HashMap;

use crate::error::{BttError, Result};
use crate::graph::{NodeId, Sign, SignedGraph};
use num_traits::Zero;

use crate::scalar::{Rational, Scalar};

pub const MAX_EXHAUSTIVE_NODES: usize = 10;

/// Expected disagreements on `g` when `p(u, v)` is the probability that `v`
/// joins pivot `u`.
pub fn expected_disagreements<W: Scalar>(g: &SignedGraph<W>, p: impl Fn(NodeId, NodeId) -> Rational) -> Result<Rational> {
    let n = g.node_count();
    if n > MAX_EXHAUSTIVE_NODES {
        return Err(BttError::Capacity(format!(
            "exhaustive expectation handles at most {MAX_EXHAUSTIVE_NODES} nodes, got {n}"
        )));
    }
    let mut join = vec![vec![Rational::from_ratio(0, 1); n]; n];
    let mut cost_pos = vec![vec![Rational::from_ratio(0, 1); n]; n];
    let mut cost_neg = vec![vec![Rational::from_ratio(0, 1); n]; n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            join[u][v] = p(u as NodeId, v as NodeId);
            if let Some((sign, w)) = g.pair(u as NodeId, v as NodeId) {
                match sign {
                    Sign::Positive => cost_pos[u][v] = w.to_rational(),
                    Sign::Negative => cost_neg[u][v] = w.to_rational(),
                }
            }
        }
    }
    let mut oracle = Oracle { n, join, cost_pos, cost_neg, memo: HashMap::new() };
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    Ok(oracle.expect(full))
}

struct Oracle {
    n: usize,
    join: Vec<Vec<Rational>>,
    /// Cost of separating a positive pair.
    cost_pos: Vec<Vec<Rational>>,
    /// Cost of merging a negative pair.
    cost_neg: Vec<Vec<Rational>>,
    memo: HashMap<u32, Rational>,
}

impl Oracle {
    fn expect(&mut self, alive: u32) -> Rational {
        if alive == 0 {
            return Rational::from_ratio(0, 1);
        }
        if let Some(v) = self.memo.get(&alive) {
            return v.clone();
        }
        let nodes: Vec<usize> = (0..self.n).filter(|&i| alive >> i & 1 == 1).collect();
        let mut total = Rational::from_ratio(0, 1);
        for &u in &nodes {
            let mut sure = 1u32 << u;
            let mut coins: Vec<usize> = Vec::new();
            for &v in &nodes {
                if v == u {
                    continue;
                }
                let p = &self.join[u][v];
                if *p == Rational::from_ratio(1, 1) {
                    sure |= 1 << v;
                } else if !p.is_zero() {
                    coins.push(v);
                }
            }
            for outcome in 0u32..(1u32 << coins.len()) {
                let mut cluster = sure;
                let mut prob = Rational::from_ratio(1, 1);
                for (k, &v) in coins.iter().enumerate() {
                    if outcome >> k & 1 == 1 {
                        cluster |= 1 << v;
                        prob *= &self.join[u][v];
                    } else {
                        prob *= Rational::from_ratio(1, 1) - &self.join[u][v];
                    }
                }
                let settled = self.round_cost(cluster, alive);
                let rest = self.expect(alive & !cluster);
                total += prob * (settled + rest);
            }
        }
        let value = total / Rational::from_ratio(nodes.len() as i64, 1);
        self.memo.insert(alive, value.clone());
        value
    }

    fn round_cost(&self, cluster: u32, alive: u32) -> Rational {
        let mut c = Rational::from_ratio(0, 1);
        for a in 0..self.n {
            if cluster >> a & 1 == 0 {
                continue;
            }
            for b in 0..self.n {
                if alive >> b & 1 == 0 || a == b {
                    continue;
                }
                if cluster >> b & 1 == 1 {
                    if a < b {
                        c += &self.cost_neg[a][b];
                    }
                } else {
                    c += &self.cost_pos[a][b];
                }
            }
        }
        c
    }
}
