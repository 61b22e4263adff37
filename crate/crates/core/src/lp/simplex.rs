//! Exact rational simplex.
//!
//! The tableau holds the packing side, `max Σ y_t` with `A y + s = w`, whose
//! slack basis is feasible from the start because `w ≥ 0`. Rows are the edges
//! that lie in at least one bad triangle. Bland's rule (lowest entering
//! column, lowest basic variable on ratio ties) rules out cycling. At the end
//! the covering solution is read off the slack reduced costs, so both sides
//! come out of one run with equal objectives.

use num_traits::{One, Signed, Zero};

use super::{FractionalCover, FractionalPacking, LpSolution, LpStatus};
use crate::error::{BttError, Result};
use crate::graph::{BadTriangle, SignedGraph};
use crate::scalar::{Rational, Scalar};

pub const DEFAULT_MAX_TRIANGLES: usize = 50_000;

#[derive(Clone, Copy, Debug)]
pub struct ExactLpOptions {
    /// Largest bad-triangle count accepted.
    pub max_triangles: usize,
}

impl Default for ExactLpOptions {
    fn default() -> Self {
        ExactLpOptions { max_triangles: DEFAULT_MAX_TRIANGLES }
    }
}

pub fn solve_exact<W: Scalar>(g: &SignedGraph<W>) -> Result<LpSolution<W>> {
    solve_exact_with(g, ExactLpOptions::default())
}

pub fn solve_exact_with<W: Scalar>(g: &SignedGraph<W>, opts: ExactLpOptions) -> Result<LpSolution<W>> {
    let triangles = g.bad_triangles();
    if triangles.len() > opts.max_triangles {
        return Err(BttError::Capacity(format!(
            "{} bad triangles exceed the exact solver bound of {}; use the approximate solver (lp-mwu)",
            triangles.len(),
            opts.max_triangles
        )));
    }
    let weights: Vec<Rational> = g.edges().iter().map(|e| e.weight.to_rational()).collect();
    let (x, y) = solve_packing(&weights, &triangles)?;

    let primal_value: Rational = weights.iter().zip(&x).map(|(w, v)| w * v).sum();
    let dual_value: Rational = y.iter().sum();
    if primal_value != dual_value {
        return Err(BttError::Internal(format!("duality gap {primal_value} vs {dual_value}")));
    }
    let convert = |v: &Vec<Rational>| v.iter().map(W::from_rational).collect::<Vec<W>>();
    let primal = FractionalCover::new(g, convert(&x))?;
    let dual = FractionalPacking::new(triangles, convert(&y))?;
    let value = W::from_rational(&primal_value);
    Ok(LpSolution { primal, dual: Some(dual), status: LpStatus::ExactOptimal, lower: value.clone(), upper: value })
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs; the tableau is optimal once none is positive.
    obj: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let support: Vec<usize> = (0..self.rows[r].len()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &support {
                let d = &f * &pivot_row[j];
                self.rows[i][j] -= d;
            }
            let d = &f * &pivot_rhs;
            self.rhs[i] -= d;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &support {
                let d = &f * &pivot_row[j];
                self.obj[j] -= d;
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }
}

/// Returns `(x by edge, y by triangle)`.
fn solve_packing(weights: &[Rational], triangles: &[BadTriangle]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let k = triangles.len();
    let mut row_of = vec![usize::MAX; weights.len()];
    let mut edge_of_row = Vec::new();
    for t in triangles {
        for e in t.edges {
            if row_of[e.index()] == usize::MAX {
                row_of[e.index()] = edge_of_row.len();
                edge_of_row.push(e.index());
            }
        }
    }
    let m = edge_of_row.len();
    let cols = k + m;
    let mut rows = vec![vec![Rational::zero(); cols]; m];
    for (j, t) in triangles.iter().enumerate() {
        for e in t.edges {
            rows[row_of[e.index()]][j] = Rational::one();
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[k + i] = Rational::one();
    }
    let rhs = edge_of_row.iter().map(|&e| weights[e].clone()).collect();
    let mut obj = vec![Rational::zero(); cols];
    for v in obj.iter_mut().take(k) {
        *v = Rational::one();
    }
    let mut tab = Tableau { rows, rhs, obj, basis: (k..cols).collect() };

    while let Some(c) = (0..cols).find(|&j| tab.obj[j].is_positive()) {
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab.rows[i][c].is_positive() {
                let ratio = &tab.rhs[i] / &tab.rows[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && tab.basis[i] < tab.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        // Packing values are bounded by the weights, so some row always limits.
        let (r, _) = best.ok_or_else(|| BttError::Internal("unbounded packing LP".into()))?;
        tab.pivot(r, c);
    }

    let mut y = vec![Rational::zero(); k];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < k {
            y[b] = tab.rhs[i].clone();
        }
    }
    let mut x = vec![Rational::zero(); weights.len()];
    for (i, &e) in edge_of_row.iter().enumerate() {
        x[e] = -tab.obj[k + i].clone();
    }
    Ok((x, y))
}
