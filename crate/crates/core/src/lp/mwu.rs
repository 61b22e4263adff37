//! Multiplicative-weights solver for the covering LP.
//!
//! Edge lengths start at `1/w_e`. Each round picks the bad triangle of
//! minimum total length, routes `c = min_{e ∈ t} w_e` units of packing through
//! it and multiplies each member length by `1 + η c / w_e` with `η = eps/4`.
//! Every round yields a feasible cover `l / α` (with `α` the minimum triangle
//! length) and a feasible packing `y / max_e(load_e / w_e)`; the run stops as
//! soon as the best of each are within a factor `1 + eps`.

use super::{is_feasible_on, FractionalCover, FractionalPacking, LpSolution, LpStatus};
use crate::error::{BttError, Result};
use crate::graph::SignedGraph;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug)]
pub struct MwuOptions {
    pub eps: f64,
    /// Round cap; `None` uses `10 · ⌈(m + 1) ln(|T| + 2) / eps²⌉`.
    pub max_iterations: Option<usize>,
}

impl MwuOptions {
    pub fn new(eps: f64) -> Self {
        MwuOptions { eps, max_iterations: None }
    }
}

pub fn solve_mwu<W: Scalar>(g: &SignedGraph<W>, eps: f64) -> Result<LpSolution<W>> {
    solve_mwu_with(g, MwuOptions::new(eps))
}

// Safety margins that keep the rescaled vectors feasible after rounding.
const COVER_MARGIN: f64 = 1.0 - 1e-12;
const PACK_MARGIN: f64 = 1.0 + 1e-12;
const RENORMALIZE_ABOVE: f64 = 1e200;

pub fn solve_mwu_with<W: Scalar>(g: &SignedGraph<W>, opts: MwuOptions) -> Result<LpSolution<W>> {
    let eps = opts.eps;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(BttError::input(format!("eps must lie in (0, 1), got {eps}")));
    }
    let m = g.edge_count();
    let triangles = g.bad_triangles();
    let w: Vec<f64> = g.edges().iter().map(|e| e.weight.to_f64()).collect();

    // Zero-weight edges are taken at value 1 for free.
    let mut x = vec![0.0f64; m];
    for (e, &we) in w.iter().enumerate() {
        if we == 0.0 {
            x[e] = 1.0;
        }
    }
    let active: Vec<usize> =
        (0..triangles.len()).filter(|&i| triangles[i].edges.iter().all(|e| w[e.index()] > 0.0)).collect();
    let mut y = vec![0.0f64; triangles.len()];

    if !active.is_empty() {
        let mut in_use = vec![false; m];
        for &i in &active {
            for e in triangles[i].edges {
                in_use[e.index()] = true;
            }
        }
        let used: Vec<usize> = (0..m).filter(|&e| in_use[e]).collect();
        let cap = opts.max_iterations.unwrap_or_else(|| {
            let raw = (used.len() as f64 + 1.0) * ((active.len() as f64) + 2.0).ln() / (eps * eps);
            10 * raw.ceil() as usize
        });
        let eta = eps / 4.0;

        let mut len = vec![0.0f64; m];
        for &e in &used {
            len[e] = 1.0 / w[e];
        }
        let mut d: f64 = used.iter().map(|&e| w[e] * len[e]).sum();
        let mut load = vec![0.0f64; m];
        let mut routed = vec![0.0f64; triangles.len()];
        let mut total = 0.0f64;
        let mut max_rel_load = 0.0f64;

        let mut best_upper = f64::INFINITY;
        let mut best_len = len.clone();
        let mut best_alpha = 1.0;
        let mut best_lower = 0.0f64;
        let mut best_y = routed.clone();
        let mut best_scale = 1.0;
        let mut converged = false;

        for _ in 0..cap {
            let (t, alpha) = active
                .iter()
                .map(|&i| (i, triangles[i].edges.iter().map(|e| len[e.index()]).sum::<f64>()))
                .fold((usize::MAX, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
            if d / alpha < best_upper {
                best_upper = d / alpha;
                best_len.clone_from(&len);
                best_alpha = alpha;
            }
            if max_rel_load > 0.0 && total / max_rel_load > best_lower {
                best_lower = total / max_rel_load;
                best_y.clone_from(&routed);
                best_scale = max_rel_load;
            }
            if best_upper <= (1.0 + eps) * best_lower {
                converged = true;
                break;
            }

            let c = triangles[t].edges.iter().map(|e| w[e.index()]).fold(f64::INFINITY, f64::min);
            routed[t] += c;
            total += c;
            for e in triangles[t].edges {
                let e = e.index();
                load[e] += c;
                max_rel_load = max_rel_load.max(load[e] / w[e]);
                let before = len[e];
                len[e] *= 1.0 + eta * c / w[e];
                d += w[e] * (len[e] - before);
            }
            let top = used.iter().map(|&e| len[e]).fold(0.0, f64::max);
            if top > RENORMALIZE_ABOVE {
                for &e in &used {
                    len[e] /= top;
                }
                d = used.iter().map(|&e| w[e] * len[e]).sum();
            }
        }
        if !converged {
            return Err(BttError::NonConvergence { iterations: cap, lower: best_lower, upper: best_upper });
        }
        for &e in &used {
            x[e] = (best_len[e] / (best_alpha * COVER_MARGIN)).min(1.0);
        }
        for &i in &active {
            y[i] = best_y[i] / (best_scale * PACK_MARGIN);
        }
    }

    let xs: Vec<W> = x.iter().map(|v| W::from_rational(&v.to_rational())).collect();
    let ys: Vec<W> = y.iter().map(|v| W::from_rational(&v.to_rational())).collect();
    if !is_feasible_on(&triangles, &xs, &W::zero()) {
        return Err(BttError::Internal("rescaled cover is infeasible".into()));
    }
    let primal = FractionalCover::new(g, xs)?;
    let dual = FractionalPacking::new(triangles, ys)?;
    if !dual.is_feasible(g, &W::zero()) {
        return Err(BttError::Internal("rescaled packing is infeasible".into()));
    }
    let upper = primal.objective().clone();
    let lower = dual.objective().clone();
    let status = if upper.to_f64() <= (1.0 + eps) * lower.to_f64() { LpStatus::EpsApproximate(eps) } else { LpStatus::FeasibleOnly };
    Ok(LpSolution { primal, dual: Some(dual), status, lower, upper })
}
