//! The covering LP over bad triangles and its packing dual.
//!
//! Primal: minimise `Σ w_e x_e` subject to `x_a + x_b + x_c ≥ 1` for every
//! bad triangle `{a, b, c}` and `x ≥ 0`. Dual: maximise `Σ y_t` subject to
//! `Σ_{t ∋ e} y_t ≤ w_e` and `y ≥ 0`.
//!
//! [`solve_exact`] runs a rational simplex and returns both sides with equal
//! objectives. [`solve_mwu`] runs a multiplicative-weights scheme and returns
//! a feasible primal together with a packing that certifies its accuracy.

mod mwu;
mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::{BttError, Result};
use crate::graph::{BadTriangle, EdgeId, SignedGraph};
use crate::scalar::Scalar;

pub use mwu::{solve_mwu, solve_mwu_with, MwuOptions};
pub use simplex::{solve_exact, solve_exact_with, ExactLpOptions, DEFAULT_MAX_TRIANGLES};

/// Per-edge values `x_e`, indexed by edge id.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalCover<W> {
    values: Vec<W>,
    objective: W,
}

impl<W: Scalar> FractionalCover<W> {
    pub fn new(g: &SignedGraph<W>, values: Vec<W>) -> Result<Self> {
        check_len(g, values.len())?;
        let objective = weighted_sum(g, &values);
        Ok(FractionalCover { values, objective })
    }

    /// Constant vector `x_e = v`.
    pub fn uniform(g: &SignedGraph<W>, v: W) -> Self {
        let values = vec![v; g.edge_count()];
        let objective = weighted_sum(g, &values);
        FractionalCover { values, objective }
    }

    /// Indicator vector of an edge set.
    pub fn indicator(g: &SignedGraph<W>, edges: &[EdgeId]) -> Result<Self> {
        let mut values = vec![W::zero(); g.edge_count()];
        for &e in edges {
            g.check_edge(e)?;
            values[e.index()] = W::one();
        }
        Self::new(g, values)
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    pub fn value(&self, e: EdgeId) -> &W {
        &self.values[e.index()]
    }

    pub fn objective(&self) -> &W {
        &self.objective
    }

    /// Copy with every value clamped into `[0, 1]`.
    pub fn clamped(&self, g: &SignedGraph<W>) -> Self {
        let values: Vec<W> = self.values.iter().cloned().map(W::clamp_unit).collect();
        let objective = weighted_sum(g, &values);
        FractionalCover { values, objective }
    }

    pub fn to_float(&self) -> FractionalCover<f64> {
        FractionalCover {
            values: self.values.iter().map(W::to_f64).collect(),
            objective: self.objective.to_f64(),
        }
    }
}

/// Per-triangle values `y_t`, aligned with `triangles`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalPacking<W> {
    triangles: Vec<BadTriangle>,
    values: Vec<W>,
    objective: W,
}

impl<W: Scalar> FractionalPacking<W> {
    pub fn new(triangles: Vec<BadTriangle>, values: Vec<W>) -> Result<Self> {
        if triangles.len() != values.len() {
            return Err(BttError::input(format!(
                "packing has {} values for {} triangles",
                values.len(),
                triangles.len()
            )));
        }
        let objective = values.iter().cloned().sum();
        Ok(FractionalPacking { triangles, values, objective })
    }

    pub fn triangles(&self) -> &[BadTriangle] {
        &self.triangles
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    pub fn objective(&self) -> &W {
        &self.objective
    }

    /// Load `Σ_{t ∋ e} y_t` on every edge.
    pub fn loads(&self, edge_count: usize) -> Vec<W> {
        let mut load = vec![W::zero(); edge_count];
        for (t, y) in self.triangles.iter().zip(&self.values) {
            for e in t.edges {
                load[e.index()] = load[e.index()].clone() + y.clone();
            }
        }
        load
    }

    /// Whether `y ≥ -tol` and every load is at most `w_e + tol`.
    pub fn is_feasible(&self, g: &SignedGraph<W>, tol: &W) -> bool {
        let neg_tol = -tol.clone();
        self.values.iter().all(|y| *y >= neg_tol)
            && self
                .loads(g.edge_count())
                .iter()
                .zip(g.edges())
                .all(|(l, e)| *l <= e.weight.clone() + tol.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LpStatus {
    ExactOptimal,
    /// Objective within a factor `1 + eps` of optimal.
    EpsApproximate(f64),
    FeasibleOnly,
}

impl LpStatus {
    pub fn name(&self) -> &'static str {
        match self {
            LpStatus::ExactOptimal => "exact-optimal",
            LpStatus::EpsApproximate(_) => "eps-approximate",
            LpStatus::FeasibleOnly => "feasible-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<W> {
    pub primal: FractionalCover<W>,
    pub dual: Option<FractionalPacking<W>>,
    pub status: LpStatus,
    /// Bounds on the optimal LP value.
    pub lower: W,
    pub upper: W,
}

impl<W: Scalar> LpSolution<W> {
    pub fn value(&self) -> &W {
        self.primal.objective()
    }
}

/// Whether every triangle sums to at least `1 - tol` and every value is at
/// least `-tol`.
pub fn check_fractional_feasibility<W: Scalar>(g: &SignedGraph<W>, x: &[W], tol: &W) -> Result<bool> {
    check_len(g, x.len())?;
    Ok(is_feasible_on(&g.bad_triangles(), x, tol))
}

/// Feasibility against a precomputed triangle list.
pub fn is_feasible_on<W: Scalar>(triangles: &[BadTriangle], x: &[W], tol: &W) -> bool {
    let neg_tol = -tol.clone();
    let floor = W::one() - tol.clone();
    x.iter().all(|v| *v >= neg_tol)
        && triangles.iter().all(|t| {
            let s = x[t.edges[0].index()].clone() + x[t.edges[1].index()].clone() + x[t.edges[2].index()].clone();
            s >= floor
        })
}

/// Greedy maximal set of edge-disjoint bad triangles, scanned in triangle order.
pub fn greedy_maximal_packing<W: Scalar>(g: &SignedGraph<W>) -> Vec<BadTriangle> {
    greedy_packing_of(g.edge_count(), &g.bad_triangles())
}

pub fn greedy_packing_of(edge_count: usize, triangles: &[BadTriangle]) -> Vec<BadTriangle> {
    let mut used = vec![false; edge_count];
    let mut out = Vec::new();
    for t in triangles {
        if t.edges.iter().all(|e| !used[e.index()]) {
            for e in t.edges {
                used[e.index()] = true;
            }
            out.push(*t);
        }
    }
    out
}

/// Value of an edge-disjoint packing with `y_t = min_{e ∈ t} w_e`, a lower
/// bound on the LP value (and on any cover) for any weights.
pub fn packing_lower_bound<W: Scalar>(g: &SignedGraph<W>, packing: &[BadTriangle]) -> W {
    packing
        .iter()
        .map(|t| {
            t.edges
                .iter()
                .map(|&e| g.weight(e).clone())
                .reduce(W::min_of)
                .unwrap_or_else(W::zero)
        })
        .sum()
}

fn check_len<W: Scalar>(g: &SignedGraph<W>, len: usize) -> Result<()> {
    if len == g.edge_count() {
        Ok(())
    } else {
        Err(BttError::input(format!("vector has {len} entries but the graph has {} edges", g.edge_count())))
    }
}

fn weighted_sum<W: Scalar>(g: &SignedGraph<W>, x: &[W]) -> W {
    g.edges().iter().zip(x).map(|(e, v)| e.weight.clone() * v.clone()).sum()
}

/// Serialised LP solution. Values are fraction strings in exact mode and
/// decimals otherwise.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LpSolutionDoc {
    pub schema_version: u32,
    pub status: String,
    pub eps: Option<f64>,
    pub lower: String,
    pub upper: String,
    pub objective: String,
    /// `x_e` by edge id.
    pub primal: Vec<String>,
    /// `(u, v, w)` node triple and `y_t`, for triangles with `y_t > 0`.
    pub dual: Option<Vec<([u32; 3], String)>>,
}

impl LpSolutionDoc {
    pub fn from_solution<W: Scalar>(s: &LpSolution<W>) -> Self {
        LpSolutionDoc {
            schema_version: crate::io::SCHEMA_VERSION,
            status: s.status.name().to_string(),
            eps: match s.status {
                LpStatus::EpsApproximate(eps) => Some(eps),
                _ => None,
            },
            lower: s.lower.to_text(),
            upper: s.upper.to_text(),
            objective: s.primal.objective().to_text(),
            primal: s.primal.values().iter().map(W::to_text).collect(),
            dual: s.dual.as_ref().map(|d| {
                d.triangles()
                    .iter()
                    .zip(d.values())
                    .filter(|(_, y)| !y.is_zero())
                    .map(|(t, y)| (t.nodes, y.to_text()))
                    .collect()
            }),
        }
    }
}
