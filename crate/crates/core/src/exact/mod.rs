//! Exact optima for small instances.
//!
//! [`exact_btt`] finds a minimum-weight bad-triangle cover by branch and
//! bound, [`exact_btt_positive_only`] restricts the search to positive edges
//! and can list every optimum, [`exact_cc`] enumerates clusterings as
//! restricted growth strings, and [`ratio_survey`] compares the two optima
//! over generated instances.

mod btt;
mod cc;
mod survey;

pub use btt::{exact_btt, exact_btt_positive_only, exact_btt_with};
pub use cc::{exact_cc, exact_cc_with};
pub use survey::{instance_seed, ratio_survey, SurveyReport, SurveyRow, SurveySpec};

use crate::graph::{Clustering, EdgeCover};

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
/// Largest node count accepted by [`exact_cc`].
pub const MAX_CC_NODES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    /// Search nodes visited before giving up.
    pub node_budget: u64,
    /// Solve the LP once at the root and stop as soon as an incumbent meets it.
    pub root_lp: bool,
    /// Number of optimal covers to collect; 1 keeps only the first.
    pub max_optima: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { node_budget: DEFAULT_NODE_BUDGET, root_lp: false, max_optima: 1 }
    }
}

impl ExactOptions {
    pub fn budget(node_budget: u64) -> Self {
        ExactOptions { node_budget, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<W> {
    Cover(EdgeCover<W>),
    Clustering(Clustering),
}

/// Bounds known after visiting `nodes` search nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundEvent<W> {
    pub nodes: u64,
    pub lower: W,
    pub upper: W,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult<W> {
    pub value: W,
    pub witness: Witness<W>,
    pub nodes_explored: u64,
    /// Root bound, then one entry per incumbent improvement; the last entry
    /// has `lower == upper`.
    pub trail: Vec<BoundEvent<W>>,
    /// All optimal covers found, when requested through `max_optima`.
    pub optima: Vec<EdgeCover<W>>,
}

impl<W> ExactResult<W> {
    pub fn cover(&self) -> Option<&EdgeCover<W>> {
        match &self.witness {
            Witness::Cover(c) => Some(c),
            Witness::Clustering(_) => None,
        }
    }

    pub fn clustering(&self) -> Option<&Clustering> {
        match &self.witness {
            Witness::Clustering(c) => Some(c),
            Witness::Cover(_) => None,
        }
    }
}
