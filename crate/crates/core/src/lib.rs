//! Bad triangle transversals on signed graphs.
//!
//! A bad triangle has exactly one negative edge. A transversal (cover) is a
//! set of edges meeting every bad triangle; its minimum weight is `OPT_Δ`,
//! a lower bound on correlation clustering cost.
//!
//! - [`lp`]: the covering LP, solved exactly (rational simplex on the dual)
//!   or approximately (multiplicative weights), plus packing bounds.
//! - [`approx`]: LP-rounding 2-approximations and the classic 3-approximation.
//! - [`pivot`]: cover-guided pivot clustering and the charging tables behind
//!   its 3/2 bound.
//! - [`exact`]: branch-and-bound oracles for `OPT_Δ` and `OPT_CC`, and the
//!   ratio survey.
//! - [`generators`]: structured and random instances, including the
//!   vertex cover and 2CNF reductions.
//!
//! ```
//! use btt::approx::round_deterministic;
//! use btt::generators::gen_figure2;
//! use btt::graph::{is_feasible_cover, SignedGraph};
//! use btt::lp::solve_exact;
//!
//! let g: SignedGraph = gen_figure2();
//! let lp = solve_exact(&g).unwrap();
//! let out = round_deterministic(&g, &lp.primal).unwrap();
//! assert!(is_feasible_cover(&g, out.cover()).unwrap());
//! assert!(out.cost().clone() <= lp.value().clone() * btt::scalar::Rational::from_integer(2.into()));
//! ```

pub mod error;
pub mod graph;
pub mod io;
pub mod rng;
pub mod scalar;
pub mod lp;
pub mod generators;
pub mod approx;
pub mod pivot;
pub mod exact;
pub mod cli;

pub use error::{BttError, Result};
pub use graph::{EdgeCover, EdgeId, NodeId, Sign, SignedGraph};
pub use scalar::{Rational, Scalar};
