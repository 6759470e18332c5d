//! Translation-invariant Gibbs measures for the four fertile three-state
//! hard-core models (loop, rod, key, whistle) on Cayley trees.
//!
//! * [`graphs`]: constraint graphs and admissibility.
//! * [`recursion`]: the boundary-law recursion, residual and Jacobian.
//! * [`solver`]: every translation-invariant fixed point at `(graph, k, lambda)`.
//! * [`bifurcation`]: critical activities, convexity of the branch map, sweeps.
//! * [`oracle`]: exhaustive finite-tree check of the consistency condition.
//! * [`cli`]: the `fertile-hc` command line.

// `!(a < b)` is used on purpose so NaN lands on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bifurcation;
pub mod cli;
pub mod error;
pub mod graphs;
pub mod numeric;
pub mod oracle;
pub mod plot;
pub mod recursion;
pub mod solver;

pub use bifurcation::{find_lambda_cr, sweep, verify_convexity_loop_k3, CriticalPoint};
pub use error::{Error, Result};
pub use graphs::{FertileGraph, State};
pub use recursion::{jacobian, recursion_map, residual, Field, ModelParams};
pub use solver::{solve_all, Branch, Solution, SolutionSet};
