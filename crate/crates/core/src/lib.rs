//! Parametric shortest paths in two phases.
//!
//! A [`ParametricGraph`] carries polynomial edge weights in one variable `x`.
//! Preprocessing turns it into *advice*; instantiation answers shortest-path
//! questions for a concrete `x = r` using only that advice, without solving
//! the instance from scratch. Three pipelines are provided:
//!
//! * [`linear`]: exact single-source distances for linear weights, via a
//!   feasibility interval and parametric Johnson potentials, then one Dijkstra.
//! * [`minbase`]: exact pair distances for polynomial weights, via
//!   piecewise-polynomial lower envelopes and a binary search per query.
//! * [`surplus`]: randomized all-pairs answers within an additive `epsilon`
//!   for linear weights, in constant time per pair.

// Errors carry exact rationals and are allowed to be large.
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod advice;
pub mod feasibility;
pub mod generate;
pub mod graph;
pub mod linear;
pub mod minbase;
pub mod oracle;
pub mod poly;
pub mod reweight;
pub mod surplus;

pub use graph::{
    EdgeId, InstantiatedGraph, NegativeCycle, ParametricGraph, ShortestPathResult, VertexId,
};
pub use poly::{Ext, Poly, Rational};
pub use feasibility::{compute_interval, FeasibleInterval};
pub use linear::{instantiate_sssp, preprocess_linear, LinearAdvice, SsspOutcome};
