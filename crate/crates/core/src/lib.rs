//! Pairs of maximum or perfect matchings that differ in many edges.
//!
//! Given a graph and an integer `k`, find two maximum (or perfect)
//! matchings whose symmetric difference has at least `k` edges. The crate
//! provides an exact polynomial solver for bipartite graphs, randomized and
//! deterministic color-coding solvers for general graphs, a quadratic
//! kernel for the variant with unconstrained matchings, and a brute-force
//! oracle for small instances.

pub mod bipartite;
pub mod fpt;
pub mod generate;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod matching;
pub mod oracle;
pub mod outcome;
pub mod universal;

pub use graph::{
    detect_bipartition, is_matching, symmetric_difference_size, Bipartition, Graph, GraphError, Matching, Side,
};
pub use outcome::{Decision, NoReason, SolveMode, SolveOutcome};
