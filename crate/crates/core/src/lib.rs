//! Lexicographic discrete optimal transport under branching norms.
//!
//! The crate solves the discrete Kantorovich problem for costs
//! `c(x, y) = g(y - x)^p`, refines the optimal face by the squared
//! Euclidean transport cost, and checks the structure of the resulting
//! plans. Modules:
//!
//! - [`gauges`]: convex gauges, combinators and the cost.
//! - [`convexity_probe`]: strict-convexity and cylinder-like probes.
//! - [`lexot`]: the two-stage transportation simplex and a permutation oracle.
//! - [`diagnostics`]: monotonicity, map-ness and refinement experiments.
//! - [`cli`]: config files and the commands behind the `branching-ot` binary.

pub mod cli;
pub mod convexity_probe;
pub mod diagnostics;
pub mod gauges;
pub mod lexot;
pub mod point;
pub mod scalar;

pub use gauges::{CostSpec, Gauge, GaugeError};
pub use point::Point;
pub use scalar::Scalar;
