//! Graph matching via convex relaxation over the unit simplex.
//!
//! The toolkit covers correlated random-graph samplers, the quadratic
//! alignment energy and its gradient, mirror-descent and projected-gradient
//! solvers over the simplex, spectral baselines, greedy rounding to a
//! permutation, structural diagnostics, mean-field population dynamics, and
//! a deterministic Monte-Carlo experiment harness.

pub mod diagnostics;
pub mod error;
pub mod experiment;
pub mod graph_models;
pub mod io;
pub mod population;
pub mod qap;
pub mod rounding;
pub mod seed;
pub mod solvers;
pub mod spectral;
pub mod types;

pub use error::{Error, Result};
pub use types::{Permutation, SymMatrix};
