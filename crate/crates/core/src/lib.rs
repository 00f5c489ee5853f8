//! Continuous-time quantum-walk search with the generalized Laplacian
//! `L_alpha = L + alpha D` on signed weighted graphs, centred on the weighted
//! barbell graph.
//!
//! - [`linalg`]: dense symmetric operators, exact spectral evolution.
//! - [`graph`]: signed weighted graphs, `A`, `D`, `L_alpha`, the barbell.
//! - [`spin`]: the Heisenberg spin network and its single-excitation sector.
//! - [`search`]: search Hamiltonians, schedules, probability series, peaks.
//! - [`analysis`]: critical parameters and large-`N` closed forms.

pub mod analysis;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod roots;
pub mod search;
pub mod spin;
pub mod tolerance;

pub use error::{Error, Result};
