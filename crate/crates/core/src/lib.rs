//! Numerical tools for Wishart, product and Muttalib–Borodin ensembles:
//! special functions, Meijer G evaluation, finite-N and limiting
//! correlation kernels, macroscopic densities and Monte Carlo sampling.

pub mod error;
pub mod finite;
pub mod harness;
pub mod limits;
pub mod macroscopic;
pub mod meijer;
pub mod sampling;
pub mod special;
pub mod verify;

pub use error::{Error, Result};

/// Library version, recorded in every emitted artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
