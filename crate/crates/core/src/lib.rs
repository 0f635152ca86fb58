//! Lattice order statistics and generalized semimodularity.

pub mod birkhoff;
pub mod constructions;
pub mod correlation;
pub mod descriptor;
pub mod error;
mod indexed;
pub mod lattice;
pub mod ordstats;
pub mod random;
pub mod regression;
pub mod reproduce;
pub mod report;
pub mod scalar;
pub mod semimod;

pub use error::{Error, Result};

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
