//! Numerical and exact-arithmetic tools for the Riemann zeta function on
//! the critical line: fast evaluation of `zeta(1/2 + it)` and Hardy's Z,
//! zero localization, weighted quadrature against the `|zeta|^2` measure,
//! moment predictions from shifted-moment conjectures, discrete zero-sum
//! statistics, and prime-sum estimates supporting the analytic arguments.
//!
//! The optional `reference` feature adds slow high-precision evaluators
//! used by the test suite as independent oracles.

pub mod dirichlet;
pub mod error;
pub mod gonek;
pub mod measure;
pub mod moments;
pub mod primes;
#[cfg(feature = "reference")]
pub mod reference;
pub mod wide;
pub mod zeta;

/// Crate version, re-exported so front ends can stamp run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use dirichlet::ProofSums;
pub use error::{Error, Result};
pub use gonek::{gonek_check, gonek_main_term, gonek_sum, GonekReport};
pub use measure::{DistributionReport, Estimate, GridSpec, QuadRule, Quadrature};
pub use moments::{GcdSumResult, RepetitionReport, TwistedMomentSpec};
pub use primes::{PrimeTable, Schedule};
pub use zeta::{CriticalSample, ZeroList};
