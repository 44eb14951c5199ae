//! Error type shared by every numerical routine in the crate.

use thiserror::Error;

/// Failures raised by the numerical routines.
///
/// Each variant carries a human-readable diagnostic describing the inputs that
/// triggered it, so that callers (notably the CLI) can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An adaptive quadrature exhausted its refinement budget.
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    /// A point lies outside the sector in which a formula is valid, or too
    /// close to a Stokes direction for the integrand to be evaluated safely.
    #[error("sector violation: {0}")]
    SectorViolation(String),
    /// The continuation formulas were asked for an integer order, where only
    /// limiting values exist.
    #[error("integer order is not supported by the continuation formulas: {0}")]
    IntegerOrder(String),
    /// A root finder was given an angle outside every documented bracket.
    #[error("no bracket for the minimising angle: {0}")]
    NoBracket(String),
    /// A simplified bound was requested below its minimal truncation index.
    #[error("truncation index too small: {0}")]
    TooSmallN(String),
    /// An iterative solver (Newton, path tracing) failed to converge.
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    /// Inputs violate a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
