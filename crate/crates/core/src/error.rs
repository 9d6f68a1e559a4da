use thiserror::Error;

/// Errors shared across the crate.
///
/// Numerical quality problems (quadrature error estimates exceeding their
/// threshold, unreached asymptotic regimes) are *not* errors; they surface as
/// flags on the result types. Errors are reserved for violated preconditions
/// and for certificates that cannot be produced.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation required a complete list of zeta zeros but the list
    /// could not be certified complete.
    #[error("zero list incomplete: found {found} zeros, counting formula expects {expected}")]
    IncompleteZeros { found: usize, expected: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
