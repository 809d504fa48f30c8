use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A numeric parameter is outside its admissible domain (non-prime `p`, bad exponent, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The request exceeds a configured size cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// A caller violated an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A character label carries an invalid parameter.
    #[error("invalid character label: {0}")]
    Validity(String),
    /// A torus character is real where a complex one is required.
    #[error("degenerate parameter: {0}")]
    Degenerate(String),
    /// Two independently computed quantities disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    /// The requested case is not covered by any implemented route.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A square-class question could not be decided at the configured precision.
    #[error("undecided: {0}")]
    Undecided(String),
    /// An explicit module could not be built consistently.
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
