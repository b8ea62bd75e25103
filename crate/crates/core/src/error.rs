use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input (shape, genus mismatch, zero vector, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A basis spans an isotropic subspace of the wrong kind or a non-isotropic one.
    #[error("not a lagrangian: {0}")]
    NotLagrangian(String),

    /// Input violates a mathematical precondition, e.g. an open monodromy
    /// where a closed one is required.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal self-check failed (e.g. a bilinear form that must be
    /// symmetric is not). Never expected on valid input.
    #[error("construction bug: {0}")]
    ConstructionBug(String),

    /// A piecewise-constant function does not satisfy the cocycle identity.
    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    /// An enumeration exceeded its element budget.
    #[error("element budget of {budget} exceeded after {reached} elements")]
    Budget { budget: usize, reached: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
