use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The exact result exceeds the largest finite `f64`.
    #[error("{what} is outside the floating-point range")]
    Overflow { what: String },

    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature rule construction failed: {0}")]
    RuleConstruction(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
