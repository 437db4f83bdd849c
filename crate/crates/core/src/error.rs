use thiserror::Error;

/// Crate-wide error type. Every fallible public operation reports through this.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mismatched generator tables: {0}")]
    MismatchedTables(String),
    #[error("generator index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("odd generators present: {0}")]
    OddGenerators(String),
    #[error("missing assignment for generator {0}")]
    MissingAssignment(String),
    #[error("mixed degrees: {0}")]
    MixedDegrees(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("series truncation too short: {0}")]
    TruncationTooShort(String),
    #[error("constant term must be 1: {0}")]
    NonUnitConstantTerm(String),
    #[error("constant term must be 0: {0}")]
    NonZeroConstantTerm(String),
    #[error("residual fiber components: {0}")]
    ResidualFiberComponents(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("quotient ring is not finite-dimensional")]
    InfiniteQuotient,
    #[error("too many variables: {got} (cap {cap})")]
    VariableCap { got: usize, cap: usize },
    #[error("numerical method did not converge: {0}")]
    NonConvergence(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
