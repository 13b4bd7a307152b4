use thiserror::Error;

/// Errors raised while building scenarios or solving them.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument fell outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A scenario or one of its parts violates a structural invariant.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// A malformed record in an input file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    /// An operation needs more small cells than the instance has.
    #[error("degenerate instance: {0}")]
    Degenerate(String),

    /// Exhaustive enumeration refused because the instance is too large.
    #[error("exhaustive search refused: {n_sbs} small cells exceeds the enumeration cap of {cap}")]
    EnumerationCap { n_sbs: usize, cap: usize },

    /// A quality-of-service constraint is violated where it must hold.
    #[error("infeasible switch: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
