use thiserror::Error;

/// Errors raised by the library. Messages are prefixed with the module that
/// produced them so the CLI can surface them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exterior: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("exterior: cannot parse scalar {0:?}")]
    ScalarParse(String),

    #[error("exterior: {0}")]
    Exterior(String),

    #[error("toric: {0}")]
    Toric(String),

    #[error("toric: operation not supported on {0}")]
    Unsupported(String),

    #[error("solver: degree k = {k} out of range 0..={n}")]
    DegreeOutOfRange { k: usize, n: usize },

    #[error(
        "engine: infinite weight families {patterns:?} at degree {k} need an explicit degree bound"
    )]
    MissingDegreeBound { k: usize, patterns: Vec<Vec<usize>> },

    #[error("engine: {0}")]
    Engine(String),

    #[error("oracle: {0}")]
    Oracle(String),

    #[error("report: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
