use thiserror::Error;

/// Errors produced by the precision kernel, the formulas and the analysis layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid precision: {digits} digits requested, at least {min} required")]
    InvalidPrecision { digits: u32, min: u32 },

    #[error("argument out of range: |x| must not exceed {limit}")]
    OverflowRange { limit: u64 },

    #[error("domain error in {operation}: {reason}")]
    Domain {
        operation: &'static str,
        reason: String,
    },

    #[error("precision unavailable: {requested} digits requested, only {available} stored")]
    PrecisionUnavailable { requested: u32, available: u32 },

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("row {index} (parameter {parameter}): {source}")]
    Row {
        index: usize,
        parameter: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("reference self-check failed: {0}")]
    SelfCheck(String),

    #[error("cannot parse decimal {0:?}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(operation: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            operation,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
