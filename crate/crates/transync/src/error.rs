use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("transducer is not real-time: {0}")]
    NotRealTime(String),
    #[error("not real-time convertible: {0}")]
    NotRealTimeConvertible(String),
    #[error("no run")]
    NoRun,
    #[error("run not unique")]
    RunNotUnique,
    #[error("universal resynchronizer unsupported")]
    UniversalUnsupported,
    #[error("not uniformizable at this resynchronizer")]
    NotUniformizable,
    #[error("{what} exceeds the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("bound not computable at configured cap ({cap})")]
    BoundNotComputable { cap: usize },
    #[error("empty transformation sequence")]
    EmptySequence,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl Error {
    /// True for errors caused by an internal size cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::BoundNotComputable { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
