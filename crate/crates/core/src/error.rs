use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A brute-force enumeration would exceed its configured limit.
    #[error("{what} = {got} exceeds the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The learner and its oracle disagree about the rules of the game,
    /// e.g. the target lies outside the class.
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),

    /// An adversary was asked to answer with fewer than two live concepts.
    #[error("adversary conceded after {queries} queries")]
    Conceded { queries: usize },

    #[error("stage {stage} is not unitary (max deviation {deviation:.3e})")]
    NonUnitary { stage: usize, deviation: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
