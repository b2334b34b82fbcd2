use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied value violates an operation precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A dense object would exceed the configured size cap.
    #[error("capacity exceeded: {what} needs {requested} but the cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// Not enough recorded events to form an estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The input is well-formed but not of the kind the analysis requires.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An internal numerical check failed; indicates a bug rather than bad input.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
