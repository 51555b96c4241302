use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("node index {index} outside 0..={last}")]
    NodeOutOfRange { index: isize, last: usize },

    #[error("position {x} outside the domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("singular tridiagonal system: pivot {pivot:e} at row {row}")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("{0} boundary row does not involve its ghost coefficient")]
    DecoupledGhost(&'static str),

    #[error("non-finite value at node {node}")]
    NonFinite { node: isize },

    #[error("step {step} (t = {time}) failed: {source}")]
    StepFailed {
        step: usize,
        time: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("empty profile")]
    EmptyProfile,

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("invalid `{key}`: {reason}")]
    InvalidConfig { key: &'static str, reason: String },
}

impl Error {
    pub(crate) fn config(key: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            key,
            reason: reason.into(),
        }
    }

    pub(crate) fn at_step(self, step: usize, time: f64) -> Self {
        match self {
            already @ Error::StepFailed { .. } => already,
            other => Error::StepFailed {
                step,
                time,
                source: Box::new(other),
            },
        }
    }
}
