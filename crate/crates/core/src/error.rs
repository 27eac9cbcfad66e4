use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate {kind} name {name:?}")]
    DuplicateName { kind: &'static str, name: String },

    #[error("{kind} name {name:?} contains a line break")]
    InvalidName { kind: &'static str, name: String },

    #[error("incidence has {actual_rows}x{actual_cols} cells, expected {rows}x{cols}")]
    Dimension { rows: usize, cols: usize, actual_rows: usize, actual_cols: usize },

    #[error("{kind} index {index} out of range (universe has {universe})")]
    IndexOutOfRange { kind: &'static str, index: usize, universe: usize },

    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },

    #[error("object lists differ: {}", .symmetric_difference.join(", "))]
    ObjectMismatch { symmetric_difference: Vec<String> },

    #[error("sets belong to different universes ({left} vs {right})")]
    UniverseMismatch { left: usize, right: usize },

    #[error("concept limit of {limit} reached; resume after intent {resume_after:?}")]
    ConceptLimit { limit: usize, resume_after: Vec<usize> },

    #[error("unknown diagram format {0:?} (expected diagram-json or dot)")]
    UnknownFormat(String),

    #[error("pair ({object}, {attribute}) is not in the incidence relation")]
    NotIncident { object: String, attribute: String },

    #[error("density of an empty block is undefined")]
    EmptyBlock,

    #[error("density threshold {0} outside [0, 1]")]
    ThresholdOutOfRange(f64),

    #[error(transparent)]
    Exploration(#[from] ExplorationError),

    #[error("session payload: {0}")]
    Session(String),
}

/// Rejections raised by an exploration session. An error leaves the
/// session untouched.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplorationError {
    #[error("a question is already awaiting an answer")]
    AwaitingAnswer,

    #[error("no question is pending")]
    NoPendingQuestion,

    #[error("session is finished")]
    Finished,

    #[error("session was stopped")]
    Stopped,

    #[error("object name {0:?} is already in the context")]
    NameCollision(String),

    #[error("counterexample does not violate the question: {0}")]
    NotViolating(String),

    #[error("counterexample contradicts accepted implication {0}")]
    ContradictsAccepted(String),

    #[error("hidden context is inconsistent with the working context: {0}")]
    InconsistentOracle(String),
}
