use thiserror::Error;

/// Which resource limit stopped a computation early.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapKind {
    /// Too many reduced words in an enumeration or commutation closure.
    Words,
    /// Too many commutation classes in a graph.
    Classes,
}

impl std::fmt::Display for CapKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CapKind::Words => f.write_str("word"),
            CapKind::Classes => f.write_str("class"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("word {word} is not a reduced word for {perm}")]
    NotReduced { word: String, perm: String },

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),

    #[error("labelling not realizable: label {label} does not transpose adjacent values")]
    Unrealizable { label: usize },

    #[error("{kind} cap of {cap} exceeded")]
    CapExceeded { kind: CapKind, cap: usize },

    #[error("graph is partial ({0} cap hit); metrics refused")]
    PartialGraph(CapKind),

    #[error("{0} is not unimodal")]
    NotUnimodal(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("property violation for {perm}: {detail}")]
    PropertyViolation { perm: String, detail: String },
}

impl Error {
    /// Process exit status for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } | Error::PartialGraph(_) => 3,
            Error::Unrealizable { .. } => 4,
            Error::PropertyViolation { .. } => 5,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
