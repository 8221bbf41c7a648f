use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("states live in different spaces: {0} vs {1}")]
    SpaceMismatch(String, String),

    #[error("word {0} is not a basis vector of P2(1)")]
    NotInFockSpace(String),

    #[error("basis index overflows 64 bits for word {0}")]
    IndexOverflow(String),

    #[error("{what} = {value} exceeds the configured limit {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("word {0} is not a fermion basis vector")]
    NotAFermionVector(String),

    #[error("internal engine error: {0}")]
    Engine(String),
}

pub type Result<T> = std::result::Result<T, Error>;
