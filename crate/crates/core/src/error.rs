use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed cycle word `{word}`: {reason}")]
    CycleWord { word: String, reason: String },

    #[error("group order {order} exceeds the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        order: u128,
        cap: usize,
    },

    #[error("group elements are not enumerated (order {0})")]
    NotEnumerated(u128),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("spec file line {line}: {reason}")]
    SpecFile { line: usize, reason: String },

    #[error("certificate: {0}")]
    Certificate(String),

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
