use thiserror::Error;

/// Errors raised by ring construction, parsing and the search routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse ring spec `{spec}`: {reason}")]
    RingSpec { spec: String, reason: String },

    #[error("the zero ring is not allowed")]
    ZeroRing,

    #[error("table ring violates {law}: {detail}")]
    TableAxiom { law: &'static str, detail: String },

    #[error("ring axiom `{law}` fails: {detail}")]
    Axiom { law: &'static str, detail: String },

    #[error("modulus `{0}` is not monic of positive degree")]
    NotMonic(String),

    #[error("cannot parse element `{literal}` of {ring}: {reason}")]
    Literal {
        literal: String,
        ring: String,
        reason: String,
    },

    #[error("cannot parse matrix `{literal}`: {reason}")]
    MatrixLiteral { literal: String, reason: String },

    #[error("{what} needs at most {limit} elements, ring has {size}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse query: {0}")]
    Query(String),

    #[error("search budget of {0} nodes exhausted")]
    Budget(u64),

    #[error("not supported for {ring}: {what}")]
    Unsupported { ring: String, what: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn spec_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::RingSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}
