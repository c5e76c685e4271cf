use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group element {0} is not valid for this group")]
    InvalidElement(i64),
    #[error("multiplication table violates the {axiom} axiom: {detail}")]
    Axiom { axiom: &'static str, detail: String },
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("{0}")]
    InvalidGroupSpec(String),
    #[error("operation requires a finite group")]
    InfiniteGroup,
    #[error("{0} must be nonempty")]
    Empty(&'static str),
    #[error("epsilon must be strictly positive")]
    NonPositiveEpsilon,
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("malformed JSON input: {0}")]
    Json(String),
    #[error("malformed rational {0:?}")]
    Rational(String),
}
