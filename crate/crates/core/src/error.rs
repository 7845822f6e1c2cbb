use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("presentation is disconnected")]
    Disconnected,
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("poset is not filtered: no upper bound for `{0}` and `{1}`")]
    NotFiltered(String, String),
    #[error("functor is not injective on objects")]
    NotInjectiveOnObjects,
    #[error("subcomplexes have different parents")]
    ParentMismatch,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("members do not cover: {0}")]
    NotCovering(String),
    #[error("cover is not good: {0}")]
    NotGood(String),
    #[error("not a cosheaf on the requested cover")]
    NotCosheaf,
    #[error("resource limit exceeded: {what} would need {needed}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("parse error: {0}")]
    Parse(String),
}
