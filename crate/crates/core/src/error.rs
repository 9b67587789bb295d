use num_bigint::BigInt;
use thiserror::Error;

use crate::intpoly::NonUnimodularObstruction;
use crate::quad::RingKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("ring kinds differ: {0} vs {1}")]
    KindMismatch(RingKind, RingKind),

    #[error("prime does not split: {0}")]
    PrimeDoesNotSplit(BigInt),

    #[error("symbol undefined: {0}")]
    SymbolUndefined(String),

    #[error("pair not unimodular")]
    PairNotUnimodular,

    #[error("row not unimodular: {0}")]
    RowNotUnimodular(Box<NonUnimodularObstruction>),

    /// A named precondition of a pipeline step failed.
    #[error("precondition `{name}` failed: {detail}")]
    Precondition { name: &'static str, detail: String },

    #[error("no root in supported rings: {0}")]
    NoRoot(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            name,
            detail: detail.into(),
        }
    }

    /// True for errors caused by malformed input text rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
