use thiserror::Error;

use crate::types::ParseTypeError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseTypeError),

    #[error("{what} {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("multinomial parts sum to {sum}, expected {n}")]
    MultinomialMismatch { n: u64, sum: u64 },

    #[error("node of arity {arity} given {children} children")]
    ArityMismatch { arity: usize, children: usize },

    #[error("arity-1 nodes (2-gons) are not allowed in subdigon mode")]
    UnaryInSubdigon,

    #[error("arity must be at least 1")]
    ZeroArity,

    #[error("coefficient c1 must be nonzero")]
    ZeroLinearCoefficient,

    #[error("invalid coefficient literal {0:?}")]
    BadNumber(String),

    #[error("a polynomial problem needs at least c0 and c1")]
    TooFewCoefficients,

    #[error("grade {grade} exceeds the series truncation order {order}")]
    BeyondTruncation { grade: u64, order: u64 },

    #[error("coefficient table a_{j}[{k}] is missing")]
    MissingTableEntry { j: usize, k: usize },

    #[error("invalid shape encoding at byte {pos}: {msg}")]
    ShapeSyntax { pos: usize, msg: &'static str },

    #[error("invalid series line {line}: {msg}")]
    SeriesSyntax { line: usize, msg: String },
}
