use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures raised by the exact-arithmetic layers.
///
/// Variants fall into four families: usage errors (a caller broke a
/// precondition), input errors (the data cannot satisfy the certificate's
/// hypothesis), parse errors, and internal errors (an identity that must hold
/// did not; these indicate a bug).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("division by zero")]
    DivisionByZero,

    #[error("`{dividend}` is not divisible by `{divisor}`")]
    NotDivisible { dividend: String, divisor: String },

    #[error("index ({row}, {col}) out of range for a matrix of order {order}")]
    IndexOutOfRange { row: usize, col: usize, order: usize },

    #[error("a matrix of order 1 has no minors")]
    EmptyMinor,

    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("evaluation set is empty")]
    EmptySet,

    #[error("duplicate element `{element}` at positions {first} and {second}")]
    DuplicateElement {
        element: String,
        first: usize,
        second: usize,
    },

    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("no term with exponents {requested} of maximal total degree {max_degree}")]
    TermNotMaximal { requested: String, max_degree: u32 },

    /// `axis` is zero-based; the message reports it one-based.
    #[error("axis {} needs exactly {required} points for the chosen term, found {actual}", .axis + 1)]
    SizeHypothesis {
        axis: usize,
        required: usize,
        actual: usize,
    },

    #[error("evaluation sets hold at most {max} points, got {order}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("malformed record: {0}")]
    Record(String),

    #[error("internal error: {0}")]
    Internal(String),
}
