use thiserror::Error;

/// Which of the two tilde relations a diagnostic refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Right identities from `E` (the relation L̃).
    Left,
    /// Left identities from `E` (the relation R̃).
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => f.write_str("L~"),
            Side::Right => f.write_str("R~"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Cayley table is empty")]
    EmptyTable,

    #[error("Cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("index {value} out of range for a structure of size {size}")]
    IndexOutOfRange { value: usize, size: usize },

    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error("generator list is empty")]
    NoGenerators,

    #[error("generators have mixed degrees ({first} and {other})")]
    MixedDegrees { first: usize, other: usize },

    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),

    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),

    #[error("not E-Fountain: the {side}-class of element {element} contains no idempotent of E")]
    NotEFountain { element: usize, side: Side },

    #[error("not reduced: ef = e and fe = e disagree for e = {e}, f = {f}")]
    NotReduced { e: usize, f: usize },

    #[error("internal consistency check failed: {0}")]
    InternalMismatch(String),

    #[error("the congruence condition does not hold")]
    CongruenceConditionRequired,

    #[error("structure is not E-Ehresmann")]
    NotEhresmann,

    #[error("category axiom failure: {0}")]
    AxiomFailure(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("relation is not contained in the order: ({a}, {b}) is missing")]
    NotContained { a: usize, b: usize },

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("diagonal value at {0} is not a unit")]
    NonInvertibleDiagonal(usize),

    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("subsets are not comparable: {0}")]
    NotComparable(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
