use thiserror::Error;

/// Errors raised by the engine. Variants carrying a numeric condition print
/// the condition by name so that a failed call explains itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable x{index} is out of range for ambient dimension {n}")]
    VariableOutOfRange { index: u32, n: u32 },

    #[error("input contains arc variable {var}; only weight-0 variables are allowed here")]
    PositiveWeight { var: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: u32, right: u32 },

    #[error("coefficient {coeff} of h0^{a}*h1^{b} is not divisible by {divisor}")]
    InexactDivision {
        a: u32,
        b: u32,
        coeff: String,
        divisor: String,
    },

    #[error("invalid complete-intersection type: {0}")]
    InvalidType(String),

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error(
        "dimension condition violated: requires {condition}; expected {expected}, got {actual}"
    )]
    DimensionCondition {
        condition: &'static str,
        expected: i64,
        actual: i64,
    },

    #[error("infinitely many lines expected through a general point: sum of degrees {sum} < n-1 = {bound}")]
    InfinitelyManyLines { sum: u32, bound: u32 },

    #[error("generically no lines through a general point: sum of degrees {sum} > n-1 = {bound}")]
    NoLinesExpected { sum: u32, bound: u32 },

    #[error("class is not a pure multiple of a single monomial ({terms} terms)")]
    NonPure { terms: usize },

    #[error("product is not symmetric in x1, x2; rewriting left remainder term x1^{a}*x2^{b}")]
    NotSymmetric { a: u32, b: u32 },

    #[error("expected Fano-scheme dimension is negative ({0})")]
    NegativeDimension(i64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("point is not on the variety")]
    PointNotOnVariety,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, ArcError>;
