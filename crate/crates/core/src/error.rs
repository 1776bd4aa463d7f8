use alloc::string::String;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported Cartan type `{0}`")]
    UnsupportedType(String),
    #[error("group of order {order} exceeds the element cap of {cap}")]
    GroupTooLarge { order: u64, cap: usize },
    #[error("generator index {index} out of range 1..={rank}")]
    BadGeneratorIndex { index: usize, rank: usize },
    #[error("cannot parse element `{0}`")]
    BadElement(String),
    #[error("integer coefficient overflow")]
    CoefficientOverflow,
    #[error("polynomial in q has a negative exponent {0}")]
    NegativeQExponent(i32),
    #[error("operands belong to different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("triangularity violated for {basis} at w = {element}")]
    TriangularityViolation { basis: &'static str, element: String },
    #[error("inconsistent results: {0}")]
    Inconsistency(String),
    #[error("transition data for {0} is not available")]
    MissingCache(String),
    #[error("expected a vector in the {expected} basis, got {found}")]
    WrongBasis { expected: &'static str, found: &'static str },
    #[error("L({x}) is {s}-finite: T_{s} annihilates it (need sx < x)")]
    SFinite { s: usize, x: String },
    #[error("{s} is not a right descent of {x} (need xs < x)")]
    NotRightDescent { s: usize, x: String },
    #[error("{s}x > x required for x = {x}")]
    NotAscent { s: usize, x: String },
    #[error("v = 1 specialization has a negative coefficient at L({0})")]
    UngradedNegativity(String),
    #[error("input coefficient at L({0}) is not in N[v, v^-1]")]
    NegativeInputCoefficient(String),
    #[error("bar-solve has no solution at y = {0}")]
    NoSolution(String),
    #[error("element {element} has length {length}, above the subword cap {cap}")]
    TooLong { element: String, length: usize, cap: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
