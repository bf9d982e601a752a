//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic must be odd, got {0}")]
    EvenCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field order {q} exceeds the supported maximum {max}")]
    FieldTooLarge { q: u64, max: u64 },
    #[error("element index {index} is out of range for a field of order {q}")]
    ElementOutOfRange { index: u64, q: u64 },
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exponent {exponent} shares a factor with q-1 = {q_minus_one}")]
    ExponentNotCoprime { exponent: u32, q_minus_one: u64 },
    #[error("evaluation table is identically zero")]
    IdenticallyZero,
    #[error("exhaustive check needs {needed} items, cap is {cap}")]
    ThresholdExceeded { needed: u64, cap: u64 },
    #[error("requires {needed} bytes, budget is {budget} bytes")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("graph is not biregular: {0}")]
    NotBiregular(String),
    #[error("walk identity uses an auxiliary graph but none was supplied")]
    MissingAuxGraph,
    #[error("auxiliary graph parts ({0}, {1}) do not match ({2}, {3})")]
    AuxShapeMismatch(usize, usize, usize, usize),
    #[error("integer overflow in exact walk arithmetic")]
    Overflow,
    #[error("eigenvalue estimate did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("line {0}x + {1}y + {2} = 0 is degenerate (a^2 + b^2 = 0)")]
    DegenerateLine(u64, u64, u64),
    #[error("hyperplane is degenerate (sum of squared coefficients is 0)")]
    DegenerateHyperplane,
    #[error("line coefficients (a, b) must not both be zero")]
    ZeroDirection,
    #[error("quadruple does not satisfy lambda(a^2 + b^2) in SQ")]
    InvalidQuadruple,
    #[error("the two quadruples must be distinct")]
    EqualQuadruples,
    #[error("the three points are collinear")]
    CollinearPoints,
    #[error("the four points are coplanar")]
    CoplanarPoints,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    Parse(String),
}
