use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("malformed algebra spec: {0}")]
    MalformedSpec(String),

    #[error("non-associative structure constants: (b{0} b{1}) b{2} != b{0} (b{1} b{2})")]
    NonAssociative(usize, usize, usize),

    #[error("unit law fails for basis element b{0}")]
    UnitLaw(usize),

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("odd trace: trace is nonzero on odd basis element b{0}")]
    OddTrace(usize),

    #[error("trace is not supersymmetric on (b{0}, b{1})")]
    NotSupersymmetric(usize, usize),

    #[error("degenerate trace form: Gram matrix is singular")]
    DegenerateTrace,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("coefficient not in {0}")]
    NotCentral(String),

    #[error("incompatible contexts: {0}")]
    IncompatibleContext(String),

    #[error("invalid symmetry data: {0}")]
    InvalidSymmetry(String),

    #[error("negative exponent at X_{0}; clear inverses with invert_x before reducing")]
    NegativeExponent(usize),

    #[error("reduction exceeded the step budget of {0} rewrites")]
    StepBudget(usize),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
