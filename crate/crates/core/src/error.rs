use thiserror::Error;

/// Errors raised by frame construction, mass validation, combination and
/// distance evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("frame must contain at least one label")]
    EmptyFrame,
    #[error("frame labels must be distinct and non-empty (offending label: {0:?})")]
    InvalidLabel(String),
    #[error("interval endpoints must satisfy 1 <= lo <= hi (got lo={lo}, hi={hi})")]
    InvalidInterval { lo: usize, hi: usize },
    #[error("ordinal {ordinal} is outside the frame of {n} states")]
    OrdinalOutOfRange { ordinal: usize, n: usize },
    #[error("element {element} does not fit a frame of {n} states")]
    ElementOutOfFrame { element: String, n: usize },
    #[error("enumeration index {index} is out of range ({size} elements)")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("cannot parse {0:?} as an element (expected \"empty\", \"wI\" or \"wI..wJ\")")]
    ParseElement(String),
    #[error("masses must sum to 1 (got {sum})")]
    NotNormalized { sum: f64 },
    #[error("mass assigned to {element} is negative ({mass})")]
    NegativeMass { element: String, mass: f64 },
    #[error("total conflict: all mass is assigned to the empty set")]
    TotalConflict,
    #[error("mass functions are defined on different frames")]
    FrameMismatch,
    #[error("operation requires a non-empty element")]
    EmptyElement,
    #[error("expected at least {expected} mass function(s), got {got}")]
    TooFewSources { expected: usize, got: usize },
    #[error("the mixed rule combines exactly two sources (got {0})")]
    MixedArity(usize),
    #[error("candidate set is empty")]
    EmptyCandidates,
    #[error("element list is empty")]
    EmptyElementList,
    #[error("delta weight {0} is outside [0, 1]")]
    InvalidDelta(f64),
    #[error("parameter {name} must lie in [0, 1] (got {value})")]
    ParamOutOfRange { name: &'static str, value: f64 },
    #[error("matrix covers {matrix_n} states but the frame has {frame_n}")]
    MatrixMismatch { matrix_n: usize, frame_n: usize },
    #[error("quadratic form evaluated to {0}, below the negative tolerance")]
    NegativeQuadraticForm(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
