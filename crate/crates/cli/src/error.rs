//! Error-to-exit-code mapping. Every error class gets its own nonzero code
//! so scripts can distinguish failure modes; clap keeps its usual code 2 for
//! usage errors.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Malformed document text (syntax; carries serde's line/column).
    Parse { path: String, message: String },
    /// Grammar-valid focal name that does not fit the document's frame.
    UnknownElement { path: String, element: String },
    Io { path: String, source: std::io::Error },
    Usage(String),
    Core(ordbel::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { path, message } => write!(f, "{path}: {message}"),
            CliError::UnknownElement { path, element } => {
                write!(f, "{path}: unknown element {element:?}")
            }
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ordbel::Error> for CliError {
    fn from(e: ordbel::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ordbel::Error as E;
        match self {
            CliError::Parse { .. } => 10,
            CliError::UnknownElement { .. } => 11,
            CliError::Io { .. } => 20,
            CliError::Usage(_) => 17,
            CliError::Core(core) => match core {
                E::NotNormalized { .. } => 12,
                E::NegativeMass { .. } => 13,
                E::EmptyFrame
                | E::InvalidLabel(_)
                | E::InvalidInterval { .. }
                | E::OrdinalOutOfRange { .. }
                | E::ElementOutOfFrame { .. }
                | E::IndexOutOfRange { .. }
                | E::ParseElement(_)
                | E::EmptyElement
                | E::EmptyElementList => 14,
                E::FrameMismatch => 15,
                E::TotalConflict => 16,
                E::TooFewSources { .. } | E::MixedArity(_) | E::EmptyCandidates => 17,
                E::InvalidDelta(_) | E::ParamOutOfRange { .. } => 18,
                E::MatrixMismatch { .. } | E::NegativeQuadraticForm(_) => 19,
            },
        }
    }
}
