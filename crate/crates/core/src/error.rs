use thiserror::Error;

/// Errors raised by the computational modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ill-formed homomorphism: {0}")]
    IllFormedHom(String),
    #[error("unknown space descriptor `{0}`")]
    UnknownDescriptor(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("cup product of degrees {0} and {1} exceeds dimension {2}")]
    DegreeOverflow(usize, usize, usize),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("obstruction class is nonzero: {0}")]
    ObstructionNonzero(String),
    #[error("base spaces differ: `{0}` vs `{1}`")]
    BaseMismatch(String, String),
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("unsupported twist: {0}")]
    UnsupportedTwist(String),
    #[error("pair is not dualizable: {0}")]
    NotDualizable(String),
    #[error("extension problem unresolved in degree {0}")]
    Unresolved(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// The variant name, used as a stable error code in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IllFormedHom(_) => "IllFormedHom",
            Error::UnknownDescriptor(_) => "UnknownDescriptor",
            Error::BadParameters(_) => "BadParameters",
            Error::DegreeOverflow(..) => "DegreeOverflow",
            Error::DegreeOutOfRange(_) => "DegreeOutOfRange",
            Error::InvalidClass(_) => "InvalidClass",
            Error::ObstructionNonzero(_) => "ObstructionNonzero",
            Error::BaseMismatch(..) => "BaseMismatch",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::UnsupportedTwist(_) => "UnsupportedTwist",
            Error::NotDualizable(_) => "NotDualizable",
            Error::Unresolved(_) => "Unresolved",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
