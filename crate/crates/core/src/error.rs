use thiserror::Error;

use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("variable index {index} out of range for a ring of arity {arity}")]
    VariableIndex { index: usize, arity: usize },

    #[error("{what}: expected {expected}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("degree explosion: total degree {degree} exceeds cap {cap}")]
    DegreeExplosion { degree: u32, cap: u32 },

    #[error("certificate does not certify this derivation as locally nilpotent")]
    Uncertified,

    #[error("action axiom violated: {0}")]
    ActionAxiom(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed grid: {0}")]
    MalformedGrid(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Stable machine-readable code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidRing(_) => "invalid_ring",
            Error::RingMismatch { .. } => "ring_mismatch",
            Error::VariableIndex { .. } => "variable_index",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::ExponentOverflow => "exponent_overflow",
            Error::DegreeExplosion { .. } => "degree_explosion",
            Error::Uncertified => "uncertified",
            Error::ActionAxiom(_) => "action_axiom",
            Error::Precondition(_) => "precondition",
            Error::MalformedGrid(_) => "malformed_grid",
            Error::Parse(_) => "parse_error",
        }
    }
}
