use thiserror::Error;

use crate::Depth;

/// Errors raised by the library. `kind()` gives a stable machine-readable tag.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}` in alphabet")]
    DuplicateGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal fault: {0}")]
    InternalFault(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("subspace is not a direct summand")]
    NotDirectSummand,
    #[error("expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("genus {genus} exceeds the supported maximum {max}")]
    GenusTooLarge { genus: usize, max: usize },
    #[error("johnson depth {found} is below the required {required}")]
    DepthTooShallow { required: usize, found: Depth },
    #[error("word has weight {found} but weight at least {required} is required")]
    WeightTooLow { required: usize, found: Depth },
    #[error("boundary relation violated: {0}")]
    RelationViolated(String),
    #[error("endomorphism does not fix the boundary word")]
    BoundaryNotFixed,
    #[error("endomorphism is not invertible on first homology")]
    NotInvertible,
    #[error("mapping class and surface model use different boundary words")]
    BoundaryMismatch,
    #[error("quotient has torsion with elementary divisors {0:?}")]
    Torsion(Vec<String>),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownGenerator(_) => "unknown-generator",
            Error::DuplicateGenerator(_) => "duplicate-generator",
            Error::Parse(_) => "parse",
            Error::Precondition(_) => "precondition-violation",
            Error::InternalFault(_) => "internal-fault",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NotIsotropic => "not-isotropic",
            Error::NotDirectSummand => "not-a-direct-summand",
            Error::RankDeficient { .. } => "rank-deficient",
            Error::GenusTooLarge { .. } => "genus-too-large",
            Error::DepthTooShallow { .. } => "depth-too-shallow",
            Error::WeightTooLow { .. } => "weight-too-low",
            Error::RelationViolated(_) => "relation-violated",
            Error::BoundaryNotFixed => "boundary-not-fixed",
            Error::NotInvertible => "not-invertible",
            Error::BoundaryMismatch => "boundary-mismatch",
            Error::Torsion(_) => "torsion",
            Error::InvalidArgument(_) => "invalid-argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
