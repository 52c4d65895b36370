use thiserror::Error;

/// Errors raised by the operator, moment and evolution routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a group element: constant term must be 1, found {0}")]
    NotGroupElement(String),

    #[error("not an algebra element: constant term must be 0, found {0}")]
    NotAlgebraElement(String),

    #[error("normalization degree {k} is below the top degree {top} of the operator")]
    InvalidNormalization { k: u32, top: u32 },

    #[error("truncation degree {available} is too low, need at least {needed}")]
    InsufficientTruncation { needed: u32, available: u32 },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("invalid Lévy triplet: {0}")]
    InvalidTriplet(String),

    #[error("convolution power must be nonnegative, got {0}")]
    NegativePower(i64),

    #[error("empty sampling box")]
    EmptyBox,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed textual input (JSON structure, rational syntax, index layout).
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotGroupElement(_) => "not_group_element",
            Error::NotAlgebraElement(_) => "not_algebra_element",
            Error::InvalidNormalization { .. } => "invalid_normalization",
            Error::InsufficientTruncation { .. } => "insufficient_truncation",
            Error::NotSymmetric => "not_symmetric",
            Error::InvalidTriplet(_) => "invalid_triplet",
            Error::NegativePower(_) => "negative_power",
            Error::EmptyBox => "empty_box",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse_error",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
