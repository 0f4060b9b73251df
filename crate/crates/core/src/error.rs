use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight vector is constant; its image lies in the center and carries no building point")]
    CentralSubgroup,
    #[error("the ideal is the unit ideal; the scheme it defines is empty")]
    EmptyScheme,
    #[error("Hilbert function did not stabilize up to degree {0}")]
    NotStabilized(usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not in the parabolic subgroup of the one-parameter subgroup")]
    NotInParabolic,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {0} piece of the ideal is zero or everything")]
    DegenerateDegree(usize),
    #[error("the ideal contains a nonzero linear form")]
    Degenerate,
    #[error("flat limit changed the Hilbert function at degree {0}")]
    FlatnessViolation(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("invalid {field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, got })
        }
    }
}
