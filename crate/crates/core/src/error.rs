use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the region where a routine is implemented.
    #[error("domain error in {routine}: {detail}")]
    Domain { routine: &'static str, detail: String },
    #[error("pole of {routine} at {at}")]
    Pole { routine: &'static str, at: String },
    #[error("unsupported parameters for {routine}: {detail}")]
    Unsupported { routine: &'static str, detail: String },
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("parity condition violated: {0}")]
    Parity(String),
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: i32, right: i32 },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid group element: determinant {0}")]
    InvalidGroupElement(f64),
    #[error("point not in the upper half plane: {0}")]
    NotInUpperHalfPlane(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("residue did not converge: {0}")]
    NonConvergence(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(routine: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { routine, detail: detail.into() }
    }

    pub(crate) fn pole(routine: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole { routine, at: at.to_string() }
    }

    /// True for failures caused by the numeric region rather than malformed input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. }
                | Error::Pole { .. }
                | Error::Unsupported { .. }
                | Error::Divergence(_)
                | Error::NonConvergence(_)
        )
    }
}
