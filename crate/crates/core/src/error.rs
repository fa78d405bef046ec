use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The normal-ordered product does not exist for these exponents.
    #[error("degenerate factorization: denominator magnitude {magnitude:e} below tolerance {tolerance:e}")]
    DegenerateFactorization { magnitude: f64, tolerance: f64 },

    /// The Fock truncation is too small for the state being represented.
    #[error("truncation unsafe: tail mass {tail_mass:e} exceeds {tail_tol:e} at N = {truncation}")]
    TruncationUnsafe {
        tail_mass: f64,
        tail_tol: f64,
        truncation: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
