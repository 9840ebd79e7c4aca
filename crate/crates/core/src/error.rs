use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("order alpha = {alpha} lies outside the open interval (0,2)")]
    AlphaOutOfRange { alpha: f64 },

    #[error("non-finite integrand value at abscissa {abscissa}")]
    NonFinite { abscissa: f64 },

    #[error("requested accuracy {requested:e} not reached; achieved bound {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },

    #[error("alpha = {alpha} sits on the pole of index {index}; use residue() instead")]
    Pole { alpha: f64, index: usize },

    #[error("extrapolation did not converge: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
