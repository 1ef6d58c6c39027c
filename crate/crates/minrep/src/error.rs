use num_complex::Complex64;
use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not settle below the requested tolerance within the
    /// configured term cap. Carries the partial sum as a diagnostic.
    #[error("series did not converge within {terms} terms (partial sum {partial})")]
    SeriesDivergence { partial: Complex64, terms: usize },

    #[error("overflow in {context}")]
    Overflow { context: String },

    #[error("tridiagonal eigenvalue iteration did not converge")]
    EigenFailure,

    #[error("non-finite integrand value at quadrature node {node}")]
    BadNode { node: f64 },

    /// Signals that a group element lies in the maximal parabolic subgroup,
    /// where the generic factorization is undefined.
    #[error("element lies in the parabolic subgroup")]
    InParabolic,

    #[error("sector operator left the quasi-polynomial class: {0}")]
    Representation(String),

    #[error("resampling outside the grid support (r = {0})")]
    Extrapolation(f64),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
