use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the special functions, the Green's function assembly and
/// the scenario loader.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow evaluating order {n} at z = {z}")]
    Overflow { n: usize, z: Complex64 },

    #[error("index error: m = {m} exceeds n = {n}")]
    Index { n: usize, m: usize },

    #[error("order {n} exceeds the configured maximum {max}")]
    OrderLimit { n: usize, max: usize },

    #[error("radius {r} m lies on the interface r = {d} m")]
    Interface { r: f64, d: f64 },

    #[error("field point coincides with the source point")]
    Coincident,

    #[error("mode series did not converge by order {order}: residual {achieved:.3e} > tolerance {tolerance:.3e}")]
    NonConvergence {
        order: usize,
        achieved: f64,
        tolerance: f64,
    },

    #[error("interface system singular at order {n} (|det| = {det:.3e})")]
    SingularSystem { n: usize, det: f64 },

    #[error("series oracle tail bound not met after {terms} terms (tail {tail:.3e})")]
    TailBound { terms: usize, tail: f64 },

    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("at theta = {theta}, phi = {phi}, offset = {offset}: {source}")]
    AtGridPoint {
        theta: f64,
        phi: f64,
        offset: f64,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

impl Error {
    /// Strip grid-point context to reach the underlying failure.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtGridPoint { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
