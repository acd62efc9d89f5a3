use thiserror::Error;

/// Errors raised by phasekit computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("unknown representation `{selector}` for algebra `{algebra}`")]
    UnknownRepresentation { algebra: String, selector: String },

    #[error("point ({detail}) lies outside the chart of the constraint surface")]
    OutOfChart { detail: String },

    #[error("matrix logarithm is branch-ambiguous: eigenvalue {re:+.6}{im:+.6}i is too close to the negative real axis")]
    BranchAmbiguity { re: f64, im: f64 },

    #[error("Gram matrix is ill-conditioned (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("symbols were sampled on different quadrature rules")]
    RuleMismatch,

    #[error("quadrature rule `{0}` has no antipodal pairing")]
    NoAntipodes(String),

    #[error("order {order} exceeds the supported maximum {max}")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("unsupported quadrature level {0}")]
    UnsupportedLevel(usize),

    #[error("unknown quadrature rule `{0}`")]
    UnknownRule(String),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("generator index clash: {0}")]
    IndexClash(String),

    #[error("expected an odd Grassmann element: {0}")]
    NotOdd(String),

    #[error("{0}")]
    Shape(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("|z| = {0} is not on the unit circle")]
    NotUnitModulus(f64),

    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed spec file {path}: {message}")]
    SpecFormat { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
