use thiserror::Error;

/// Errors produced by the algebra, calculus and inversion routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FueterError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported algebra dimension {0} (supported: 1..=9)")]
    UnsupportedDimension(usize),

    #[error("m = {0} is even; the Fueter map is implemented for odd m only")]
    EvenDimension(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point outside the domain: {0}")]
    Domain(String),

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("quadrature did not converge on [{a}, {b}] (abs_tol {tol:e}, max depth {depth})")]
    Quadrature { a: f64, b: f64, tol: f64, depth: u32 },

    #[error("ODE integration failed at x0 = {0}")]
    Ode(f64),

    #[error("least-squares system is rank deficient")]
    RankDeficient,

    #[error("polynomial is not monogenic: Dirac operator leaves {0} nonzero terms")]
    NotMonogenic(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FueterError>;
