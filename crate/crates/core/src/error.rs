use num_complex::Complex64;
use thiserror::Error;

/// Errors shared across the crate. Numerical failures carry the offending
/// point where one exists, since grid scans need to report witnesses.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by jet with zero leading coefficient")]
    DivisionByZeroLeadCoefficient,

    #[error("branch point at jet center (constant term too close to zero)")]
    BranchPointAtCenter,

    #[error("jet order {order} too low, need at least {needed}")]
    OrderTooLow { order: usize, needed: usize },

    #[error("syntax error at byte offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("exponent must be a constant expression")]
    NonConstantExponent,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("critical point: derivative vanishes at {z}")]
    CriticalPoint { z: Complex64 },

    #[error("degenerate dilatation: 1 - q^2 vanishes at {z}")]
    DegenerateDilatation { z: Complex64 },

    #[error("degenerate shear: 1 - lambda^2 omega vanishes at {z}")]
    DegenerateShear { z: Complex64 },

    #[error("quadrature did not converge: refinement discrepancy {discrepancy}")]
    QuadratureNotConverged { discrepancy: f64 },

    #[error("point {z} lies outside the polygon")]
    PointOutsideDomain { z: Complex64 },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("dilatation reciprocal undefined: |omega_hat| below tolerance at {z}")]
    ZeroDilatation { z: Complex64 },

    #[error("dilatation has no analytic square root: odd-order zero detected")]
    NotASquare,

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
