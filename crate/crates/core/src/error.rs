use thiserror::Error;

/// Failures of scalar bound evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("operands must be finite and strictly positive (a = {a}, b = {b})")]
    NonPositive { a: f64, b: f64 },
    #[error("weight must be finite, got {0}")]
    NonFiniteWeight(f64),
    #[error("depth must lie in 1..={max}, got {depth}")]
    InvalidDepth { depth: u32, max: u32 },
    #[error("{family} requires depth n >= {min}, got {depth}")]
    DepthTooSmall {
        family: &'static str,
        depth: u32,
        min: u32,
    },
    #[error("argument {value} outside the domain [{lo}, {hi}]")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },
    #[error("evaluation overflowed to a non-finite value")]
    Overflow,
}

/// Failures of the matrix kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    Shape { dim: usize, expected: usize, got: usize },
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not symmetric: residual {residual:e} exceeds {limit:e}")]
    Asymmetric { residual: f64, limit: f64 },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix is not positive definite: min eigenvalue {min_eig:e} <= threshold {threshold:e}")]
    NotPositiveDefinite { min_eig: f64, threshold: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("spectral power overflowed (eigenvalue {eigenvalue:e} raised to {power})")]
    Overflow { eigenvalue: f64, power: f64 },
    #[error(transparent)]
    Bound(#[from] BoundError),
}
