use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BakerError {
    #[error("non-finite coordinate ({x}, {p})")]
    NonFinite { x: f64, p: f64 },

    #[error("torus coordinate ({x}, {p}) outside [0, 1)")]
    OffTorus { x: f64, p: f64 },

    #[error("point ({x}, {p}) lies on a region boundary")]
    OnBoundary { x: f64, p: f64 },

    #[error("N must be even and at least 2, got {0}")]
    OddDimension(usize),

    #[error("matrix dimension must be positive")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("cotangent pole at n = {n}, m = {m} (N = {dim})")]
    CotangentPole { dim: usize, n: i64, m: i64 },

    #[error("row index {0} must be odd")]
    EvenRow(i64),

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("quadrature did not converge: error estimate {estimate:e} exceeds {tolerance:e}")]
    QuadratureNotConverged { estimate: f64, tolerance: f64 },

    #[error("k_max = {k_max} too small for hbar = {hbar:e}; need pi * hbar * k_max > 1")]
    InsufficientKMax { hbar: f64, k_max: u64 },

    #[error("hbar must be positive and finite, got {0}")]
    InvalidHbar(f64),

    #[error("hbar = {hbar:e} does not match 1/(2 pi N) for N = {n}")]
    HbarMismatch { hbar: f64, n: usize },

    #[error("projected state has zero norm")]
    ZeroNorm,

    #[error("harmonic index {0} out of range")]
    HarmonicOutOfRange(i64),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, BakerError>;
