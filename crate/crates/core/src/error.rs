//! Error type shared by every module.

/// Errors produced by the evaluation and verification routines.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// The lattice parameter violates the convergence domain Im(τ) > 0.
    #[error("lattice parameter must satisfy Im(tau) > 0 (got Im(tau) = {im_tau:.6e})")]
    LatticeNotConvergent { im_tau: f64 },

    /// The term cap was reached before the requested tail bound was met.
    #[error("series cap of {max_terms} terms reached before the tail bound {tol:.3e} was met")]
    TruncationExceeded { max_terms: usize, tol: f64 },

    /// A derivative order above the supported cap was requested.
    #[error("derivative order {order} exceeds the supported cap of {cap}")]
    UnsupportedOrder { order: usize, cap: usize },

    /// A Hermite degree above the supported cap was requested.
    #[error("Hermite degree {degree} exceeds the supported cap of {cap}")]
    DegreeOutOfRange { degree: usize, cap: usize },

    /// A series coefficient beyond the truncation order was requested.
    #[error("coefficient order ({n},{m}) exceeds the series orders ({p},{q})")]
    OrderExceeded {
        n: usize,
        m: usize,
        p: usize,
        q: usize,
    },

    /// Eigenstate parameters outside the valid domain.
    #[error("invalid eigenstate parameters: {0}")]
    InvalidSpec(String),

    /// The requested state has a near-zero norm; derived checks on it are
    /// not meaningful and are flagged instead of scored.
    #[error("state has near-zero norm {norm:.3e}")]
    DegenerateState { norm: f64 },

    /// An operation restricted to even dimensions was called with an odd one.
    #[error("dimension must be even (got {dim})")]
    OddDimension { dim: usize },
}

pub type Result<V> = std::result::Result<V, Error>;
