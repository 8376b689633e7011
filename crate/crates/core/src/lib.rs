//! Numerical Jacobi θ₃ machinery and discrete Fourier transform eigenstate
//! diagnostics.
//!
//! The crate evaluates the Jacobi theta functions θ₂, θ₃, θ₄ and the
//! z-derivatives of θ₃ for complex arguments, builds the Gaussian–Hermite
//! eigenvector family of the unitary DFT through three independent
//! representations, and turns every identity the two structures satisfy into
//! a machine-checkable residual. The headline diagnostic quantifies how far
//! the eigenvector family is from being orthogonal as the dimension varies.
//!
//! Module map:
//!
//! - [`theta`]: θ₂/θ₃/θ₄ evaluation, z-derivatives, quasi-period reduction,
//!   the modular transform and the Gaussian-sum form.
//! - [`hermite`]: physicists' Hermite polynomials and the generating-function
//!   cross-check.
//! - [`polyseries`]: truncated Taylor-series arithmetic in one and two formal
//!   variables; realizes derivative-at-zero extraction without symbolics.
//! - [`eigenstates`]: the DFT eigenvector family `f_n(·, ξ)`, the DFT
//!   operator, and the eigenrelation residual.
//! - [`gram`]: inner products of eigenstates, closed-form evaluation through
//!   θ-derivatives, and the orthogonality-failure sweep.
//! - [`twovar`]: two-variable states built from shifted eigenstate products
//!   under a one-sided DFT, with empirical variant resolution.
//! - [`identities`]: θ₃ splitting / width-inversion identities verified as
//!   residuals over parameter grids.
//!
//! All numerical kernels are generic over the floating-point scalar through
//! [`Real`]; concrete `f64`-backed aliases are exported at the crate root.

pub mod eigenstates;
pub mod error;
pub mod gram;
pub mod hermite;
pub mod identities;
pub mod polyseries;
pub mod report;
pub mod scalar;
pub mod theta;
pub mod twovar;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use report::ResidualReport;
pub use scalar::Real;

/// Complex scalar with `f64` parts; the default precision of the library.
pub type C64 = Complex<f64>;
/// Complex scalar with `f32` parts.
pub type C32 = Complex<f32>;
