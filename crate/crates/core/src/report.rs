//! The universal verification output: a named residual with a verdict.

use num_complex::Complex;

use crate::scalar::{to_f64, Real};

/// Outcome of one identity / property check.
///
/// `residual` is |lhs − rhs| / (1 + |lhs|), which stays meaningful near zeros
/// of θ₃ where a plain relative error would blow up. Vector-valued checks
/// leave `lhs`/`rhs` unset and store a norm-scaled residual.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub check: String,
    pub params: String,
    pub lhs: Option<Complex<f64>>,
    pub rhs: Option<Complex<f64>>,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualReport {
    /// Builds a report from two scalar values using the normalized residual.
    pub fn from_values<T: Real>(
        check: impl Into<String>,
        params: impl Into<String>,
        lhs: Complex<T>,
        rhs: Complex<T>,
        tol: f64,
    ) -> Self {
        let residual = relative_residual(lhs, rhs);
        Self {
            check: check.into(),
            params: params.into(),
            lhs: Some(Complex::new(to_f64(lhs.re), to_f64(lhs.im))),
            rhs: Some(Complex::new(to_f64(rhs.re), to_f64(rhs.im))),
            residual,
            tol,
            pass: residual <= tol,
        }
    }

    /// Builds a report from a precomputed residual (vector-valued checks).
    pub fn from_residual(
        check: impl Into<String>,
        params: impl Into<String>,
        residual: f64,
        tol: f64,
    ) -> Self {
        Self {
            check: check.into(),
            params: params.into(),
            lhs: None,
            rhs: None,
            residual,
            tol,
            pass: residual <= tol,
        }
    }
}

/// |lhs − rhs| / (1 + |lhs|).
pub fn relative_residual<T: Real>(lhs: Complex<T>, rhs: Complex<T>) -> f64 {
    let num = (lhs - rhs).norm();
    let den = T::one() + lhs.norm();
    to_f64(num / den)
}
