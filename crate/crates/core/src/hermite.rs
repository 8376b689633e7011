//! Physicists' Hermite polynomials.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::polyseries::{exp_linear, exp_quadratic, extract_derivative, series_mul};
use crate::report::ResidualReport;
use crate::scalar::{lit, to_f64, Real};

/// Highest supported degree.
pub const DEGREE_CAP: usize = 64;

/// Order cap for the generating-function cross-check.
pub const GENERATING_ORDER_CAP: usize = 20;

/// H_n(x) by the three-term recurrence
/// H_{n+1} = 2x·H_n − 2n·H_{n−1}, H_0 = 1, H_1 = 2x.
pub fn hermite<T: Real>(n: usize, x: T) -> Result<T> {
    if n > DEGREE_CAP {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            cap: DEGREE_CAP,
        });
    }
    let two = lit::<T>(2.0);
    let mut prev = T::one();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = two * x;
    for k in 1..n {
        let next = two * x * cur - two * lit::<T>(k as f64) * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Cross-checks H_n(x) against the n-th Taylor coefficient (times n!) of the
/// generating function exp(2xt − t²), extracted with the series machinery.
pub fn hermite_generating_check<T: Real>(n: usize, x: T, order: usize) -> Result<ResidualReport> {
    if order > GENERATING_ORDER_CAP || n > order {
        return Err(Error::UnsupportedOrder {
            order,
            cap: GENERATING_ORDER_CAP,
        });
    }
    let lin = exp_linear(Complex::new(x + x, T::zero()), order);
    let quad = exp_quadratic(Complex::new(-T::one(), T::zero()), order);
    let series = series_mul(&lin, &quad);
    let extracted = extract_derivative(&series, n)?;
    let direct = Complex::new(hermite(n, x)?, T::zero());
    // relative residual against the recurrence value
    let denom = T::one() + direct.norm();
    let residual = to_f64((extracted - direct).norm() / denom);
    Ok(ResidualReport {
        check: "hermite-generating-function".into(),
        params: format!("n={} x={} order={}", n, x, order),
        lhs: Some(Complex::new(to_f64(direct.re), to_f64(direct.im))),
        rhs: Some(Complex::new(to_f64(extracted.re), to_f64(extracted.im))),
        residual,
        tol: 1e-9,
        pass: residual <= 1e-9,
    })
}
