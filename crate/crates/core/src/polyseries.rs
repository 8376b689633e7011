//! Truncated Taylor-series arithmetic over complex coefficients.
//!
//! A [`TaylorSeries1`] holds coefficients of t⁰..t^P; a [`TaylorSeries2`]
//! holds the grid of coefficients of tᵖsᵠ. Together with [`theta_taylor`]
//! this is enough to realize every `∂ⁿ_t ∂ᵐ_s [...]|_{t=s=0}` expression in
//! the library without symbolic algebra: expand, multiply, extract.
//!
//! Orders stay tiny (≤ 24), so storage is dense and products are plain
//! Cauchy convolutions.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, KahanSum, Real};
use crate::theta::TruncationPolicy;

/// Hard cap on series orders; everything in the library needs far less.
pub const ORDER_CAP: usize = 24;

/// Truncated univariate Taylor series: `coeffs[p]` multiplies tᵖ.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries1<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> TaylorSeries1<T> {
    pub fn from_coeffs(coeffs: Vec<Complex<T>>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant term"
        );
        Self { coeffs }
    }

    /// Series holding a single constant, truncated at `order`.
    pub fn constant(value: Complex<T>, order: usize) -> Self {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of tᵖ (zero beyond the truncation order).
    pub fn coeff(&self, p: usize) -> Complex<T> {
        self.coeffs
            .get(p)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }
}

/// Truncated bivariate Taylor series: entry (p, q) multiplies tᵖsᵠ.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries2<T: Real> {
    coeffs: Vec<Complex<T>>,
    t_order: usize,
    s_order: usize,
}

impl<T: Real> TaylorSeries2<T> {
    pub fn zeros(t_order: usize, s_order: usize) -> Self {
        Self {
            coeffs: vec![Complex::new(T::zero(), T::zero()); (t_order + 1) * (s_order + 1)],
            t_order,
            s_order,
        }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.t_order, self.s_order)
    }

    pub fn coeff(&self, p: usize, q: usize) -> Complex<T> {
        if p > self.t_order || q > self.s_order {
            return Complex::new(T::zero(), T::zero());
        }
        self.coeffs[p * (self.s_order + 1) + q]
    }

    pub fn set_coeff(&mut self, p: usize, q: usize, v: Complex<T>) {
        assert!(p <= self.t_order && q <= self.s_order);
        self.coeffs[p * (self.s_order + 1) + q] = v;
    }
}

/// Exact binomial coefficient, converted into the working scalar.
fn binomial<T: Real>(n: usize, k: usize) -> T {
    let mut value: u128 = 1;
    for i in 0..k.min(n - k) {
        value = value * (n - i) as u128 / (i + 1) as u128;
    }
    lit::<T>(value as f64)
}

fn factorial<T: Real>(n: usize) -> T {
    let mut f = T::one();
    for k in 1..=n {
        f = f * lit::<T>(k as f64);
    }
    f
}

/// Taylor expansion in t of θ₃(shift + scale·t, τ):
/// coefficient of tᵖ is Σ_α exp(iπτα² + 2πiα·shift)·(2πiα·scale)ᵖ/p!.
///
/// All orders are accumulated in one pass over α with per-coefficient
/// compensated sums; the tail cut requires every tracked coefficient term to
/// fall below the policy tolerance.
pub fn theta_taylor<T: Real>(
    shift: Complex<T>,
    scale: Complex<T>,
    tau: Complex<T>,
    order: usize,
    policy: &TruncationPolicy<T>,
) -> Result<TaylorSeries1<T>> {
    if tau.im <= T::zero() {
        return Err(Error::LatticeNotConvergent {
            im_tau: to_f64(tau.im),
        });
    }
    if order > ORDER_CAP {
        return Err(Error::UnsupportedOrder {
            order,
            cap: ORDER_CAP,
        });
    }
    let tol = policy.tol_eff();
    let pi = T::PI();
    let two_pi = pi + pi;
    let im_tau = tau.im;

    let ln_inv_tol = -(tol.ln());
    let mut a_min = (ln_inv_tol / (pi * im_tau)).sqrt().ceil()
        + lit::<T>(2.0)
        + (shift.im.abs() / im_tau).ceil();
    if order > 0 {
        a_min = a_min + (lit::<T>(order as f64) / (two_pi * im_tau)).sqrt().ceil();
    }
    let a_min = a_min.to_usize().unwrap_or(usize::MAX).min(policy.max_terms);

    let i_pi_tau = Complex::new(T::zero(), pi) * tau;
    let two_pi_i_shift = Complex::new(T::zero(), two_pi) * shift;

    let mut acc: Vec<KahanSum<T>> = vec![KahanSum::new(); order + 1];
    // α = 0 contributes only to the constant coefficient.
    acc[0].add(Complex::new(T::one(), T::zero()));

    let mut quiet = 0usize;
    let mut alpha = 1usize;
    loop {
        let a = lit::<T>(alpha as f64);
        let quad = i_pi_tau * (a * a);
        let mut term_plus = (quad + two_pi_i_shift * a).exp();
        let mut term_minus = (quad - two_pi_i_shift * a).exp();
        let w_plus = Complex::new(T::zero(), two_pi) * a * scale;
        let w_minus = -w_plus;

        let mut max_mag = T::zero();
        for (p, slot) in acc.iter_mut().enumerate() {
            slot.add(term_plus);
            slot.add(term_minus);
            max_mag = max_mag.max(term_plus.norm()).max(term_minus.norm());
            if p < order {
                let inv = (lit::<T>((p + 1) as f64)).recip();
                term_plus = term_plus * w_plus * inv;
                term_minus = term_minus * w_minus * inv;
            }
        }

        if alpha >= a_min && max_mag <= tol {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        if alpha >= policy.max_terms {
            return Err(Error::TruncationExceeded {
                max_terms: policy.max_terms,
                tol: to_f64(tol),
            });
        }
        alpha += 1;
    }

    Ok(TaylorSeries1::from_coeffs(
        acc.into_iter().map(|k| k.value()).collect(),
    ))
}

/// Cauchy product truncated to the shorter carrier.
pub fn series_mul<T: Real>(a: &TaylorSeries1<T>, b: &TaylorSeries1<T>) -> TaylorSeries1<T> {
    let order = a.order().min(b.order());
    let mut out = vec![Complex::new(T::zero(), T::zero()); order + 1];
    for (p, slot) in out.iter_mut().enumerate() {
        let mut s = Complex::new(T::zero(), T::zero());
        for i in 0..=p {
            s = s + a.coeff(i) * b.coeff(p - i);
        }
        *slot = s;
    }
    TaylorSeries1::from_coeffs(out)
}

/// Bivariate Cauchy product truncated to the shorter carrier in each
/// variable.
pub fn series_mul2<T: Real>(a: &TaylorSeries2<T>, b: &TaylorSeries2<T>) -> TaylorSeries2<T> {
    let (ap, aq) = a.orders();
    let (bp, bq) = b.orders();
    let (p_ord, q_ord) = (ap.min(bp), aq.min(bq));
    let mut out = TaylorSeries2::zeros(p_ord, q_ord);
    for p in 0..=p_ord {
        for q in 0..=q_ord {
            let mut s = Complex::new(T::zero(), T::zero());
            for i in 0..=p {
                for j in 0..=q {
                    s = s + a.coeff(i, j) * b.coeff(p - i, q - j);
                }
            }
            out.set_coeff(p, q, s);
        }
    }
    out
}

/// Expansion of exp(c·t): coefficient of tᵖ is cᵖ/p!.
pub fn exp_linear<T: Real>(c: Complex<T>, order: usize) -> TaylorSeries1<T> {
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); order + 1];
    let mut term = Complex::new(T::one(), T::zero());
    coeffs[0] = term;
    for (p, slot) in coeffs.iter_mut().enumerate().skip(1) {
        term = term * c * lit::<T>(p as f64).recip();
        *slot = term;
    }
    TaylorSeries1::from_coeffs(coeffs)
}

/// Expansion of exp(c·t²): coefficient of t^{2k} is cᵏ/k!.
pub fn exp_quadratic<T: Real>(c: Complex<T>, order: usize) -> TaylorSeries1<T> {
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); order + 1];
    let mut term = Complex::new(T::one(), T::zero());
    coeffs[0] = term;
    let mut k = 1usize;
    while 2 * k <= order {
        term = term * c * lit::<T>(k as f64).recip();
        coeffs[2 * k] = term;
        k += 1;
    }
    TaylorSeries1::from_coeffs(coeffs)
}

/// Expansion of exp(c·t·s): entry (p, p) is cᵖ/p!, zero off the diagonal.
pub fn exp_bilinear<T: Real>(c: Complex<T>, orders: (usize, usize)) -> TaylorSeries2<T> {
    let mut out = TaylorSeries2::zeros(orders.0, orders.1);
    let mut term = Complex::new(T::one(), T::zero());
    out.set_coeff(0, 0, term);
    let diag = orders.0.min(orders.1);
    for p in 1..=diag {
        term = term * c * lit::<T>(p as f64).recip();
        out.set_coeff(p, p, term);
    }
    out
}

/// Substitutes u → t ± s into a univariate series g(u), producing the
/// bivariate grid g(t ± s) up to the given orders.
///
/// Entry (p, q) becomes `g_{p+q} · C(p+q, p) · (±1)^q`, so the input series
/// must carry coefficients up to order `t_order + s_order`.
pub fn substitute_two_var<T: Real>(
    series: &TaylorSeries1<T>,
    orders: (usize, usize),
    minus: bool,
) -> Result<TaylorSeries2<T>> {
    let (p_ord, q_ord) = orders;
    if series.order() < p_ord + q_ord {
        return Err(Error::OrderExceeded {
            n: p_ord,
            m: q_ord,
            p: series.order(),
            q: 0,
        });
    }
    let mut out = TaylorSeries2::zeros(p_ord, q_ord);
    for p in 0..=p_ord {
        for q in 0..=q_ord {
            let sign = if minus && q % 2 == 1 {
                -T::one()
            } else {
                T::one()
            };
            let v = series.coeff(p + q) * binomial::<T>(p + q, p) * sign;
            out.set_coeff(p, q, v);
        }
    }
    Ok(out)
}

/// n!·(coefficient of tⁿ) = ∂ⁿ_t(series) at t = 0.
pub fn extract_derivative<T: Real>(series: &TaylorSeries1<T>, n: usize) -> Result<Complex<T>> {
    if n > series.order() {
        return Err(Error::OrderExceeded {
            n,
            m: 0,
            p: series.order(),
            q: 0,
        });
    }
    Ok(series.coeff(n) * factorial::<T>(n))
}

/// n!·m!·(coefficient of tⁿsᵐ) = ∂ⁿ_t ∂ᵐ_s (series) at t = s = 0.
pub fn extract_mixed_derivative<T: Real>(
    series: &TaylorSeries2<T>,
    n: usize,
    m: usize,
) -> Result<Complex<T>> {
    let (p_ord, q_ord) = series.orders();
    if n > p_ord || m > q_ord {
        return Err(Error::OrderExceeded {
            n,
            m,
            p: p_ord,
            q: q_ord,
        });
    }
    Ok(series.coeff(n, m) * factorial::<T>(n) * factorial::<T>(m))
}
