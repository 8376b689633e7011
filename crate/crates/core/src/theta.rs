//! Jacobi θ₂, θ₃, θ₄ for complex arguments with controlled truncation.
//!
//! The workhorse is the lattice sum
//!
//! ```text
//! θ₃(z, τ) = Σ_α exp(iπτα²) · exp(2πiαz),        Im(τ) > 0,
//! ```
//!
//! together with its z-derivatives. θ₄ and θ₂ are produced by argument
//! shifts:
//!
//! ```text
//! θ₄(z, τ) = θ₃(z + 1/2, τ)
//! θ₂(z, τ) = exp(iπτ/4 + iπz) · θ₃(z + τ/2, τ)
//! ```
//!
//! The α-sum is truncated symmetrically once the Gaussian tail drops below
//! the policy tolerance; for lattice parameters with very small imaginary
//! part the evaluation is routed through the modular transform
//! `θ₃(z, τ) = (−iτ)^{−1/2} exp(−iπz²/τ) θ₃(z/τ, −1/τ)`, which restores fast
//! convergence.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::report::{relative_residual, ResidualReport};
use crate::scalar::{lit, to_f64, KahanSum, Real};

/// Highest supported z-derivative order. Above this the factor (2πα)^p
/// inflates cancellation error past the library's residual targets.
pub const DERIVATIVE_ORDER_CAP: usize = 16;

/// Below this Im(τ) the evaluation reroutes through the modular transform.
pub const MODULAR_ROUTE_THRESHOLD: f64 = 0.05;

/// Truncation control for every lattice sum.
///
/// `tol` is an absolute tail-bound target; `max_terms` caps |α| and turns an
/// unmet bound into [`Error::TruncationExceeded`] instead of silent loss.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPolicy<T: Real> {
    pub tol: T,
    pub max_terms: usize,
}

impl<T: Real> TruncationPolicy<T> {
    pub fn new(tol: T, max_terms: usize) -> Self {
        Self { tol, max_terms }
    }

    /// Effective tolerance: never below a couple of ulps.
    #[inline]
    pub(crate) fn tol_eff(&self) -> T {
        self.tol.max(T::epsilon() + T::epsilon())
    }
}

impl<T: Real> Default for TruncationPolicy<T> {
    fn default() -> Self {
        // eps * 8 lands at ~1.8e-15 for f64, leaving headroom under the
        // 1e-11 residual targets.
        Self {
            tol: T::epsilon() * lit::<T>(8.0),
            max_terms: 20_000,
        }
    }
}

/// Argument bundle for one θ evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaArgs<T: Real> {
    pub z: Complex<T>,
    pub tau: Complex<T>,
    pub policy: TruncationPolicy<T>,
}

impl<T: Real> ThetaArgs<T> {
    pub fn new(z: Complex<T>, tau: Complex<T>) -> Self {
        Self {
            z,
            tau,
            policy: TruncationPolicy::default(),
        }
    }

    pub fn with_policy(mut self, policy: TruncationPolicy<T>) -> Self {
        self.policy = policy;
        self
    }
}

/// Result of pulling an argument back into the fundamental cell.
///
/// Satisfies `θ₃(z, τ) = prefactor · θ₃(z0, τ)` with
/// `z0 = z − int_shift − lattice_shift·τ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasiPeriodReduction<T: Real> {
    pub z0: Complex<T>,
    pub prefactor: Complex<T>,
    /// Integer translation removed along the period-1 direction.
    pub int_shift: i64,
    /// Integer translation removed along the τ direction.
    pub lattice_shift: i64,
}

fn check_lattice<T: Real>(tau: Complex<T>) -> Result<()> {
    if tau.im <= T::zero() {
        return Err(Error::LatticeNotConvergent {
            im_tau: to_f64(tau.im),
        });
    }
    Ok(())
}

/// Symmetric α-sum Σ_α (2πiα)^p exp(iπτα² + 2πiαz), no modular routing.
///
/// Starts from the Gaussian tail estimate
/// A = ceil(sqrt(ln(1/tol)/(π·Im τ))) + 2 + |Im z|/Im τ (plus a peak margin
/// for the polynomial factor) and keeps extending until two consecutive
/// pairs fall below the tolerance.
fn lattice_sum<T: Real>(
    z: Complex<T>,
    tau: Complex<T>,
    p: usize,
    policy: &TruncationPolicy<T>,
) -> Result<Complex<T>> {
    check_lattice(tau)?;
    let tol = policy.tol_eff();
    let im_tau = tau.im;
    let pi = T::PI();
    let two_pi = pi + pi;

    let ln_inv_tol = -(tol.ln());
    let mut a_min =
        (ln_inv_tol / (pi * im_tau)).sqrt().ceil() + lit::<T>(2.0) + (z.im.abs() / im_tau).ceil();
    if p > 0 {
        // peak of α^p·exp(−π Im τ α²) sits near sqrt(p / (2π Im τ))
        a_min = a_min + (lit::<T>(p as f64) / (two_pi * im_tau)).sqrt().ceil();
    }
    let a_min = a_min.to_usize().unwrap_or(usize::MAX).min(policy.max_terms);

    let i_pi_tau = Complex::new(T::zero(), pi) * tau;
    let two_pi_i_z = Complex::new(T::zero(), two_pi) * z;

    let mut acc = KahanSum::new();
    if p == 0 {
        acc.add(Complex::new(T::one(), T::zero()));
    }

    let mut quiet_pairs = 0usize;
    let mut alpha = 1usize;
    loop {
        let a = lit::<T>(alpha as f64);
        let quad = i_pi_tau * (a * a);
        let plus = (quad + two_pi_i_z * a).exp();
        let minus = (quad - two_pi_i_z * a).exp();
        let (plus, minus) = if p == 0 {
            (plus, minus)
        } else {
            let f_plus = (Complex::new(T::zero(), two_pi) * a).powu(p as u32);
            let f_minus = (Complex::new(T::zero(), -two_pi) * a).powu(p as u32);
            (plus * f_plus, minus * f_minus)
        };
        acc.add(plus);
        acc.add(minus);

        if alpha >= a_min && plus.norm() <= tol && minus.norm() <= tol {
            quiet_pairs += 1;
            if quiet_pairs >= 2 {
                return Ok(acc.value());
            }
        } else {
            quiet_pairs = 0;
        }
        if alpha >= policy.max_terms {
            return Err(Error::TruncationExceeded {
                max_terms: policy.max_terms,
                tol: to_f64(tol),
            });
        }
        alpha += 1;
    }
}

/// θ₃ by the plain lattice sum, with no modular rerouting.
///
/// This is the reference route used by the residual checks that verify the
/// modular transform itself; everything else should go through [`theta3`].
pub fn theta3_raw<T: Real>(args: &ThetaArgs<T>) -> Result<Complex<T>> {
    lattice_sum(args.z, args.tau, 0, &args.policy)
}

/// θ₃(z, τ).
///
/// For Im(τ) below [`MODULAR_ROUTE_THRESHOLD`] the sum converges slowly and
/// the evaluation is routed through the modular transform, provided the
/// transformed lattice parameter actually improves.
pub fn theta3<T: Real>(args: &ThetaArgs<T>) -> Result<Complex<T>> {
    check_lattice(args.tau)?;
    let im_tau = args.tau.im;
    if to_f64(im_tau) < MODULAR_ROUTE_THRESHOLD {
        let tau_inv = -args.tau.inv(); // −1/τ
        if tau_inv.im > im_tau {
            // (−iτ)^{−1/2}: Re(−iτ) > 0 for Im τ > 0, so the principal
            // square root never crosses the branch cut.
            let minus_i_tau = Complex::new(args.tau.im, -args.tau.re);
            let prefactor = minus_i_tau.sqrt().inv();
            let pi = T::PI();
            let gauss = (-Complex::new(T::zero(), pi) * args.z * args.z / args.tau).exp();
            let inner = ThetaArgs {
                z: args.z / args.tau,
                tau: tau_inv,
                policy: args.policy,
            };
            return Ok(prefactor * gauss * lattice_sum(inner.z, inner.tau, 0, &inner.policy)?);
        }
    }
    theta3_raw(args)
}

/// θ₄(z, τ) = θ₃(z + 1/2, τ).
pub fn theta4<T: Real>(args: &ThetaArgs<T>) -> Result<Complex<T>> {
    let half = Complex::new(lit::<T>(0.5), T::zero());
    theta3(&ThetaArgs {
        z: args.z + half,
        tau: args.tau,
        policy: args.policy,
    })
}

/// θ₂(z, τ) = exp(iπτ/4 + iπz) θ₃(z + τ/2, τ).
pub fn theta2<T: Real>(args: &ThetaArgs<T>) -> Result<Complex<T>> {
    let pi = T::PI();
    let i = Complex::new(T::zero(), T::one());
    let quarter = lit::<T>(0.25);
    let half = lit::<T>(0.5);
    let prefactor = (i * pi * (args.tau * quarter) + i * (args.z * pi)).exp();
    let shifted = ThetaArgs {
        z: args.z + args.tau * half,
        tau: args.tau,
        policy: args.policy,
    };
    Ok(prefactor * theta3(&shifted)?)
}

/// p-th z-derivative of θ₃: Σ_α (2πiα)^p exp(iπτα² + 2πiαz).
///
/// Orders above [`DERIVATIVE_ORDER_CAP`] are refused; the caller should use a
/// higher-precision scalar instead.
pub fn theta3_z_derivative<T: Real>(args: &ThetaArgs<T>, order: usize) -> Result<Complex<T>> {
    if order > DERIVATIVE_ORDER_CAP {
        return Err(Error::UnsupportedOrder {
            order,
            cap: DERIVATIVE_ORDER_CAP,
        });
    }
    lattice_sum(args.z, args.tau, order, &args.policy)
}

/// Pulls z back into the fundamental cell of the (1, τ) lattice.
///
/// Picks integers (m, n) with z0 = z − m − nτ, |Im z0| minimized along the τ
/// direction and |Re z0| ≤ 1/2, and returns the quasi-periodicity prefactor
/// exp(−iπτn² − 2πin·z0) so that θ₃(z, τ) = prefactor · θ₃(z0, τ).
pub fn reduce_quasi_period<T: Real>(
    z: Complex<T>,
    tau: Complex<T>,
) -> Result<QuasiPeriodReduction<T>> {
    check_lattice(tau)?;
    let n = (z.im / tau.im).round();
    let partial = z - tau * n;
    let m = partial.re.round();
    let z0 = Complex::new(partial.re - m, partial.im);

    let pi = T::PI();
    let i = Complex::new(T::zero(), T::one());
    let exponent = -i * pi * (tau * (n * n)) - i * ((pi + pi) * n) * z0;
    Ok(QuasiPeriodReduction {
        z0,
        prefactor: exponent.exp(),
        int_shift: m.to_i64().unwrap_or(0),
        lattice_shift: n.to_i64().unwrap_or(0),
    })
}

/// Real Gaussian comb σ·Σ_α exp(−π(σ/L)²(αL + z)²).
///
/// Equals θ₃(z/L, i/σ²); the width of each lobe is L/σ. This is an
/// evaluation route fully independent of the complex lattice sum, which makes
/// it usable as an oracle against [`theta3`].
pub fn gaussian_sum_form<T: Real>(
    z: T,
    period: T,
    sigma: T,
    policy: &TruncationPolicy<T>,
) -> Result<T> {
    if period <= T::zero() || sigma <= T::zero() {
        return Err(Error::InvalidSpec(format!(
            "gaussian sum needs period > 0 and sigma > 0 (got {}, {})",
            period, sigma
        )));
    }
    let tol = policy.tol_eff();
    let pi = T::PI();
    let ratio = sigma / period;
    let a_min = ((-(tol.ln()) / pi).sqrt() / (ratio * period) + (z / period).abs())
        .ceil()
        .to_usize()
        .unwrap_or(usize::MAX)
        .min(policy.max_terms)
        + 2;

    let term = |alpha: f64| -> T {
        let u = lit::<T>(alpha) * period + z;
        (-pi * ratio * ratio * u * u).exp()
    };
    let mut acc = KahanSum::new();
    acc.add(Complex::new(term(0.0), T::zero()));
    let mut alpha = 1usize;
    let mut quiet = 0usize;
    loop {
        let plus = term(alpha as f64);
        let minus = term(-(alpha as f64));
        acc.add(Complex::new(plus + minus, T::zero()));
        if alpha >= a_min && plus <= tol && minus <= tol {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sigma * acc.value().re);
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
}

/// Residual check of the modular transform
/// θ₃(z, iτ) = τ^{−1/2} exp(−πz²/τ) θ₃(z/(iτ), i/τ) for real τ > 0.
///
/// Both sides are evaluated through the raw lattice sum so the check stays
/// independent of the internal rerouting. For real z the Gaussian-sum form is
/// additionally checked against θ₃(z, iτ) and the larger residual is
/// reported.
pub fn modular_transform_check<T: Real>(
    z: Complex<T>,
    tau_pos: T,
    policy: &TruncationPolicy<T>,
) -> Result<ResidualReport> {
    if tau_pos <= T::zero() {
        return Err(Error::LatticeNotConvergent {
            im_tau: to_f64(tau_pos),
        });
    }
    let i = Complex::new(T::zero(), T::one());
    let pi = T::PI();
    let tau = i * tau_pos;

    let lhs = lattice_sum(z, tau, 0, policy)?;
    let prefactor = Complex::new(tau_pos.sqrt().recip(), T::zero());
    let gauss = (-Complex::new(pi / tau_pos, T::zero()) * z * z).exp();
    let transformed = lattice_sum(z / (i * tau_pos), i / tau_pos, 0, policy)?;
    let rhs = prefactor * gauss * transformed;
    let mut residual = relative_residual(lhs, rhs);

    if z.im == T::zero() {
        // Gaussian-sum form at L = 1, σ = 1/sqrt(τ).
        let sigma = tau_pos.sqrt().recip();
        let gsum = gaussian_sum_form(z.re, T::one(), sigma, policy)?;
        let r2 = relative_residual(lhs, Complex::new(gsum, T::zero()));
        residual = residual.max(r2);
    }

    Ok(ResidualReport {
        check: "theta3-modular-transform".into(),
        params: format!("z=({},{}) tau={}", z.re, z.im, tau_pos),
        lhs: Some(Complex::new(to_f64(lhs.re), to_f64(lhs.im))),
        rhs: Some(Complex::new(to_f64(rhs.re), to_f64(rhs.im))),
        residual,
        tol: 1e-11,
        pass: residual <= 1e-11,
    })
}
