//! θ₃ splitting and width-inversion identities as residual checks.
//!
//! Each `verify_*` evaluates both sides of one identity over explicit
//! parameters and returns a [`ResidualReport`]. Finite sums run over exactly
//! one full residue system j = 0..N−1: the derivations partition an infinite
//! sum into modulo-N equivalence classes, which have exactly N
//! representatives, and the summands are j-periodic mod N.
//!
//! Two displays circulate with constants that fail numerically (the inverse
//! relation and the k = 0 collapse). Those checks report both the literal
//! constant and a corrected one, plus the per-point measured ratio, so the
//! resolution is recorded rather than silently substituted. The corrected
//! constants are ξ/√N and 1/N respectively; the DFT width-inversion display
//! needs 1/(ξ√N) in place of 1/√N, which is forced by the fractional-shift
//! identity at z = 0.

use num_complex::Complex;

use crate::error::Result;
use crate::report::ResidualReport;
use crate::scalar::{lit, to_f64, Real};
use crate::theta::{theta3, theta4, ThetaArgs, TruncationPolicy};

/// Parameter bundle shared by the identity checks.
///
/// Not every identity reads every field: the splitting identities use
/// `period` and `split`, the residue-system identities use `dim`, `shift`
/// and `width`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityParams<T: Real> {
    /// Free complex argument z.
    pub z: Complex<T>,
    /// Width ξ > 0.
    pub width: T,
    /// Dimension N ≥ 1.
    pub dim: usize,
    /// Fractional shift index k (reduced mod N).
    pub shift: i64,
    /// Period L > 0.
    pub period: T,
    /// Integer splitting width ξ ≥ 1.
    pub split: usize,
}

impl<T: Real> Default for IdentityParams<T> {
    fn default() -> Self {
        Self {
            z: Complex::new(T::zero(), T::zero()),
            width: T::one(),
            dim: 1,
            shift: 0,
            period: T::one(),
            split: 1,
        }
    }
}

impl<T: Real> IdentityParams<T> {
    fn describe(&self) -> String {
        format!(
            "z=({},{}) xi={} N={} k={} L={} split={}",
            self.z.re, self.z.im, self.width, self.dim, self.shift, self.period, self.split
        )
    }
}

/// A check whose displayed constant is validated numerically: the literal
/// report, the corrected report, and the constants themselves.
#[derive(Clone, Debug)]
pub struct ConstantFit {
    pub literal: ResidualReport,
    pub corrected: ResidualReport,
    pub literal_constant: f64,
    pub corrected_constant: f64,
    /// |lhs / sum| measured at these parameters.
    pub measured_constant: f64,
}

fn theta3_at<T: Real>(
    z: Complex<T>,
    tau: Complex<T>,
    policy: &TruncationPolicy<T>,
) -> Result<Complex<T>> {
    theta3(&ThetaArgs::new(z, tau).with_policy(*policy))
}

/// Fractional shift:
/// θ₃(z + k/N, iξ²/N) = (1/√(Nξ²))·Σ_j θ₃(iz/ξ² − j/N, i/(Nξ²))
///                       · exp(−πNz²/ξ² + 2πijk/N).
pub fn verify_fractional_shift<T: Real>(
    params: &IdentityParams<T>,
    policy: &TruncationPolicy<T>,
    tol: f64,
) -> Result<ResidualReport> {
    let n = params.dim;
    let n_t = lit::<T>(n as f64);
    let xi = params.width;
    let xi2 = xi * xi;
    let pi = T::PI();
    let i = Complex::new(T::zero(), T::one());

    let k_t = lit::<T>(params.shift.rem_euclid(n as i64) as f64);
    let lhs = theta3_at(
        params.z + Complex::new(k_t / n_t, T::zero()),
        Complex::new(T::zero(), xi2 / n_t),
        policy,
    )?;

    let inner_tau = Complex::new(T::zero(), (n_t * xi2).recip());
    let gauss = (-Complex::new(pi * n_t / xi2, T::zero()) * params.z * params.z).exp();
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..n {
        let j_t = lit::<T>(j as f64);
        let arg = i * params.z / xi2 - Complex::new(j_t / n_t, T::zero());
        let phase = (i * (pi + pi) * (j_t * k_t / n_t)).exp();
        sum = sum + theta3_at(arg, inner_tau, policy)? * phase;
    }
    let rhs = sum * gauss * (n_t * xi2).sqrt().recip();
    Ok(ResidualReport::from_values(
        "fractional-shift",
        params.describe(),
        lhs,
        rhs,
        tol,
    ))
}

/// Inverse relation:
/// θ₃(iz/ξ² − k/N, i/(Nξ²)) = C·Σ_j θ₃(z + j/N, iξ²/N)·exp(πNz²/ξ² − 2πijk/N),
/// with the literal constant C = √(N/ξ²) and the corrected C = ξ/√N.
pub fn verify_inverse_relation<T: Real>(
    params: &IdentityParams<T>,
    policy: &TruncationPolicy<T>,
    tol: f64,
) -> Result<ConstantFit> {
    let n = params.dim;
    let n_t = lit::<T>(n as f64);
    let xi = params.width;
    let xi2 = xi * xi;
    let pi = T::PI();
    let i = Complex::new(T::zero(), T::one());

    let k_t = lit::<T>(params.shift.rem_euclid(n as i64) as f64);
    let lhs = theta3_at(
        i * params.z / xi2 - Complex::new(k_t / n_t, T::zero()),
        Complex::new(T::zero(), (n_t * xi2).recip()),
        policy,
    )?;

    let gauss = (Complex::new(pi * n_t / xi2, T::zero()) * params.z * params.z).exp();
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..n {
        let j_t = lit::<T>(j as f64);
        let phase = (-i * (pi + pi) * (j_t * k_t / n_t)).exp();
        let term = theta3_at(
            params.z + Complex::new(j_t / n_t, T::zero()),
            Complex::new(T::zero(), xi2 / n_t),
            policy,
        )?;
        sum = sum + term * phase;
    }
    let sum = sum * gauss;

    let literal_c = (n_t / xi2).sqrt();
    let corrected_c = xi / n_t.sqrt();
    let measured = if sum.norm() > T::epsilon() {
        to_f64((lhs / sum).norm())
    } else {
        f64::NAN
    };
    Ok(ConstantFit {
        literal: ResidualReport::from_values(
            "inverse-relation/literal",
            params.describe(),
            lhs,
            sum * literal_c,
            tol,
        ),
        corrected: ResidualReport::from_values(
            "inverse-relation/corrected",
            params.describe(),
            lhs,
            sum * corrected_c,
            tol,
        ),
        literal_constant: to_f64(literal_c),
        corrected_constant: to_f64(corrected_c),
        measured_constant: measured,
    })
}

/// Width inversion under the DFT:
/// θ₃(k/N, iξ²/N) = (1/(ξ√N))·Σ_j θ₃(j/N, i/(Nξ²))·exp(2πijk/N).
///
/// The width of the left side is ξ, of the summed side ξ⁻¹ (read off the
/// Gaussian-sum form); the 1/ξ in the constant is forced by the
/// fractional-shift identity at z = 0 and is verified against it.
pub fn verify_width_inversion_dft<T: Real>(
    shift: i64,
    dim: usize,
    width: T,
    policy: &TruncationPolicy<T>,
    tol: f64,
) -> Result<ConstantFit> {
    let n_t = lit::<T>(dim as f64);
    let xi2 = width * width;
    let pi = T::PI();
    let i = Complex::new(T::zero(), T::one());
    let k_t = lit::<T>(shift.rem_euclid(dim as i64) as f64);

    let lhs = theta3_at(
        Complex::new(k_t / n_t, T::zero()),
        Complex::new(T::zero(), xi2 / n_t),
        policy,
    )?;
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..dim {
        let j_t = lit::<T>(j as f64);
        let phase = (i * (pi + pi) * (j_t * k_t / n_t)).exp();
        let term = theta3_at(
            Complex::new(j_t / n_t, T::zero()),
            Complex::new(T::zero(), (n_t * xi2).recip()),
            policy,
        )?;
        sum = sum + term * phase;
    }

    let literal_c = n_t.sqrt().recip();
    let corrected_c = (width * n_t.sqrt()).recip();
    let params = IdentityParams::<T> {
        width,
        dim,
        shift,
        ..Default::default()
    };
    Ok(ConstantFit {
        literal: ResidualReport::from_values(
            "width-inversion-dft/literal",
            params.describe(),
            lhs,
            sum * literal_c,
            tol,
        ),
        corrected: ResidualReport::from_values(
            "width-inversion-dft/corrected",
            params.describe(),
            lhs,
            sum * corrected_c,
            tol,
        ),
        literal_constant: to_f64(literal_c),
        corrected_constant: to_f64(corrected_c),
        measured_constant: if sum.norm() > T::epsilon() {
            to_f64((lhs / sum).norm())
        } else {
            f64::NAN
        },
    })
}

/// k = 0 collapse:
/// θ₃(Nz, iNξ²) = C·Σ_j θ₃(z + j/N, iξ²/N), literal C = √(N/ξ²),
/// corrected C = 1/N.
pub fn verify_k0_collapse<T: Real>(
    z: Complex<T>,
    dim: usize,
    width: T,
    policy: &TruncationPolicy<T>,
    tol: f64,
) -> Result<ConstantFit> {
    let n_t = lit::<T>(dim as f64);
    let xi2 = width * width;

    let lhs = theta3_at(z * n_t, Complex::new(T::zero(), n_t * xi2), policy)?;
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..dim {
        let j_t = lit::<T>(j as f64);
        sum = sum
            + theta3_at(
                z + Complex::new(j_t / n_t, T::zero()),
                Complex::new(T::zero(), xi2 / n_t),
                policy,
            )?;
    }

    let literal_c = (n_t / xi2).sqrt();
    let corrected_c = n_t.recip();
    let params = IdentityParams::<T> {
        z,
        width,
        dim,
        ..Default::default()
    };
    Ok(ConstantFit {
        literal: ResidualReport::from_values(
            "k0-collapse/literal",
            params.describe(),
            lhs,
            sum * literal_c,
            tol,
        ),
        corrected: ResidualReport::from_values(
            "k0-collapse/corrected",
            params.describe(),
            lhs,
            sum * corrected_c,
            tol,
        ),
        literal_constant: to_f64(literal_c),
        corrected_constant: to_f64(corrected_c),
        measured_constant: if sum.norm() > T::epsilon() {
            to_f64((lhs / sum).norm())
        } else {
            f64::NAN
        },
    })
}

/// Modulo-ξ equivalence-class split:
/// θ₃(z/L, iξ²/L) = (1/ξ)·Σ_{j=0}^{ξ−1} θ₃((z + jL)/(ξL), i/L).
pub fn verify_equivalence_class_split<T: Real>(
    z: Complex<T>,
    period: T,
    split: usize,
    policy: &TruncationPolicy<T>,
    tol: f64,
) -> Result<ResidualReport> {
    let xi_t = lit::<T>(split as f64);
    let lhs = theta3_at(
        z / period,
        Complex::new(T::zero(), xi_t * xi_t / period),
        policy,
    )?;
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..split {
        let j_t = lit::<T>(j as f64);
        sum = sum
            + theta3_at(
                (z + Complex::new(j_t * period, T::zero())) / (xi_t * period),
                Complex::new(T::zero(), period.recip()),
                policy,
            )?;
    }
    let rhs = sum / xi_t;
    let params = IdentityParams::<T> {
        z,
        period,
        split,
        ..Default::default()
    };
    Ok(ResidualReport::from_values(
        "equivalence-class-split",
        params.describe(),
        lhs,
        rhs,
        tol,
    ))
}

/// Complementary split:
/// θ₃(z/L, i/L) = (1/ξ)·Σ_{j=0}^{ξ−1} θ₃(z/(ξL) + j/ξ, i/(Lξ²)).
pub fn verify_complementary_split<T: Real>(
    z: Complex<T>,
    period: T,
    split: usize,
    policy: &TruncationPolicy<T>,
    tol: f64,
) -> Result<ResidualReport> {
    let xi_t = lit::<T>(split as f64);
    let lhs = theta3_at(z / period, Complex::new(T::zero(), period.recip()), policy)?;
    let inner_tau = Complex::new(T::zero(), (period * xi_t * xi_t).recip());
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..split {
        let j_t = lit::<T>(j as f64);
        sum = sum
            + theta3_at(
                z / (xi_t * period) + Complex::new(j_t / xi_t, T::zero()),
                inner_tau,
                policy,
            )?;
    }
    let rhs = sum / xi_t;
    let params = IdentityParams::<T> {
        z,
        period,
        split,
        ..Default::default()
    };
    Ok(ResidualReport::from_values(
        "complementary-split",
        params.describe(),
        lhs,
        rhs,
        tol,
    ))
}

/// Combined width inversion:
/// θ₃(zξ/L, iξ²/L) = (1/ξ²)·Σ_{j,j'} θ₃(z/(ξL) + j'/ξ + j/ξ², i/(Lξ²)).
pub fn verify_combined_inversion<T: Real>(
    z: Complex<T>,
    period: T,
    split: usize,
    policy: &TruncationPolicy<T>,
    tol: f64,
) -> Result<ResidualReport> {
    let xi_t = lit::<T>(split as f64);
    let lhs = theta3_at(
        z * xi_t / period,
        Complex::new(T::zero(), xi_t * xi_t / period),
        policy,
    )?;
    let inner_tau = Complex::new(T::zero(), (period * xi_t * xi_t).recip());
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..split {
        for jp in 0..split {
            let j_t = lit::<T>(j as f64);
            let jp_t = lit::<T>(jp as f64);
            sum = sum
                + theta3_at(
                    z / (xi_t * period)
                        + Complex::new(jp_t / xi_t + j_t / (xi_t * xi_t), T::zero()),
                    inner_tau,
                    policy,
                )?;
        }
    }
    let rhs = sum / (xi_t * xi_t);
    let params = IdentityParams::<T> {
        z,
        period,
        split,
        ..Default::default()
    };
    Ok(ResidualReport::from_values(
        "combined-width-inversion",
        params.describe(),
        lhs,
        rhs,
        tol,
    ))
}

/// ξ = 2 duplication: θ₃(2z/L, 4i/L) = ½[θ₃(z/L, i/L) + θ₄(z/L, i/L)].
pub fn verify_duplication<T: Real>(
    z: Complex<T>,
    period: T,
    policy: &TruncationPolicy<T>,
    tol: f64,
) -> Result<ResidualReport> {
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let lhs = theta3_at(
        z * two / period,
        Complex::new(T::zero(), four / period),
        policy,
    )?;
    let tau = Complex::new(T::zero(), period.recip());
    let t3 = theta3_at(z / period, tau, policy)?;
    let t4 = theta4(&ThetaArgs::new(z / period, tau).with_policy(*policy))?;
    let rhs = (t3 + t4) / two;
    let params = IdentityParams::<T> {
        z,
        period,
        split: 2,
        ..Default::default()
    };
    Ok(ResidualReport::from_values(
        "duplication-xi2",
        params.describe(),
        lhs,
        rhs,
        tol,
    ))
}

/// Default verification grid shared by the suite and the acceptance tests:
/// z ∈ {0, ±0.1, ±0.37}, N ∈ {1,2,3,5,8,12}, ξ ∈ {0.5, 1, 1.3, 2},
/// L ∈ {0.8, 1, 2.5}, integer ξ ∈ {1,2,3,5}.
pub mod grid {
    pub const Z: [f64; 5] = [0.0, 0.1, -0.1, 0.37, -0.37];
    pub const DIMS: [usize; 6] = [1, 2, 3, 5, 8, 12];
    pub const WIDTHS: [f64; 4] = [0.5, 1.0, 1.3, 2.0];
    pub const PERIODS: [f64; 3] = [0.8, 1.0, 2.5];
    pub const SPLITS: [usize; 4] = [1, 2, 3, 5];
}

/// Result of running every identity over the default grid.
#[derive(Clone, Debug)]
pub struct IdentitySuite {
    pub reports: Vec<ResidualReport>,
    /// Constant-fit records for the displays whose constants required
    /// numerical validation.
    pub fits: Vec<ConstantFit>,
    pub pass: bool,
}

/// Runs the full identity suite at tolerance `tol` over the default grid.
///
/// Pass/fail counts the corrected-constant reports for the flagged displays;
/// the literal reports ride along in `fits` for the record.
pub fn run_identity_suite<T: Real>(
    tol: f64,
    policy: &TruncationPolicy<T>,
) -> Result<IdentitySuite> {
    let mut reports = Vec::new();
    let mut fits = Vec::new();

    for &dim in &grid::DIMS {
        for &width in &grid::WIDTHS {
            let width_t = lit::<T>(width);
            for &z in &grid::Z {
                let z_c = Complex::new(lit::<T>(z), T::zero());
                for shift in [0i64, 1, 2] {
                    if shift as usize >= dim && shift != 0 {
                        continue;
                    }
                    let params = IdentityParams::<T> {
                        z: z_c,
                        width: width_t,
                        dim,
                        shift,
                        ..Default::default()
                    };
                    reports.push(verify_fractional_shift(&params, policy, tol)?);
                    let fit = verify_inverse_relation(&params, policy, tol)?;
                    reports.push(fit.corrected.clone());
                    fits.push(fit);
                }
                let fit = verify_k0_collapse(z_c, dim, width_t, policy, tol)?;
                reports.push(fit.corrected.clone());
                fits.push(fit);
            }
            for shift in [0i64, 1] {
                if shift as usize >= dim && shift != 0 {
                    continue;
                }
                let fit = verify_width_inversion_dft(shift, dim, width_t, policy, tol)?;
                reports.push(fit.corrected.clone());
                fits.push(fit);
            }
        }
    }

    for &period in &grid::PERIODS {
        let period_t = lit::<T>(period);
        for &split in &grid::SPLITS {
            for &z in &grid::Z {
                let z_c = Complex::new(lit::<T>(z), T::zero());
                reports.push(verify_equivalence_class_split(
                    z_c, period_t, split, policy, tol,
                )?);
                reports.push(verify_complementary_split(
                    z_c, period_t, split, policy, tol,
                )?);
                reports.push(verify_combined_inversion(
                    z_c, period_t, split, policy, tol,
                )?);
            }
        }
        for &z in &grid::Z {
            let z_c = Complex::new(lit::<T>(z), T::zero());
            reports.push(verify_duplication(z_c, period_t, policy, tol)?);
        }
    }

    let pass = reports.iter().all(|r| r.pass);
    Ok(IdentitySuite {
        reports,
        fits,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn policy() -> TruncationPolicy<f64> {
        TruncationPolicy::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    use crate::theta::theta3;

    #[test]
    fn fractional_shift_trivial_single_point() {
        let params = IdentityParams::<f64>::default();
        let rep = verify_fractional_shift(&params, &policy(), 1e-12).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
    }

    #[test]
    fn fractional_shift_generic_point() {
        let params = IdentityParams::<f64> {
            z: c(0.1, 0.0),
            width: 1.3,
            dim: 5,
            shift: 2,
            ..Default::default()
        };
        let rep = verify_fractional_shift(&params, &policy(), 1e-9).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
    }

    #[test]
    fn fractional_shift_full_k_sweep() {
        for k in 0..8i64 {
            let params = IdentityParams::<f64> {
                width: 0.7,
                dim: 8,
                shift: k,
                ..Default::default()
            };
            let rep = verify_fractional_shift(&params, &policy(), 1e-9).unwrap();
            assert!(rep.pass, "k={} residual {}", k, rep.residual);
        }
    }

    #[test]
    fn inverse_relation_corrected_passes_literal_fails() {
        let params = IdentityParams::<f64> {
            z: c(0.2, 0.0),
            width: 1.1,
            dim: 6,
            shift: 1,
            ..Default::default()
        };
        let fit = verify_inverse_relation(&params, &policy(), 1e-9).unwrap();
        assert!(fit.corrected.pass, "corrected {}", fit.corrected.residual);
        assert!(
            !fit.literal.pass,
            "literal should fail at xi != 1/sqrt(N)·..."
        );
        assert!((fit.measured_constant - fit.corrected_constant).abs() <= 1e-9);
    }

    #[test]
    fn inverse_relation_single_point_reduces_to_transform() {
        let params = IdentityParams::<f64> {
            dim: 1,
            ..Default::default()
        };
        let fit = verify_inverse_relation(&params, &policy(), 1e-9).unwrap();
        assert!(fit.corrected.pass);
    }

    #[test]
    fn round_trip_composition() {
        // push the shifted-theta vector through the inverse relation and then
        // the forward relation; the composition must reproduce the start
        let n = 4usize;
        let xi = 1.2f64;
        let z = c(0.05, 0.0);
        let p = policy();
        let pi = std::f64::consts::PI;
        let n_f = n as f64;

        let start: Vec<Complex64> = (0..n)
            .map(|k| {
                theta3(
                    &ThetaArgs::new(z + c(k as f64 / n_f, 0.0), c(0.0, xi * xi / n_f))
                        .with_policy(p),
                )
                .unwrap()
            })
            .collect();
        // inverse relation: v_k = (xi/sqrt(N)) e^{pi N z^2/xi^2} sum_j u_j e^{-2pi i jk/N}
        let gauss = (c(pi * n_f / (xi * xi), 0.0) * z * z).exp();
        let v: Vec<Complex64> = (0..n)
            .map(|k| {
                let mut s = c(0.0, 0.0);
                for (j, u) in start.iter().enumerate() {
                    s += u * (-Complex64::i() * 2.0 * pi * (j * k) as f64 / n_f).exp();
                }
                s * gauss * (xi / n_f.sqrt())
            })
            .collect();
        // forward relation: u_k = (1/sqrt(N xi^2)) e^{-pi N z^2/xi^2} sum_j v_j e^{2pi i jk/N}
        let inv_gauss = (c(-pi * n_f / (xi * xi), 0.0) * z * z).exp();
        for (k, want) in start.iter().enumerate() {
            let mut s = c(0.0, 0.0);
            for (j, vj) in v.iter().enumerate() {
                s += vj * (Complex64::i() * 2.0 * pi * (j * k) as f64 / n_f).exp();
            }
            let recovered = s * inv_gauss / (n_f * xi * xi).sqrt();
            let residual = (recovered - want).norm() / (1.0 + want.norm());
            assert!(residual <= 1e-9, "k={} residual {}", k, residual);
        }
    }

    #[test]
    fn width_inversion_self_dual() {
        let fit = verify_width_inversion_dft(1, 4, 1.0f64, &policy(), 1e-10).unwrap();
        assert!(fit.corrected.pass);
        // at xi = 1 the literal and corrected constants coincide
        assert!(fit.literal.pass);
    }

    #[test]
    fn width_inversion_wide_and_narrow() {
        for k in 0..8i64 {
            let fit = verify_width_inversion_dft(k, 8, 2.0f64, &policy(), 1e-9).unwrap();
            assert!(fit.corrected.pass, "k={} r={}", k, fit.corrected.residual);
        }
        let fit = verify_width_inversion_dft(1, 3, 0.5f64, &policy(), 1e-9).unwrap();
        assert!(fit.corrected.pass);
    }

    #[test]
    fn k0_collapse_corrected_constant() {
        let fit = verify_k0_collapse(c(0.05, 0.0), 4, 1.0f64, &policy(), 1e-9).unwrap();
        assert!(fit.corrected.pass, "residual {}", fit.corrected.residual);
        assert!((fit.measured_constant - 0.25).abs() < 1e-12);
        let fit = verify_k0_collapse(c(0.0, 0.0), 9, 1.5f64, &policy(), 1e-9).unwrap();
        assert!(fit.corrected.pass);
    }

    #[test]
    fn class_split_unit_is_exact() {
        let rep = verify_equivalence_class_split(c(0.3, 0.0), 1.0f64, 1, &policy(), 1e-13).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
    }

    #[test]
    fn class_split_matches_duplication() {
        let rep = verify_equivalence_class_split(c(0.3, 0.0), 1.0f64, 2, &policy(), 1e-10).unwrap();
        assert!(rep.pass);
        let dup = verify_duplication(c(0.3, 0.0), 1.0f64, &policy(), 1e-10).unwrap();
        assert!(dup.pass, "duplication residual {}", dup.residual);
    }

    #[test]
    fn class_split_wide() {
        let rep = verify_equivalence_class_split(c(-0.7, 0.0), 2.5f64, 5, &policy(), 1e-9).unwrap();
        assert!(rep.pass, "residual {}", rep.residual);
    }

    #[test]
    fn complementary_split_cases() {
        for (z, l, xi) in [(0.4, 1.0, 2usize), (0.1, 0.8, 3), (0.0, 1.0, 1)] {
            let rep = verify_complementary_split(c(z, 0.0), l, xi, &policy(), 1e-9).unwrap();
            assert!(rep.pass, "z={} L={} xi={} r={}", z, l, xi, rep.residual);
        }
    }

    #[test]
    fn combined_inversion_cases() {
        for (z, l, xi) in [(0.2, 1.0, 2usize), (-1.1, 3.0, 4), (0.0, 1.0, 1)] {
            let rep = verify_combined_inversion(c(z, 0.0), l, xi, &policy(), 1e-9).unwrap();
            assert!(rep.pass, "z={} L={} xi={} r={}", z, l, xi, rep.residual);
        }
    }

    #[test]
    fn residuals_measure_identity_not_truncation() {
        // tightening the truncation tolerance 100x must not move residuals
        // by more than 10x, for one representative of every identity family
        let loose = TruncationPolicy::new(1e-12f64, 20_000);
        let tight = TruncationPolicy::new(1e-14f64, 20_000);
        let params = IdentityParams::<f64> {
            z: c(0.1, 0.0),
            width: 1.3,
            dim: 5,
            shift: 1,
            ..Default::default()
        };
        let z = c(0.37, 0.0);
        let run = |p: &TruncationPolicy<f64>| -> Vec<f64> {
            vec![
                verify_fractional_shift(&params, p, 1e-9).unwrap().residual,
                verify_inverse_relation(&params, p, 1e-9)
                    .unwrap()
                    .corrected
                    .residual,
                verify_width_inversion_dft(1, 5, 1.3, p, 1e-9)
                    .unwrap()
                    .corrected
                    .residual,
                verify_k0_collapse(z, 5, 1.3, p, 1e-9)
                    .unwrap()
                    .corrected
                    .residual,
                verify_equivalence_class_split(z, 0.8, 3, p, 1e-9)
                    .unwrap()
                    .residual,
                verify_complementary_split(z, 0.8, 3, p, 1e-9)
                    .unwrap()
                    .residual,
                verify_combined_inversion(z, 0.8, 3, p, 1e-9)
                    .unwrap()
                    .residual,
                verify_duplication(z, 1.0, p, 1e-9).unwrap().residual,
            ]
        };
        let floor = 1e-15;
        for (a, b) in run(&loose).into_iter().zip(run(&tight)) {
            assert!(b.max(floor) <= 10.0 * a.max(floor), "a={} b={}", a, b);
            assert!(a.max(floor) <= 10.0 * b.max(floor), "a={} b={}", a, b);
        }
    }
}
