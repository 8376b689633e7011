//! Two-variable states built from shifted eigenstate products under a
//! one-sided DFT:
//!
//! ```text
//! F_{m,n}(j, l) = Σ_k f_m(k) · f_n((k − l) mod N) · exp(2πi·jk/N).
//! ```
//!
//! The comb form of f_n makes it N-periodic, so the mod-N index reduction is
//! exact. Several properties attributed to these states circulate with
//! ambiguous typography; rather than picking one reading, every candidate
//! variant is evaluated and the resolution is reported with its residual.

use num_complex::Complex;

use crate::eigenstates::{eigenstate_direct, EigenstateSpec};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, KahanSum, Real};
use crate::theta::TruncationPolicy;

/// One F_{m,n} grid plus the data needed to score checks against it.
#[derive(Clone, Debug)]
pub struct TwoVarState<T: Real> {
    values: Vec<Complex<T>>,
    dim: usize,
    pub m: usize,
    pub n: usize,
    norm_m: T,
    norm_n: T,
}

impl<T: Real> TwoVarState<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry (j, l).
    pub fn value(&self, j: usize, l: usize) -> Complex<T> {
        self.values[j * self.dim + l]
    }

    /// ‖f_m‖ of the first factor state.
    pub fn factor_norms(&self) -> (T, T) {
        (self.norm_m, self.norm_n)
    }

    /// Σ_{j,l} |F|².
    pub fn total_power(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr())
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.norm()))
    }
}

/// Builds F_{m,n} for width-1 states. Degenerate factors are an error.
pub fn two_var_state<T: Real>(
    dim: usize,
    m: usize,
    n: usize,
    policy: &TruncationPolicy<T>,
) -> Result<TwoVarState<T>> {
    let fm = eigenstate_direct(&EigenstateSpec::<T>::new(dim, m), policy)?;
    let fn_ = eigenstate_direct(&EigenstateSpec::<T>::new(dim, n), policy)?;
    for state in [&fm, &fn_] {
        if state.is_degenerate() {
            return Err(Error::DegenerateState {
                norm: to_f64(state.norm()),
            });
        }
    }
    let two_pi = T::PI() + T::PI();
    let n_t = lit::<T>(dim as f64);
    let mut values = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        for l in 0..dim {
            let mut acc = KahanSum::new();
            for k in 0..dim {
                let shifted = (k + dim - l % dim) % dim;
                let ang = two_pi * lit::<T>(((j * k) % dim) as f64) / n_t;
                let phase = Complex::from_polar(T::one(), ang);
                acc.add(phase * (fm.values()[k].re * fn_.values()[shifted].re));
            }
            values.push(acc.value());
        }
    }
    Ok(TwoVarState {
        values,
        dim,
        m,
        n,
        norm_m: fm.norm(),
        norm_n: fn_.norm(),
    })
}

/// Residual of the Parseval identity Σ_{j,l}|F|² = N·‖f_m‖²·‖f_n‖².
pub fn parseval_residual<T: Real>(state: &TwoVarState<T>) -> f64 {
    let lhs = state.total_power();
    let rhs =
        lit::<T>(state.dim as f64) * state.norm_m * state.norm_m * state.norm_n * state.norm_n;
    to_f64((lhs - rhs).abs() / rhs)
}

/// A variant table: every candidate reading of an ambiguous display, scored
/// by max-residual over the grid, scaled by max|F| (or max|F|² for the
/// squared-modulus checks).
#[derive(Clone, Debug)]
pub struct VariantResolution {
    pub check: String,
    pub params: String,
    /// (variant name, scaled residual), in fixed evaluation order.
    pub variants: Vec<(String, f64)>,
    /// First variant meeting `tol`, if any.
    pub resolved: Option<String>,
    pub tol: f64,
}

impl VariantResolution {
    fn resolve(mut self) -> Self {
        self.resolved = self
            .variants
            .iter()
            .find(|(_, r)| *r <= self.tol)
            .map(|(name, _)| name.clone());
        self
    }

    pub fn best_residual(&self) -> f64 {
        self.variants
            .iter()
            .map(|(_, r)| *r)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Conjugation behaviour of F: tests the phase relation
/// F*(j,l) = F(j,l)·exp(±2πi·jl/N), its (−1)^{m+n}-decorated versions, and
/// the index-reflection relations F*(j,l) = F(−j,l) and
/// F*(j,l) = (−1)^{m+n}·F(j,−l).
pub fn conjugation_residual<T: Real>(state: &TwoVarState<T>) -> VariantResolution {
    let dim = state.dim;
    let two_pi = T::PI() + T::PI();
    let n_t = lit::<T>(dim as f64);
    let parity = if (state.m + state.n).is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    let scale = state.max_abs().max(T::epsilon());

    let names = [
        "phase-plus",
        "phase-minus",
        "parity-phase-plus",
        "parity-phase-minus",
        "reflected-j",
        "parity-reflected-l",
    ];
    let mut worst = [T::zero(); 6];
    for j in 0..dim {
        for l in 0..dim {
            let f = state.value(j, l);
            let conj = f.conj();
            let ang = two_pi * lit::<T>(((j * l) % dim) as f64) / n_t;
            let plus = Complex::from_polar(T::one(), ang);
            let cands = [
                f * plus,
                f * plus.conj(),
                f * plus * parity,
                f * plus.conj() * parity,
                state.value((dim - j % dim) % dim, l),
                state.value(j, (dim - l % dim) % dim) * parity,
            ];
            for (slot, cand) in worst.iter_mut().zip(cands) {
                *slot = slot.max((conj - cand).norm());
            }
        }
    }
    VariantResolution {
        check: "twovar-conjugation".into(),
        params: format!("N={} m={} n={}", dim, state.m, state.n),
        variants: names
            .iter()
            .zip(worst)
            .map(|(name, w)| (name.to_string(), to_f64(w / scale)))
            .collect(),
        resolved: None,
        tol: 1e-9,
    }
    .resolve()
}

/// Behaviour of |F|² under the symmetric two-dimensional DFT
/// T(p,q) = (1/N)·Σ_{j,l} |F(j,l)|²·exp(2πi(pj+ql)/N).
///
/// Readings tested, in order: the literal constant-right-side display; the
/// eigenvector readings T = λ·|F|² for λ ∈ {(−i)^{m+n}, (+i)^{m+n}, 1}; the
/// rotated reading T(p,q) = |F(q,−p)|²; and the rotation invariance
/// |F(j,l)|² = |F(−l,j)|².
pub fn eigen2d_residual<T: Real>(state: &TwoVarState<T>) -> VariantResolution {
    let dim = state.dim;
    let n_t = lit::<T>(dim as f64);
    let two_pi = T::PI() + T::PI();

    let g: Vec<T> = state.values.iter().map(|v| v.norm_sqr()).collect();
    let at = |j: usize, l: usize| g[j * dim + l];
    let scale = g.iter().fold(T::zero(), |a, b| a.max(*b)).max(T::epsilon());

    // symmetric 2-D DFT of the squared modulus
    let mut transform = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for p in 0..dim {
        for q in 0..dim {
            let mut acc = KahanSum::new();
            for j in 0..dim {
                for l in 0..dim {
                    let ang = two_pi * lit::<T>(((p * j + q * l) % dim) as f64) / n_t;
                    acc.add(Complex::from_polar(at(j, l), ang));
                }
            }
            transform[p * dim + q] = acc.value() / n_t;
        }
    }

    let lam_neg = crate::scalar::i_pow::<T>(3 * (state.m + state.n));
    let lam_pos = crate::scalar::i_pow::<T>(state.m + state.n);

    // literal reading: |F(j,l)|² equals (−i)^{m+n}·(1/N)·Σ G·exp(2πi(ma+nb)/N)
    let mut literal_const = KahanSum::new();
    for a in 0..dim {
        for b in 0..dim {
            let ang = two_pi * lit::<T>(((state.m * a + state.n * b) % dim) as f64) / n_t;
            literal_const.add(Complex::from_polar(at(a, b), ang));
        }
    }
    let literal_rhs = lam_neg * (literal_const.value() / n_t);

    let names = [
        "literal-constant",
        "dft2-eigen-neg",
        "dft2-eigen-pos",
        "dft2-eigen-unit",
        "dft2-rotated",
        "rotation-invariance",
    ];
    let mut worst = [T::zero(); 6];
    for p in 0..dim {
        for q in 0..dim {
            let g_here = Complex::new(at(p, q), T::zero());
            let t_here = transform[p * dim + q];
            let rotated = at(q, (dim - p % dim) % dim);
            let rot_inv = at((dim - q % dim) % dim, p);
            let cands = [
                (g_here - literal_rhs).norm(),
                (t_here - lam_neg * g_here).norm(),
                (t_here - lam_pos * g_here).norm(),
                (t_here - g_here).norm(),
                (t_here - Complex::new(rotated, T::zero())).norm(),
                (g_here - Complex::new(rot_inv, T::zero())).norm(),
            ];
            for (slot, cand) in worst.iter_mut().zip(cands) {
                *slot = slot.max(cand);
            }
        }
    }
    VariantResolution {
        check: "twovar-dft2".into(),
        params: format!("N={} m={} n={}", dim, state.m, state.n),
        variants: names
            .iter()
            .zip(worst)
            .map(|(name, w)| (name.to_string(), to_f64(w / scale)))
            .collect(),
        resolved: None,
        tol: 1e-8,
    }
    .resolve()
}

/// The quadruple overlap Σ_{j,l} |F_{m,n}(j,l)|²·|F_{m',n'}(j,l)|², the
/// literal typography of the overlap display. Measured and reported; it does
/// not vanish under the mod-4 condition.
pub fn overlap_sum<T: Real>(a: &TwoVarState<T>, b: &TwoVarState<T>) -> Complex<T> {
    let mut acc = KahanSum::new();
    for (x, y) in a.values.iter().zip(&b.values) {
        acc.add(Complex::new(x.norm_sqr() * y.norm_sqr(), T::zero()));
    }
    acc.value()
}

/// The pairing overlap Σ_{j,l} F_{m,n}(j,l)·conj(F_{m',n'}(j,l)).
///
/// This reading factorizes exactly into N·(f_m, f_{m'})·(f_n, f_{n'}), so it
/// vanishes whenever m+n ≢ m'+n' (mod 4); it is the reading under which the
/// stated vanishing condition holds.
pub fn overlap_pairing<T: Real>(a: &TwoVarState<T>, b: &TwoVarState<T>) -> Complex<T> {
    let mut acc = KahanSum::new();
    for (x, y) in a.values.iter().zip(&b.values) {
        acc.add(*x * y.conj());
    }
    acc.value()
}

/// Both overlap readings of one state pair, normalized scale-free.
#[derive(Clone, Debug)]
pub struct OverlapCheck {
    pub dim: usize,
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// True when m+n ≢ m'+n' (mod 4), i.e. the vanishing condition applies.
    pub mod4_differs: bool,
    /// |Σ F₁ F̄₂| / (‖F₁‖·‖F₂‖).
    pub pairing_normalized: f64,
    /// Σ |F₁|²|F₂|² / (‖|F₁|²‖·‖|F₂|²‖).
    pub quartic_normalized: f64,
}

pub fn overlap_check<T: Real>(a: &TwoVarState<T>, b: &TwoVarState<T>) -> OverlapCheck {
    let power_a = a.total_power().sqrt();
    let power_b = b.total_power().sqrt();
    let pairing = overlap_pairing(a, b).norm() / (power_a * power_b);

    let q_norm = |s: &TwoVarState<T>| {
        s.values
            .iter()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr() * v.norm_sqr())
            .sqrt()
    };
    let quartic = overlap_sum(a, b).re / (q_norm(a) * q_norm(b));

    OverlapCheck {
        dim: a.dim,
        first: (a.m, a.n),
        second: (b.m, b.n),
        mod4_differs: (a.m + a.n) % 4 != (b.m + b.n) % 4,
        pairing_normalized: to_f64(pairing),
        quartic_normalized: to_f64(quartic),
    }
}
