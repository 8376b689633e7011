//! Floating-point scalar abstraction and compensated summation.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the library is generic over: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + core::fmt::Debug
    + core::fmt::Display
    + Default
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub(crate) fn lit<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("f64 literal representable in scalar type")
}

/// Converts a scalar into `f64` for reporting.
#[inline]
pub(crate) fn to_f64<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Compensated (Kahan–Babuška–Neumaier) accumulator for complex terms.
///
/// The lattice sums target absolute tails near 1e-15 while individual terms
/// can be many orders of magnitude larger and sign-alternating, so plain
/// summation would leak the compensation budget. The Neumaier branch also
/// keeps the correction when a term exceeds the running sum.
#[derive(Clone, Copy, Debug)]
pub struct KahanSum<T: Real> {
    sum: Complex<T>,
    comp: Complex<T>,
}

#[inline]
fn neumaier_add<T: Real>(sum: &mut T, comp: &mut T, value: T) {
    let t = *sum + value;
    if sum.abs() >= value.abs() {
        *comp = *comp + ((*sum - t) + value);
    } else {
        *comp = *comp + ((value - t) + *sum);
    }
    *sum = t;
}

impl<T: Real> KahanSum<T> {
    pub fn new() -> Self {
        Self {
            sum: Complex::new(T::zero(), T::zero()),
            comp: Complex::new(T::zero(), T::zero()),
        }
    }

    #[inline]
    pub fn add(&mut self, value: Complex<T>) {
        neumaier_add(&mut self.sum.re, &mut self.comp.re, value.re);
        neumaier_add(&mut self.sum.im, &mut self.comp.im, value.im);
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        self.sum + self.comp
    }
}

impl<T: Real> Default for KahanSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// i^n on the exact four-cycle.
#[inline]
pub(crate) fn i_pow<T: Real>(n: usize) -> Complex<T> {
    let one = T::one();
    let zero = T::zero();
    match n % 4 {
        0 => Complex::new(one, zero),
        1 => Complex::new(zero, one),
        2 => Complex::new(-one, zero),
        _ => Complex::new(zero, -one),
    }
}
