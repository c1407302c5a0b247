//! Scalar abstractions: floating-point amplitudes and exact coupling arithmetic.
//!
//! State amplitudes are `Complex<T>` over any [`Scalar`] (`f32` or `f64`);
//! every tolerance the numerics depend on lives here as an associated
//! constant so the two precisions stay internally consistent. Hamiltonian
//! couplings and classical energies are handled by the separate [`Coupling`]
//! trait, which has an exact rational implementation (degeneracy counting
//! must not depend on rounding) and a floating fallback with a tie
//! tolerance.

use std::fmt;
use std::iter::Sum;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, NumAssign, Signed};

/// Exact coupling/energy scalar used throughout the model builders.
pub type Rational = Ratio<i64>;

/// Floating-point scalar for state amplitudes and Schmidt spectra.
pub trait Scalar:
    Float + NumAssign + Sum<Self> + Send + Sync + fmt::Debug + fmt::Display + 'static
{
    /// Amplitudes with modulus at or below this are pruned after linear
    /// combinations; removes exact-cancellation residue without touching
    /// anything at assertion level.
    const DROP_TOLERANCE: Self;
    /// Allowed deviation of Σ|amp|² from 1 for a state considered normalized.
    const NORM_TOLERANCE: Self;
    /// Norms below this count as zero (zero state, orthogonal projection).
    const ZERO_NORM_TOLERANCE: Self;
    /// Gram–Schmidt rank cut: residuals below this do not extend the basis.
    const RANK_TOLERANCE: Self;
    /// λ²max above 1 minus this classifies the state as a product (GGM = 0).
    const PRODUCT_TOLERANCE: Self;
    /// Relative eigenvalue convergence for the power iteration.
    const POWER_TOLERANCE: Self;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Scalar for f64 {
    const DROP_TOLERANCE: Self = 1e-14;
    const NORM_TOLERANCE: Self = 1e-12;
    const ZERO_NORM_TOLERANCE: Self = 1e-12;
    const RANK_TOLERANCE: Self = 1e-10;
    const PRODUCT_TOLERANCE: Self = 1e-9;
    const POWER_TOLERANCE: Self = 1e-12;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    const DROP_TOLERANCE: Self = 1e-6;
    const NORM_TOLERANCE: Self = 1e-5;
    const ZERO_NORM_TOLERANCE: Self = 1e-5;
    const RANK_TOLERANCE: Self = 1e-4;
    const PRODUCT_TOLERANCE: Self = 1e-4;
    const POWER_TOLERANCE: Self = 1e-6;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

/// Compensated (Kahan) accumulator; reductions over many amplitudes stay
/// deterministic and below the crate tolerances.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Kahan<T: Scalar> {
    sum: T,
    carry: T,
}

impl<T: Scalar> Kahan<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> T {
        self.sum
    }
}

/// Complex compensated accumulator built from two [`Kahan`] sums.
#[derive(Clone, Copy, Debug)]
pub(crate) struct KahanComplex<T: Scalar> {
    re: Kahan<T>,
    im: Kahan<T>,
}

impl<T: Scalar> KahanComplex<T> {
    pub fn new() -> Self {
        Self {
            re: Kahan::new(),
            im: Kahan::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: Complex<T>) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    #[inline]
    pub fn total(&self) -> Complex<T> {
        Complex::new(self.re.total(), self.im.total())
    }
}

/// Coupling strengths and classical energies.
///
/// The rational implementation is exact, so ground-state degeneracy and the
/// frustration-degree average come out as true rationals. The `f64`
/// implementation compares energies with an absolute-relative tie tolerance.
pub trait Coupling:
    Clone + PartialOrd + Signed + FromPrimitive + Send + Sync + fmt::Debug + fmt::Display + 'static
{
    /// Whether two energies count as equal when collecting degenerate minima.
    fn tie_eq(a: &Self, b: &Self) -> bool;

    fn to_f64(&self) -> f64;
}

impl Coupling for Rational {
    #[inline]
    fn tie_eq(a: &Self, b: &Self) -> bool {
        a == b
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Tie tolerance for floating-point energy comparison.
const FLOAT_ENERGY_TIE: f64 = 1e-9;

impl Coupling for f64 {
    #[inline]
    fn tie_eq(a: &Self, b: &Self) -> bool {
        (a - b).abs() <= FLOAT_ENERGY_TIE * f64::max(1.0, f64::max(a.abs(), b.abs()))
    }

    #[inline]
    fn to_f64(&self) -> f64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_small_additions() {
        let mut acc = Kahan::<f64>::new();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(1e-16);
        }
        // Naive summation would lose every one of the 1e-16 increments.
        assert!((acc.total() - (1.0 + 1e-10)).abs() < 1e-13);
    }

    #[test]
    fn rational_tie_is_exact() {
        let a = Rational::new(1, 3);
        let b = Rational::new(2, 6);
        assert!(Coupling::tie_eq(&a, &b));
        assert!(!Coupling::tie_eq(&a, &Rational::new(1, 4)));
    }

    #[test]
    fn float_tie_tolerates_roundoff() {
        assert!(Coupling::tie_eq(&1.0, &(1.0 + 1e-12)));
        assert!(!Coupling::tie_eq(&1.0, &1.001));
    }
}
