//! Scalar backends for Hermitian matrices: exact Gaussian rationals or `Complex64`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::gauss::Gq;
use super::rational::{from_f64, to_f64, Rational};

/// Which arithmetic a matrix computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    ExactGaussianRational,
    Float,
}

/// Complex scalar usable as a Hermitian matrix entry.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn from_parts(re: &Rational, im: &Rational) -> Self;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Exact value; floats convert bit-exactly (non-finite values map to 0).
    fn to_exact(&self) -> Gq;
    fn is_zero(&self) -> bool;
    fn im_is_zero(&self) -> bool;
    /// Equality within `tol` for floats, exact equality otherwise.
    fn near(&self, other: &Self, tol: f64) -> bool;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::ExactGaussianRational
    }
}

impl Scalar for Gq {
    const BACKEND: Backend = Backend::ExactGaussianRational;

    fn zero() -> Self {
        Gq::default()
    }
    fn one() -> Self {
        Gq::real(num_traits::One::one())
    }
    fn from_rational(r: &Rational) -> Self {
        Gq::real(r.clone())
    }
    fn from_parts(re: &Rational, im: &Rational) -> Self {
        Gq::new(re.clone(), im.clone())
    }
    fn conj(&self) -> Self {
        Gq::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
    fn to_exact(&self) -> Gq {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Gq::is_zero(self)
    }
    fn im_is_zero(&self) -> bool {
        self.im.is_zero()
    }
    fn near(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(to_f64(r), 0.0)
    }
    fn from_parts(re: &Rational, im: &Rational) -> Self {
        Complex64::new(to_f64(re), to_f64(im))
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn to_exact(&self) -> Gq {
        Gq::new(
            from_f64(self.re).unwrap_or_default(),
            from_f64(self.im).unwrap_or_default(),
        )
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn im_is_zero(&self) -> bool {
        self.im == 0.0
    }
    fn near(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
}
