//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point type the kernels are written against (`f32` or `f64`).
///
/// Numerical thresholds throughout the crate are pinned as double-precision
/// constants and mapped onto the working precision with [`Real::tol`].
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Maps a threshold pinned for `f64` onto this precision.
    ///
    /// The threshold keeps its exponent relative to machine epsilon, so
    /// `1e-6` (about `eps64^0.375`) becomes about `eps32^0.375` in `f32`.
    fn tol(threshold: f64) -> Self {
        let exponent = threshold.ln() / f64::EPSILON.ln();
        Self::epsilon().powf(Self::lit(exponent))
    }

    /// Lossless-enough conversion of an `f64` literal.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn tol(threshold: f64) -> Self {
        threshold
    }

    fn lit(value: f64) -> Self {
        value
    }
}

impl Real for f32 {}

/// `|re| + |im|`, the cheap magnitude used for deflation and pivoting tests.
#[inline]
pub(crate) fn abs1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
