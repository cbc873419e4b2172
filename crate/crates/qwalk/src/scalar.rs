//! Scalar abstraction: the walk machinery is generic over `f32`/`f64`.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the library is generic over.
pub trait WalkScalar:
    Float
    + FloatConst
    + FromPrimitive
    + core::fmt::Debug
    + core::fmt::Display
    + core::fmt::LowerExp
    + Send
    + Sync
    + 'static
{
}

impl WalkScalar for f32 {}
impl WalkScalar for f64 {}

/// Converts an `f64` literal into the active scalar type.
#[inline]
pub fn lit<T: WalkScalar>(x: f64) -> T {
    T::from_f64(x).expect("literal out of range for scalar type")
}

/// Complex literal from `f64` parts.
#[inline]
pub fn clit<T: WalkScalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

/// `i` in the active scalar type.
#[inline]
pub fn imag_unit<T: WalkScalar>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Lossy view of a scalar as `f64` (used in error payloads and reports).
#[inline]
pub fn as_f64<T: WalkScalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
