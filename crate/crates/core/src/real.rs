//! Scalar abstraction: all core math is generic over the float type.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar usable throughout the simulator.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Display + Debug + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Sum + Display + Debug + Send + Sync + 'static
{
}

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

/// Convert an `f64` constant into the working scalar type.
///
/// Panics only if `T` cannot represent any `f64`, which does not happen for
/// the supported scalar types.
#[inline]
pub fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must be representable in the scalar type")
}

/// `i` as a complex scalar.
#[inline]
pub fn im_unit<T: Real>() -> C<T> {
    C::new(T::zero(), T::one())
}

/// `e^{i theta}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> C<T> {
    C::new(theta.cos(), theta.sin())
}
