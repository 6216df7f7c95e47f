//! Scalar abstraction shared by every numeric module.
//!
//! All network and analysis code is written against [`Real`], so the same
//! builders and sweeps run in `f32` for quick exploration or `f64` where the
//! double-precision floors quoted throughout the crate apply.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point types usable as the scalar of a network.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// Converts a count into this scalar.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn two_pi() -> Self {
        Self::TAU()
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over `T`.
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Cx<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Angular frequency (rad/s) from a frequency in hertz.
#[inline]
pub fn omega_from_hz<T: Real>(f: T) -> T {
    T::two_pi() * f
}

/// Frequency in hertz from an angular frequency (rad/s).
#[inline]
pub fn hz_from_omega<T: Real>(w: T) -> T {
    w / T::two_pi()
}

/// Angular frequency (rad/s) from gigahertz.
#[inline]
pub fn omega_from_ghz<T: Real>(f_ghz: T) -> T {
    omega_from_hz(f_ghz * T::lit(1e9))
}

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
