//! Scalar abstraction shared by every geometric routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used throughout the crate: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance used for angle wrapping and boundary membership.
    fn tol() -> Self;

    /// Converts an `f64` literal into the scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion back to `f64` for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn two_pi() -> Self {
        Self::TAU()
    }
}

impl Scalar for f64 {
    fn tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn tol() -> Self {
        1e-5
    }
}
