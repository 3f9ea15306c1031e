use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Floating-point scalar the geometry, sampling and oracle code is generic over.
///
/// Implemented for every `num_traits::Float` that also provides the usual
/// constants, i.e. `f32` and `f64`.
pub trait Scalar: Float + FloatConst + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` literal into `Self`, rounding if needed.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn is_positive_finite(self) -> bool {
        self > Self::zero() && self.is_finite()
    }

    /// 2π/3, the angular spacing of the triangle's vertices.
    #[inline]
    fn third_turn() -> Self {
        Self::TAU() / Self::lit(3.0)
    }
}

impl<T> Scalar for T where T: Float + FloatConst + Debug + Display + Send + Sync + 'static {}
