//! Scalar abstraction for the real-valued numerics.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the linear algebra and detectors are generic over.
///
/// Implemented by `f32` and `f64` through the blanket impl.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Convert an `f64` constant (tolerances, calibration values).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant must be representable")
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}
