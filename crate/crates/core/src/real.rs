use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type the numerical core is generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + 'static
{
    /// Shorthand for lossy conversion of an `f64` constant.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}
