use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps};

/// Scalar type used throughout the crate.
///
/// Blanket-implemented for anything float-like; `f64` is the intended
/// workhorse and `f32` compiles as well. The spectral pencils span roughly
/// thirty decades on geometric grids, so eigensolves need `f64` range to
/// produce meaningful results even though they are generic.
pub trait Real:
    Float + FromPrimitive + NumAssignOps + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` constant. Panics only if the target type cannot
    /// represent any `f64`, which no implementor of this trait does.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant must convert")
    }

    /// Converts a node count or index.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize must convert")
    }

    /// Converts an integer dimension or mode index.
    #[inline]
    fn of_u32(n: u32) -> Self {
        Self::from_u32(n).expect("u32 must convert")
    }

    #[inline]
    fn half(self) -> Self {
        self / Self::of(2.0)
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + NumAssignOps + Sum + Debug + Display + Send + Sync + 'static
{
}
