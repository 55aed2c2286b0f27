//! Floating-point scalar abstraction shared by every module.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type the library computes in (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Relative tolerance used for axiom and identity checks when the caller
    /// does not supply one.
    fn default_tol() -> Self;

    /// Convergence threshold for the cyclic Jacobi sweeps, relative to the
    /// Frobenius norm of the input.
    fn jacobi_tol() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn default_tol() -> Self {
        1e-9
    }
    fn jacobi_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn default_tol() -> Self {
        1e-4
    }
    fn jacobi_tol() -> Self {
        1e-6
    }
}
