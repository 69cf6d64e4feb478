use std::fmt::{Debug, Display};
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the analysis layer is generic over: f32 or f64.
///
/// Exact quantities (tallies, matrix entries, local factors) stay in integer
/// or rational arithmetic; only the real-valued layer (singular series,
/// power-law fits, error statistics) is parameterized by this trait.
pub trait Real: Float + FromPrimitive + AddAssign + Debug + Display {}

impl<T> Real for T where T: Float + FromPrimitive + AddAssign + Debug + Display {}

/// Lossless for counts below 2^53 when `F = f64`; every count in this crate
/// stays far under that.
#[inline]
pub(crate) fn from_u64<F: Real>(n: u64) -> F {
    F::from_u64(n).expect("u64 converts to a float scalar")
}

#[inline]
pub(crate) fn from_f64<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("f64 converts to a float scalar")
}

/// ζ(2) = π²/6, fixed in double precision.
#[inline]
pub(crate) fn zeta2<F: Real>() -> F {
    from_f64(std::f64::consts::PI * std::f64::consts::PI / 6.0)
}
