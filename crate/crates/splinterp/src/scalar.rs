//! Scalar abstraction: the whole library is generic over the floating-point
//! type through [`Scalar`]; `f64` is the default choice and `f32` works for
//! lower-precision evaluation.

use num_traits::{Float, FromPrimitive};
use std::fmt::Debug;

/// Floating-point scalar the spline machinery is built over.
pub trait Scalar: Float + FromPrimitive + Debug + 'static {}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + 'static {}

/// Lossless-enough conversion of a small integer count into the scalar type.
pub(crate) fn num<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// n! in the scalar type. Exact in f64 for n <= 20, which covers every
/// spline order this library is used at.
pub(crate) fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * num::<T>(k))
}

/// Binomial coefficient C(n, k) as a scalar, computed exactly in integers.
pub(crate) fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut value: u128 = 1;
    for i in 0..k {
        value = value * (n - i) as u128 / (i + 1) as u128;
    }
    T::from_u128(value).expect("binomial representable in scalar type")
}
