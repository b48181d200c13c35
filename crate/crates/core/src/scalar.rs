//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point type the library is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count or index.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Magnitude threshold above which scaled recurrences renormalize.
    #[inline]
    fn rescale_threshold() -> Self {
        Self::max_value().sqrt().sqrt()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `x * 2^e` without intermediate overflow for moderate `x`.
pub(crate) fn ldexp<T: Real>(x: T, e: i64) -> T {
    if x == T::zero() || !x.is_finite() {
        return x;
    }
    let e = e.clamp(-4096, 4096) as i32;
    let two = T::lit(2.0);
    // two factors keep each power of two in range when the result is subnormal
    x * two.powi(e / 2) * two.powi(e - e / 2)
}

/// Splits `|x| > 0` into `(m, e)` with `m ∈ [1, 2)` and `|x| = m 2^e`.
pub(crate) fn frexp<T: Real>(x: T) -> (T, i64) {
    let ax = x.abs();
    if !ax.is_finite() || ax == T::zero() {
        return (ax, 0);
    }
    let mut e = ax.log2().floor().to_i64().unwrap_or(0);
    let mut m = ldexp(ax, -e);
    // log2 may be off by one ulp near powers of two
    while m >= T::lit(2.0) {
        m = m / T::lit(2.0);
        e += 1;
    }
    while m < T::one() {
        m = m * T::lit(2.0);
        e -= 1;
    }
    (m, e)
}

/// `ln(1 + e^x)`, finite for every finite `x` and `0` at `x = -inf`.
pub(crate) fn softplus<T: Real>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Pairwise summation in a fixed order.
pub(crate) fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    match xs.len() {
        0 => T::zero(),
        1 => xs[0],
        n if n <= 8 => xs.iter().copied().fold(T::zero(), |a, b| a + b),
        n => {
            let (lo, hi) = xs.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}
