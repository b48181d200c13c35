//! Gegenbauer and Chebyshev polynomials, and the addition-formula factor
//! `Σ_ν Y_ν^k(ξ) Y_ν^k(ρ)` expressed through them.

use crate::error::{param, Result};
use crate::scalar::Real;

/// `C_k^δ(s)` by the three-term recurrence, `δ > 0`.
pub fn gegenbauer<T: Real>(delta: T, k: usize, s: T) -> Result<T> {
    if !(delta > T::zero()) || !delta.is_finite() {
        return Err(param(format!("Gegenbauer index must be > 0 (use the Chebyshev branch for 0), got {delta}")));
    }
    let mut seq = GegenbauerSeq::new(delta, s);
    for _ in 0..k {
        seq.advance();
    }
    Ok(seq.value())
}

struct GegenbauerSeq<T> {
    delta: T,
    s: T,
    k: usize,
    prev: T,
    cur: T,
}

impl<T: Real> GegenbauerSeq<T> {
    fn new(delta: T, s: T) -> Self {
        Self { delta, s, k: 0, prev: T::zero(), cur: T::one() }
    }

    fn value(&self) -> T {
        self.cur
    }

    fn advance(&mut self) {
        let two = T::lit(2.0);
        let kk = T::count(self.k);
        let next = if self.k == 0 {
            two * self.delta * self.s
        } else {
            (two * (kk + self.delta) * self.s * self.cur - (kk + two * self.delta - T::one()) * self.prev)
                / (kk + T::one())
        };
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
    }
}

/// Chebyshev polynomial of the first kind, `T_k(s) = cos(k arccos s)`.
pub fn chebyshev<T: Real>(k: usize, s: T) -> T {
    let two = T::lit(2.0);
    let (mut prev, mut cur) = (T::one(), s);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = two * s * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Addition-formula factor for harmonics of degree `k` in `d` variables.
///
/// `d ≥ 3`: `((k+δ)/δ) C_k^δ(s)` with `δ = (d−2)/2`. `d = 2`: `2 T_k(s)` for
/// `k ≥ 1` and `1` for `k = 0`, matching the one-dimensional space of
/// constants. At `s = 1` the factor equals `a_k^d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalFactor<T> {
    d: usize,
    delta: T,
}

impl<T: Real> SphericalFactor<T> {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(param(format!("dimension must satisfy d >= 2, got {d}")));
        }
        Ok(Self { d, delta: T::count(d - 2) / T::lit(2.0) })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn value(&self, k: usize, s: T) -> T {
        self.sequence(k, s)[k]
    }

    /// Factors for degrees `0..=n` at the same `s`.
    pub fn sequence(&self, n: usize, s: T) -> Vec<T> {
        let mut out = Vec::with_capacity(n + 1);
        if self.d == 2 {
            let two = T::lit(2.0);
            let (mut prev, mut cur) = (T::one(), s);
            out.push(T::one());
            for _ in 1..=n {
                out.push(two * cur);
                let next = two * s * cur - prev;
                prev = cur;
                cur = next;
            }
        } else {
            let mut seq = GegenbauerSeq::new(self.delta, s);
            for k in 0..=n {
                out.push((T::count(k) + self.delta) / self.delta * seq.value());
                seq.advance();
            }
        }
        out
    }
}

/// `spherical_factor(d, k, s)` as a free function.
pub fn spherical_factor<T: Real>(d: usize, k: usize, s: T) -> Result<T> {
    Ok(SphericalFactor::new(d)?.value(k, s))
}
