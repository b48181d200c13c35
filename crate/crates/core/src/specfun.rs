//! Log-space special functions and the normalization constants of the ball
//! weight.
//!
//! Every ratio of Gamma functions used downstream is formed as a difference of
//! [`log_gamma`] values and exponentiated once, so that quantities like
//! `K_n(1,1)` stay finite for `n` far beyond the point where `Γ` itself
//! overflows.

use std::cmp::Ordering;
use std::ops::{Div, Mul, Neg};

use crate::error::{param, Error, Result};
use crate::scalar::{frexp, ldexp, Real};

/// A signed real stored as `sign · m · 2^e` with `m ∈ [1, 2)`.
///
/// The binary split keeps the conversion back to a plain real exact up to one
/// rounding of the mantissa, while products and quotients never overflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue<T> {
    sign: i8,
    mant: T,
    exp2: i64,
}

impl<T: Real> LogValue<T> {
    pub fn zero() -> Self {
        Self { sign: 0, mant: T::zero(), exp2: 0 }
    }

    pub fn one() -> Self {
        Self { sign: 1, mant: T::one(), exp2: 0 }
    }

    /// Wraps a finite real.
    pub fn from_real(x: T) -> Self {
        if x == T::zero() {
            return Self::zero();
        }
        let (mant, exp2) = frexp(x);
        Self { sign: if x < T::zero() { -1 } else { 1 }, mant, exp2 }
    }

    /// Builds `sign · exp(log_magnitude)`; `-inf` magnitude yields zero.
    pub fn from_parts(sign: i8, log_magnitude: T) -> Self {
        if sign == 0 || log_magnitude == T::neg_infinity() {
            return Self::zero();
        }
        let q = (log_magnitude / T::LN_2()).floor();
        let exp2 = q.to_i64().unwrap_or(0);
        let frac = log_magnitude - q * T::LN_2();
        let mut v = Self { sign: sign.signum(), mant: frac.exp(), exp2 };
        v.normalize();
        v
    }

    /// Positive value with the given natural logarithm.
    pub fn from_ln(log_magnitude: T) -> Self {
        Self::from_parts(1, log_magnitude)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Natural log of the magnitude (`-inf` for zero).
    pub fn log_magnitude(&self) -> T {
        if self.sign == 0 {
            T::neg_infinity()
        } else {
            self.mant.ln() + T::from_i64(self.exp2).unwrap() * T::LN_2()
        }
    }

    /// Converts back to a plain real; saturates to `±inf` or `0` when out of range.
    pub fn to_real(&self) -> T {
        match self.sign {
            0 => T::zero(),
            s => {
                let v = ldexp(self.mant, self.exp2);
                if s < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// `(signed mantissa, binary exponent)`.
    pub(crate) fn binary_parts(&self) -> (T, i64) {
        let m = match self.sign {
            0 => T::zero(),
            s if s < 0 => -self.mant,
            _ => self.mant,
        };
        (m, self.exp2)
    }

    pub fn abs(self) -> Self {
        Self { sign: self.sign.abs(), ..self }
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero LogValue");
        let mut v = Self { sign: self.sign, mant: T::one() / self.mant, exp2: -self.exp2 };
        v.normalize();
        v
    }

    pub fn sqrt(self) -> Self {
        assert!(self.sign >= 0, "square root of negative LogValue");
        if self.sign == 0 {
            return self;
        }
        let (mant, exp2) =
            if self.exp2 % 2 == 0 { (self.mant, self.exp2) } else { (self.mant * T::lit(2.0), self.exp2 - 1) };
        let mut v = Self { sign: 1, mant: mant.sqrt(), exp2: exp2 / 2 };
        v.normalize();
        v
    }

    /// Multiplies by `2^e` exactly.
    pub fn scale2(self, e: i64) -> Self {
        if self.sign == 0 {
            self
        } else {
            Self { exp2: self.exp2 + e, ..self }
        }
    }

    fn normalize(&mut self) {
        if self.sign == 0 {
            return;
        }
        while self.mant >= T::lit(2.0) {
            self.mant = self.mant / T::lit(2.0);
            self.exp2 += 1;
        }
        while self.mant < T::one() {
            self.mant = self.mant * T::lit(2.0);
            self.exp2 -= 1;
        }
    }

    /// Compares magnitudes.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.sign == 0, other.sign == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp2.cmp(&other.exp2).then(self.mant.partial_cmp(&other.mant).unwrap_or(Ordering::Equal)),
        }
    }
}

impl<T: Real> Mul for LogValue<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::zero();
        }
        let mut v = Self { sign: self.sign * rhs.sign, mant: self.mant * rhs.mant, exp2: self.exp2 + rhs.exp2 };
        v.normalize();
        v
    }
}

impl<T: Real> Div for LogValue<T> {
    type Output = Self;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<T: Real> Neg for LogValue<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self { sign: -self.sign, ..self }
    }
}

const STIRLING_SHIFT: f64 = 10.0;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(param(format!("log_gamma requires finite x > 0, got {x}")));
    }
    Ok(ln_gamma(x))
}

/// Unchecked `ln Γ(x)`, `x > 0`: upward shift to `x ≥ 10` then the Stirling series.
pub(crate) fn ln_gamma<T: Real>(x: T) -> T {
    let shift = T::lit(STIRLING_SHIFT);
    let mut z = x;
    let mut prod = T::one();
    while z < shift {
        prod = prod * z;
        z = z + T::one();
    }
    stirling(z) - prod.ln()
}

fn stirling<T: Real>(z: T) -> T {
    let half_ln_two_pi = T::lit(0.918_938_533_204_672_7);
    (z - T::lit(0.5)) * z.ln() - z + half_ln_two_pi + stirling_correction(z)
}

/// `ln Γ(z) − [(z − ½) ln z − z + ½ ln 2π]` for `z ≥ 10`.
fn stirling_correction<T: Real>(z: T) -> T {
    // Bernoulli-number coefficients B_{2k} / (2k (2k-1))
    const COEFFS: [f64; 7] =
        [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0];
    let inv = z.recip();
    let inv2 = inv * inv;
    let mut series = T::zero();
    for &c in COEFFS.iter().rev() {
        series = series * inv2 + T::lit(c);
    }
    series * inv
}

/// `ln Γ(x + a) − ln Γ(x)` for `x > 0`, `x + a > 0`, without the cancellation
/// of subtracting two large log-gammas.
pub(crate) fn ln_gamma_ratio<T: Real>(x: T, a: T) -> T {
    if a == T::zero() {
        return T::zero();
    }
    let shift = T::lit(STIRLING_SHIFT);
    let mut x = x;
    let mut acc = T::zero();
    while x < shift || x + a < shift {
        acc = acc - (a / x).ln_1p();
        x = x + T::one();
    }
    let y = x + a;
    acc + (x - T::lit(0.5)) * (a / x).ln_1p() + a * y.ln() - a + stirling_correction(y) - stirling_correction(x)
}

/// `ln (a)_n = ln Γ(a + n) − ln Γ(a)` for `a > 0`.
pub(crate) fn ln_pochhammer<T: Real>(a: T, n: usize) -> T {
    if n == 0 {
        return T::zero();
    }
    ln_gamma_ratio(a, T::count(n))
}

/// `ln C(n, k)` for real `n ≥ 0` and integer `k ≥ 0`.
///
/// Returns `-inf` when the binomial vanishes (`n` integer, `k > n`).
pub fn log_binomial<T: Real>(n: T, k: usize) -> Result<T> {
    if !(n >= T::zero()) || !n.is_finite() {
        return Err(param(format!("log_binomial requires n >= 0, got {n}")));
    }
    let kk = T::count(k);
    let rest = n - kk + T::one();
    if rest <= T::zero() {
        if rest == rest.floor() {
            return Ok(T::neg_infinity());
        }
        return Err(Error::Domain(format!("C({n}, {k}) with non-integer n below k - 1 is not supported")));
    }
    Ok(ln_binomial_unchecked(n, k))
}

/// `ln C(n, k)` assuming `n − k + 1 > 0`.
pub(crate) fn ln_binomial_unchecked<T: Real>(n: T, k: usize) -> T {
    // C(n, k) = Γ(n+1) / (Γ(m+1) Γ(n−m+1)) with m the smaller of k and n−k
    let kk = T::count(k);
    let m = if n - kk >= T::zero() { kk.min(n - kk) } else { kk };
    ln_gamma_ratio(n - m + T::one(), m) - ln_gamma(m + T::one())
}

pub(crate) fn check_ball<T: Real>(mu: T, d: usize) -> Result<()> {
    if !(mu > -T::one()) || !mu.is_finite() {
        return Err(param(format!("ball exponent must satisfy mu > -1, got {mu}")));
    }
    if d < 2 {
        return Err(param(format!("dimension must satisfy d >= 2, got {d}")));
    }
    Ok(())
}

/// `ln ω_μ`, the log of the ball weight's total mass.
pub fn ln_omega_mu<T: Real>(mu: T, d: usize) -> Result<T> {
    check_ball(mu, d)?;
    let half_d = T::count(d) / T::lit(2.0);
    Ok(half_d * T::PI().ln() - ln_gamma_ratio(mu + T::one(), half_d))
}

/// `ω_μ = π^{d/2} Γ(μ+1) / Γ(μ+1+d/2)`.
pub fn omega_mu<T: Real>(mu: T, d: usize) -> Result<T> {
    ln_omega_mu(mu, d).map(T::exp)
}

/// `ln σ_{d−1}`.
pub fn ln_sigma_sphere<T: Real>(d: usize) -> Result<T> {
    if d < 2 {
        return Err(param(format!("dimension must satisfy d >= 2, got {d}")));
    }
    let half_d = T::count(d) / T::lit(2.0);
    Ok(T::LN_2() + half_d * T::PI().ln() - ln_gamma(half_d))
}

/// Surface area `σ_{d−1} = 2 π^{d/2} / Γ(d/2)` of the unit sphere in `R^d`.
pub fn sigma_sphere<T: Real>(d: usize) -> Result<T> {
    ln_sigma_sphere(d).map(T::exp)
}

/// `ln c_μ^d`.
pub fn ln_c_mu_d<T: Real>(mu: T, d: usize) -> Result<T> {
    check_ball(mu, d)?;
    let exponent = mu + T::count(d) / T::lit(2.0) + T::one();
    Ok(ln_sigma_sphere::<T>(d)? - ln_omega_mu(mu, d)? - exponent * T::LN_2())
}

/// `c_μ^d = σ_{d−1} / (2^{μ+d/2+1} ω_μ)`, the factor linking ball and
/// Jacobi norms.
pub fn c_mu_d<T: Real>(mu: T, d: usize) -> Result<T> {
    ln_c_mu_d(mu, d).map(T::exp)
}

fn binomial_u128(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1)
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Dimension `a_k^d = C(k+d−1, d−1) − C(k+d−3, d−1)` of the degree-`k`
/// spherical harmonics in `d` variables.
pub fn harmonic_dim(k: usize, d: usize) -> Result<u128> {
    if d < 2 {
        return Err(param(format!("dimension must satisfy d >= 2, got {d}")));
    }
    let (k, d) = (k as u128, d as u128);
    let overflow = || Error::Overflow(format!("harmonic dimension a_{k}^{d}"));
    let first = binomial_u128(k + d - 1, d - 1).ok_or_else(overflow)?;
    // C(m, j) = 0 for m < 0
    let second = if k + d >= 3 { binomial_u128(k + d - 3, d - 1).ok_or_else(overflow)? } else { 0 };
    Ok(first - second)
}
