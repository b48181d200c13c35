//! Classical Jacobi polynomials `P_n^{(α,β)}` on `[-1, 1]`.
//!
//! Values use the classical normalization `P_n(1) = C(n+α, n)`. Kernels
//! `K_n(t,u) = Σ_{k≤n} P_k(t)P_k(u)/h_k` are accumulated from orthonormal
//! values. Closed forms at `t = 1` are evaluated with log-space prefactors.

use crate::error::{param, Result};
use crate::quadrature::QuadratureRule;
use crate::scalar::{frexp, ldexp, Real};
use crate::specfun::{ln_gamma, ln_gamma_ratio, LogValue};

/// Exponents of the Jacobi weight `(1−t)^α (1+t)^β`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> JacobiParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !(alpha > -T::one()) || !alpha.is_finite() {
            return Err(param(format!("Jacobi alpha must be > -1, got {alpha}")));
        }
        if !(beta > -T::one()) || !beta.is_finite() {
            return Err(param(format!("Jacobi beta must be > -1, got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// `ln h_n`, the log of the squared norm.
    pub fn ln_norm(&self, n: usize) -> T {
        let (a, b) = (self.alpha, self.beta);
        let one = T::one();
        let s = a + b;
        let nn = T::count(n);
        if n == 0 {
            // (s+1)Γ(s+1) = Γ(s+2) also covers s = −1
            (s + one) * T::LN_2() + ln_gamma(a + one) + ln_gamma(b + one) - ln_gamma(s + T::lit(2.0))
        } else {
            // Γ(n+a+1)Γ(n+b+1) / (n! Γ(n+s+1)), paired to avoid cancellation
            (s + one) * T::LN_2() + ln_gamma_ratio(nn + one, a) + ln_gamma_ratio(nn + s + one, -a)
                - (T::lit(2.0) * nn + s + one).ln()
        }
    }

    /// `h_n = (P_n, P_n)_{α,β}`.
    pub fn norm(&self, n: usize) -> T {
        self.ln_norm(n).exp()
    }

    /// Diagonal entry `a_j` of the Jacobi matrix (monic recurrence).
    pub(crate) fn recurrence_diag(&self, j: usize) -> T {
        let (a, b) = (self.alpha, self.beta);
        let two = T::lit(2.0);
        if j == 0 {
            (b - a) / (a + b + two)
        } else {
            let m = two * T::count(j) + a + b;
            (b * b - a * a) / (m * (m + two))
        }
    }

    /// Off-diagonal entry `√b_j`, `j ≥ 1`.
    pub(crate) fn recurrence_offdiag(&self, j: usize) -> T {
        debug_assert!(j >= 1);
        let (a, b) = (self.alpha, self.beta);
        let one = T::one();
        let two = T::lit(2.0);
        let s = a + b;
        let jj = T::count(j);
        let m = two * jj + s;
        let bj = if j == 1 {
            // (1+s) cancels between numerator and denominator; finite at s = −1
            T::lit(4.0) * (one + a) * (one + b) / ((two + s) * (two + s) * (T::lit(3.0) + s))
        } else {
            T::lit(4.0) * jj * (jj + a) * (jj + b) * (jj + s) / (m * m * (m + one) * (m - one))
        };
        bj.sqrt()
    }

    /// `P_n^{(α,β)}(t)` by the classical three-term recurrence.
    pub fn eval(&self, n: usize, t: T) -> T {
        let (a, b) = (self.alpha, self.beta);
        let one = T::one();
        let two = T::lit(2.0);
        if n == 0 {
            return one;
        }
        let mut prev = one;
        let mut cur = ((a + b + two) * t + (a - b)) / two;
        for k in 1..n {
            let kk = T::count(k);
            let m = two * kk + a + b;
            let c1 = two * (kk + one) * (kk + a + b + one) * m;
            let c2 = (m + one) * ((m + two) * m * t + a * a - b * b);
            let c3 = two * (kk + a) * (kk + b) * (m + two);
            let next = (c2 * cur - c3 * prev) / c1;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Orthonormal value `p_n(t) = P_n(t)/√h_n`.
    pub fn eval_orthonormal(&self, n: usize, t: T) -> T {
        let mut walk = OrthonormalWalk::new(self, t, LogValue::one());
        for j in 0..n {
            walk.advance(self, j);
        }
        walk.value()
    }

    /// `P_n^{(α,β)}(t)` as a [`LogValue`], finite even when the plain value
    /// would overflow.
    pub fn eval_log(&self, n: usize, t: T) -> LogValue<T> {
        let mut walk = OrthonormalWalk::new(self, t, LogValue::one());
        for j in 0..n {
            walk.advance(self, j);
        }
        walk.log_value() * LogValue::from_ln(self.ln_norm(n) / T::lit(2.0))
    }

    /// `K_n(t,u) = Σ_{k≤n} p_k(t) p_k(u)`.
    pub fn kernel(&self, n: usize, t: T, u: T) -> T {
        let mut wt = OrthonormalWalk::new(self, t, LogValue::one());
        let mut wu = OrthonormalWalk::new(self, u, LogValue::one());
        let mut acc = wt.value() * wu.value();
        for j in 0..n {
            wt.advance(self, j);
            wu.advance(self, j);
            acc = acc + wt.value() * wu.value();
        }
        acc
    }

    /// Christoffel–Darboux quotient for `t ≠ u`. Loses accuracy as `t → u`;
    /// [`JacobiParams::kernel`] is the default path.
    pub fn kernel_christoffel_darboux(&self, n: usize, t: T, u: T) -> T {
        let mut wt = OrthonormalWalk::new(self, t, LogValue::one());
        let mut wu = OrthonormalWalk::new(self, u, LogValue::one());
        for j in 0..n {
            wt.advance(self, j);
            wu.advance(self, j);
        }
        let (pt, pu) = (wt.value(), wu.value());
        wt.advance(self, n);
        wu.advance(self, n);
        self.recurrence_offdiag(n + 1) * (wt.value() * pu - pt * wu.value()) / (t - u)
    }

    /// `ln` of the prefactor `2^{−α−β−1} Γ(n+α+β+2) / (Γ(α+1) Γ(n+β+1))`.
    fn ln_kernel_at_one_prefactor(&self, n: usize) -> T {
        let (a, b) = (self.alpha, self.beta);
        let one = T::one();
        let nn = T::count(n);
        -(a + b + one) * T::LN_2() - ln_gamma(a + one) + ln_gamma_ratio(nn + b + one, a + one)
    }

    fn shifted(&self) -> Self {
        Self { alpha: self.alpha + T::one(), beta: self.beta }
    }

    /// Closed form of `K_n(t, 1)` via a single `P_n^{(α+1,β)}(t)`.
    pub fn kernel_at_one(&self, n: usize, t: T) -> T {
        self.ln_kernel_at_one_prefactor(n).exp() * self.shifted().eval(n, t)
    }

    /// [`JacobiParams::kernel_at_one`] in log form.
    pub fn kernel_at_one_log(&self, n: usize, t: T) -> LogValue<T> {
        LogValue::from_ln(self.ln_kernel_at_one_prefactor(n)) * self.shifted().eval_log(n, t)
    }

    /// `ln K_n(1,1)`.
    pub fn ln_kernel_one_one(&self, n: usize) -> T {
        let (a, one) = (self.alpha, T::one());
        let nn = T::count(n);
        self.ln_kernel_at_one_prefactor(n) + ln_gamma_ratio(nn + one, a + one) - ln_gamma(a + T::lit(2.0))
    }

    /// Closed form of `K_n(1,1)`.
    pub fn kernel_one_one(&self, n: usize) -> T {
        self.ln_kernel_one_one(n).exp()
    }

    pub fn kernel_one_one_log(&self, n: usize) -> LogValue<T> {
        LogValue::from_ln(self.ln_kernel_one_one(n))
    }

    /// `n`-node Gauss–Jacobi rule via Golub–Welsch.
    pub fn gauss_rule(&self, n: usize) -> Result<QuadratureRule<T>> {
        if n == 0 {
            return Err(param("a Gauss rule needs at least one node"));
        }
        let diag: Vec<T> = (0..n).map(|j| self.recurrence_diag(j)).collect();
        let off: Vec<T> = (1..n).map(|j| self.recurrence_offdiag(j)).collect();
        QuadratureRule::golub_welsch(&diag, &off, self.norm(0))
    }
}

/// Forward orthonormal recurrence carrying a shared binary exponent, so that
/// `scale · p_j(t)` is available for every `j` without overflow or underflow.
#[derive(Clone, Debug)]
pub(crate) struct OrthonormalWalk<T> {
    t: T,
    prev: T,
    cur: T,
    exp2: i64,
    zero: bool,
}

impl<T: Real> OrthonormalWalk<T> {
    /// Starts at `scale · p_0(t)`, with `p_0 = h_0^{-1/2}`.
    pub(crate) fn new(p: &JacobiParams<T>, t: T, scale: LogValue<T>) -> Self {
        let start = scale * LogValue::from_ln(-p.ln_norm(0) / T::lit(2.0));
        if start.is_zero() {
            return Self { t, prev: T::zero(), cur: T::zero(), exp2: 0, zero: true };
        }
        let (mant, exp2) = start.binary_parts();
        Self { t, prev: T::zero(), cur: mant, exp2, zero: false }
    }

    /// Steps from `p_j` to `p_{j+1}`.
    #[inline]
    pub(crate) fn advance(&mut self, p: &JacobiParams<T>, j: usize) {
        let sb_next = p.recurrence_offdiag(j + 1);
        let sb_cur = if j == 0 { T::zero() } else { p.recurrence_offdiag(j) };
        self.advance_with(p.recurrence_diag(j), sb_cur, sb_next);
    }

    /// Steps with precomputed coefficients `a_j`, `√b_j`, `√b_{j+1}`.
    #[inline]
    pub(crate) fn advance_with(&mut self, diag: T, sb_cur: T, sb_next: T) {
        if self.zero {
            return;
        }
        let next = ((self.t - diag) * self.cur - sb_cur * self.prev) / sb_next;
        self.prev = self.cur;
        self.cur = next;
        let big = T::rescale_threshold();
        let mag = self.cur.abs();
        if mag > big || (mag < big.recip() && self.prev.abs() < big.recip()) {
            let reference = if mag > T::zero() { mag } else { self.prev.abs() };
            if reference > T::zero() {
                let (_, e) = frexp(reference);
                self.cur = ldexp(self.cur, -e);
                self.prev = ldexp(self.prev, -e);
                self.exp2 += e;
            }
        }
    }

    /// Current value as a plain real (may saturate).
    #[inline]
    pub(crate) fn value(&self) -> T {
        ldexp(self.cur, self.exp2)
    }

    /// Current value as `(mantissa, exponent)`.
    #[inline]
    pub(crate) fn scaled(&self) -> (T, i64) {
        (self.cur, self.exp2)
    }

    pub(crate) fn log_value(&self) -> LogValue<T> {
        LogValue::from_real(self.cur).scale2(self.exp2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jp(a: f64, b: f64) -> JacobiParams<f64> {
        JacobiParams::new(a, b).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn rejects_nonintegrable_weights() {
        assert!(JacobiParams::new(-1.0, 0.0).is_err());
        assert!(JacobiParams::new(0.0, -1.2).is_err());
        assert!(JacobiParams::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn eval_examples() {
        for &t in &[-1.0, -0.3, 0.0, 0.7, 1.0] {
            assert_eq!(jp(0.0, 0.0).eval(1, t), t);
        }
        assert_eq!(jp(1.0, 0.0).eval(1, 1.0), 2.0);
        assert_eq!(jp(0.0, 0.0).eval(2, 1.0), 1.0);
        assert_eq!(jp(0.0, 0.0).eval(0, 0.4), 1.0);
    }

    #[test]
    fn orthonormal_examples() {
        let p = jp(0.0, 0.0);
        assert!(close(p.eval_orthonormal(0, 0.3), 0.5f64.sqrt(), 1e-15));
        assert!(close(p.eval_orthonormal(1, 1.0), 1.5f64.sqrt(), 1e-15));
    }

    #[test]
    fn norm_examples() {
        assert!(close(jp(0.0, 0.0).norm(0), 2.0, 1e-14));
        assert!(close(jp(0.0, 0.0).norm(1), 2.0 / 3.0, 1e-14));
        assert!(close(jp(1.0, 0.0).norm(0), 2.0, 1e-14));
        // α+β = −1: h_0 = 2^0 Γ(1/2)Γ(1/2)/Γ(1) = π
        assert!(close(jp(-0.5, -0.5).norm(0), std::f64::consts::PI, 1e-14));
    }

    #[test]
    fn kernel_examples() {
        let p = jp(0.0, 0.0);
        assert!(close(p.kernel(0, 0.2, -0.9), 0.5, 1e-14));
        for &t in &[-1.0, -0.4, 0.25, 1.0] {
            assert!(close(p.kernel(1, t, 1.0), (3.0 * t + 1.0) / 2.0, 1e-14) || (3.0 * t + 1.0) == 0.0);
            assert!(close(p.kernel_at_one(1, t), (3.0 * t + 1.0) / 2.0, 1e-14) || (3.0 * t + 1.0) == 0.0);
        }
        assert!(close(p.kernel_at_one(1, 1.0), 2.0, 1e-14));
        assert!(close(p.kernel_one_one(1), 2.0, 1e-14));
        assert!(close(p.kernel_one_one(0), 0.5, 1e-14));
        assert!(close(jp(1.0, 0.0).kernel_one_one(0), 0.5, 1e-14));
    }

    #[test]
    fn kernel_is_symmetric() {
        let p = jp(0.5, 1.5);
        for n in [0, 1, 5, 17] {
            assert_eq!(p.kernel(n, 0.3, -0.8), p.kernel(n, -0.8, 0.3));
        }
    }

    #[test]
    fn christoffel_darboux_matches_sum_off_diagonal() {
        let p = jp(0.5, 2.0);
        for n in [1, 4, 20] {
            let direct = p.kernel(n, 0.3, -0.6);
            let cd = p.kernel_christoffel_darboux(n, 0.3, -0.6);
            assert!(close(cd, direct, 1e-11), "n={n}: {cd} vs {direct}");
        }
    }

    #[test]
    fn log_eval_matches_plain() {
        let p = jp(0.5, 3.0);
        for n in [0, 1, 7, 40] {
            for &t in &[-0.95, -0.2, 0.6, 1.0] {
                let plain = p.eval(n, t);
                let logged = p.eval_log(n, t).to_real();
                assert!((plain - logged).abs() <= 1e-11 * plain.abs().max(1.0), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn log_eval_survives_huge_beta() {
        // P_n^{(0,β)}(−1) = (−1)^n C(n+β, n)
        let p = jp(0.0, 3000.0);
        let v = p.eval_log(400, -1.0);
        let expect = crate::specfun::log_binomial(3400.0f64, 400).unwrap();
        assert_eq!(v.sign(), 1);
        assert!(close(v.log_magnitude(), expect, 1e-11));
    }

    #[test]
    fn gauss_rule_examples() {
        let r = jp(0.0, 0.0).gauss_rule(1).unwrap();
        assert!(r.nodes()[0].abs() < 1e-15);
        assert!(close(r.weights()[0], 2.0, 1e-14));
        let r = jp(0.0, 0.0).gauss_rule(2).unwrap();
        assert!(close(r.nodes()[0], -1.0 / 3f64.sqrt(), 1e-14));
        assert!(close(r.nodes()[1], 1.0 / 3f64.sqrt(), 1e-14));
        assert!(close(r.weights()[0], 1.0, 1e-14));
        let r = jp(1.0, 0.0).gauss_rule(1).unwrap();
        assert!(close(r.nodes()[0], -1.0 / 3.0, 1e-14));
        assert!(close(r.weights()[0], 2.0, 1e-14));
        assert!(jp(0.0, 0.0).gauss_rule(0).is_err());
    }

    #[test]
    fn degenerate_sum_minus_one() {
        // Chebyshev first kind: α = β = −1/2, nodes cos((2i−1)π/2n), equal weights π/n
        let n = 7;
        let r = jp(-0.5, -0.5).gauss_rule(n).unwrap();
        for (i, (x, w)) in r.iter().enumerate() {
            let expect = -((2 * i + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            assert!((x - expect).abs() < 1e-14);
            assert!(close(w, std::f64::consts::PI / n as f64, 1e-13));
        }
        // α+β = −1 with α ≠ β
        let p = jp(-0.4, -0.6);
        let rule = p.gauss_rule(12).unwrap();
        let g = rule.integrate(|t| p.eval(3, t) * p.eval(3, t));
        assert!(close(g, p.norm(3), 1e-12));
    }

    #[test]
    fn generic_over_f32() {
        let p = JacobiParams::new(0.5f32, 1.0).unwrap();
        let rule = p.gauss_rule(6).unwrap();
        let g = rule.integrate(|t| p.eval(2, t) * p.eval(2, t));
        assert!((g - p.norm(2)).abs() / p.norm(2) < 1e-4);
    }
}
