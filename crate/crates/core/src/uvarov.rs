//! Jacobi polynomials modified by a point mass `M` at `t = 1`.
//!
//! The inner product is `(f,g)^M = ∫ f g (1−t)^α (1+t)^β dt + M f(1) g(1)`.
//! Every quantity is a rank-one correction of its classical counterpart, so
//! nothing beyond the classical kernels at `t = 1` is needed. The mass is
//! stored as a logarithm because the ball construction feeds masses of order
//! `2^k`.

use crate::error::{param, Result};
use crate::jacobi::JacobiParams;
use crate::scalar::{softplus, Real};
use crate::specfun::ln_binomial_unchecked;

/// Jacobi exponents plus a point mass `M ≥ 0` at `t = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UvarovParams<T> {
    base: JacobiParams<T>,
    ln_mass: T,
}

impl<T: Real> UvarovParams<T> {
    pub fn new(base: JacobiParams<T>, mass: T) -> Result<Self> {
        if !(mass >= T::zero()) || !mass.is_finite() {
            return Err(param(format!("point mass must be finite and >= 0, got {mass}")));
        }
        Ok(Self { base, ln_mass: mass.ln() })
    }

    /// Mass given by its natural logarithm (`-inf` for `M = 0`).
    pub fn with_ln_mass(base: JacobiParams<T>, ln_mass: T) -> Result<Self> {
        if ln_mass.is_nan() || ln_mass == T::infinity() {
            return Err(param(format!("log-mass must be < +inf, got {ln_mass}")));
        }
        Ok(Self { base, ln_mass })
    }

    pub fn base(&self) -> &JacobiParams<T> {
        &self.base
    }

    /// `M`, saturating to `inf` when the stored log exceeds the float range.
    pub fn mass(&self) -> T {
        self.ln_mass.exp()
    }

    pub fn ln_mass(&self) -> T {
        self.ln_mass
    }

    pub fn is_massless(&self) -> bool {
        self.ln_mass == T::neg_infinity()
    }

    /// `ln(1 + M K_{k−1}(1,1))`, zero for `k = 0`.
    fn ln_deflation(&self, k: usize) -> T {
        if k == 0 {
            T::zero()
        } else {
            softplus(self.ln_mass + self.base.ln_kernel_one_one(k - 1))
        }
    }

    /// `q_k(t) = P_k(t) − [M P_k(1) / (1 + M K_{k−1}(1,1))] K_{k−1}(1,t)`.
    pub fn eval(&self, k: usize, t: T) -> T {
        if k == 0 || self.is_massless() {
            return self.base.eval(k, t);
        }
        if t == T::one() {
            return self.value_at_one(k);
        }
        let ln_p1 = ln_binomial_unchecked(T::count(k) + self.base.alpha(), k);
        let coef = (self.ln_mass + ln_p1 - self.ln_deflation(k)).exp();
        self.base.eval(k, t) - coef * self.base.kernel_at_one(k - 1, t)
    }

    /// `q_k(1) = P_k(1) / (1 + M K_{k−1}(1,1))`.
    pub fn value_at_one(&self, k: usize) -> T {
        let ln_p1 = ln_binomial_unchecked(T::count(k) + self.base.alpha(), k);
        (ln_p1 - self.ln_deflation(k)).exp()
    }

    /// `ln h̃_k`.
    pub fn ln_norm(&self, k: usize) -> T {
        self.base.ln_norm(k) + self.ln_deflation(k + 1) - self.ln_deflation(k)
    }

    /// `h̃_k = h_k (1 + M K_k(1,1)) / (1 + M K_{k−1}(1,1))`; at `k = 0` this is `h_0 + M`.
    pub fn norm(&self, k: usize) -> T {
        self.ln_norm(k).exp()
    }

    /// `K̃_k(t,s) = K_k(t,s) − K_k(1,t) K_k(1,s) / (M^{-1} + K_k(1,1))`.
    pub fn kernel(&self, k: usize, t: T, s: T) -> T {
        let classical = self.base.kernel(k, t, s);
        if self.is_massless() {
            return classical;
        }
        if t == T::one() || s == T::one() {
            // K̃(t,1) = K(t,1) / (1 + M K(1,1)), free of cancellation
            let other = if t == T::one() { s } else { t };
            let shrink = (-softplus(self.ln_mass + self.base.ln_kernel_one_one(k))).exp();
            return self.base.kernel_at_one(k, other) * shrink;
        }
        let inv_mass = (-self.ln_mass).exp();
        let correction =
            self.base.kernel_at_one(k, t) * self.base.kernel_at_one(k, s) / (inv_mass + self.base.kernel_one_one(k));
        classical - correction
    }

    /// `K̃_k(1,1) = K_k(1,1) / (1 + M K_k(1,1))`, bounded by `1/M`.
    pub fn kernel_one_one(&self, k: usize) -> T {
        let ln_k = self.base.ln_kernel_one_one(k);
        (ln_k - softplus(self.ln_mass + ln_k)).exp()
    }

    /// Orthogonal-sum form `Σ_{j≤k} q_j(t) q_j(s) / h̃_j` of the kernel.
    pub fn kernel_by_sum(&self, k: usize, t: T, s: T) -> T {
        (0..=k).map(|j| self.eval(j, t) * self.eval(j, s) / self.norm(j)).sum()
    }
}
