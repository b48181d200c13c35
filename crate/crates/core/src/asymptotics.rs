//! Finite-`n` evaluation of the large-degree limits of the modified ball
//! kernel, and the sweeps that tabulate them.
//!
//! * boundary: `𝕂̃_n(x,x) / C(n+d−1, n) → 2/λ` for `‖x‖ = 1`;
//! * interior: `𝕂̃_n(x,x) / C(n+d, d) → π^{-1/2} Γ(μ+1) Γ((d+1)/2) / Γ(μ+d/2+1) · (1−r²)^{−μ−1/2}`.

use rayon::prelude::*;

use crate::ball::{BallParams, BallPoint};
use crate::error::{param, Error, Result};
use crate::harmonics::UnitDirection;
use crate::jacobi::{JacobiParams, OrthonormalWalk};
use crate::scalar::{pairwise_sum, Real};
use crate::specfun::{ln_binomial_unchecked, ln_gamma, ln_gamma_ratio, LogValue};

/// One row of a convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRecord<T> {
    pub n: usize,
    pub d: usize,
    pub mu: T,
    pub lambda: T,
    pub r: T,
    pub ratio: T,
    pub target: T,
    pub abs_err: T,
    pub rel_err: T,
}

impl<T: Real> ConvergenceRecord<T> {
    pub fn new(bp: &BallParams<T>, n: usize, r: T, ratio: T, target: T) -> Self {
        let abs_err = (ratio - target).abs();
        Self {
            n,
            d: bp.d(),
            mu: bp.mu(),
            lambda: bp.lambda(),
            r,
            ratio,
            target,
            abs_err,
            rel_err: abs_err / target.abs(),
        }
    }
}

/// `ln` of `F_k(1) = dim H_k^d` as a real, valid for every `k`.
fn ln_harmonic_dim<T: Real>(d: usize, k: usize) -> T {
    if d == 2 {
        return if k == 0 { T::zero() } else { T::LN_2() };
    }
    let delta = T::count(d - 2) / T::lit(2.0);
    ((T::count(k) + delta) / delta).ln() + ln_binomial_unchecked(T::count(k + d - 3), k)
}

/// `𝕂̃_n(x,x) / C(n+d−1, n)` on the sphere, in `O(n)` from the closed forms
/// of `K_m(1,1)`.
pub fn boundary_ratio<T: Real>(bp: &BallParams<T>, n: usize) -> Result<T> {
    bp.require_asymptotic()?;
    if !(bp.lambda() > T::zero()) {
        return Err(param("the boundary limit needs lambda > 0"));
    }
    let d = bp.d();
    let ln_norm = ln_binomial_unchecked(T::count(n + d - 1), n);
    let (lambda, c) = (bp.lambda(), bp.c());
    let terms: Vec<T> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let m = (n - k) / 2;
            // 2^k K_m^{(μ,k+δ)}(1,1)
            let ln_b = T::count(k) * T::LN_2() + bp.radial_params(k).ln_kernel_one_one(m);
            (ln_harmonic_dim::<T>(d, k) - ln_norm).exp() / (lambda + c * (-ln_b).exp())
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

/// The interior limit at radius `r`.
pub fn interior_limit_target<T: Real>(bp: &BallParams<T>, r: T) -> Result<T> {
    bp.require_asymptotic()?;
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::Domain(format!("interior limit needs 0 <= r < 1, got {r}")));
    }
    let half = T::lit(0.5);
    let mu = bp.mu();
    let d = T::count(bp.d());
    let ln_const = ln_gamma((d + T::one()) * half) - ln_gamma_ratio(mu + T::one(), d * half) - half * T::PI().ln();
    Ok((ln_const - (half + mu) * (T::one() - r * r).ln()).exp())
}

fn interior_point<T: Real>(bp: &BallParams<T>, x: &BallPoint<T>) -> Result<()> {
    bp.require_asymptotic()?;
    if !(x.r() < T::one()) {
        return Err(Error::Domain(format!("interior ratio needs r < 1, got {}", x.r())));
    }
    Ok(())
}

/// `𝕂̃_n(x,x) / C(n+d, d)`; `O(n²)`.
pub fn interior_ratio<T: Real>(bp: &BallParams<T>, n: usize, x: &BallPoint<T>) -> Result<T> {
    interior_point(bp, x)?;
    let ln_norm = ln_binomial_unchecked(T::count(n + bp.d()), bp.d());
    Ok(bp.kernel_modified(n, x, x)? / ln_norm.exp())
}

/// `[𝕂_n(x,x) − 𝕂̃_n(x,x)] / [n^{d−1} ln n · (2(1−r²)+4/n²)^{−μ−1/2} (2r²+4/n²)^{−δ−1/2}]`.
pub fn difference_bound_check<T: Real>(bp: &BallParams<T>, n: usize, x: &BallPoint<T>) -> Result<T> {
    interior_point(bp, x)?;
    if !(x.r() > T::zero()) || n < 2 {
        return Err(param("difference bound needs 0 < r < 1 and n >= 2"));
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let nn = T::count(n);
    let (r2, eps) = (x.r() * x.r(), T::lit(4.0) / (nn * nn));
    let ln_scale = T::count(bp.d() - 1) * nn.ln() + nn.ln().ln()
        - (bp.mu() + half) * (two * (T::one() - r2) + eps).ln()
        - (bp.delta() + half) * (two * r2 + eps).ln();
    Ok(bp.kernel_difference(n, x, x)? / ln_scale.exp())
}

/// `(1+t)^k K_m^{(μ,k+δ)}(t,t)` divided by
/// `(N+1)(1−t+(N+1)^{−2})^{−μ−1/2}(1+t+(N+1)^{−2})^{−δ−1/2}` with `N = ⌊n/2⌋`
/// and `m = ⌊(n−k)/2⌋`.
pub fn lemma6_bound_check<T: Real>(mu: T, delta: T, n: usize, k: usize, t: T) -> Result<T> {
    if k > n || (n - k) / 2 < 1 {
        return Err(param(format!("need floor((n-k)/2) >= 1, got n = {n}, k = {k}")));
    }
    if !(t > -T::one() && t <= T::one()) {
        return Err(Error::Domain(format!("t must lie in (-1, 1], got {t}")));
    }
    if !(delta >= T::zero()) {
        return Err(param(format!("delta must be >= 0, got {delta}")));
    }
    let p = JacobiParams::new(mu, T::count(k) + delta)?;
    let m = (n - k) / 2;
    let scale = LogValue::from_ln(T::count(k) * (T::one() + t).ln() / T::lit(2.0));
    let mut walk = OrthonormalWalk::new(&p, t, scale);
    let mut sum = LogValue::zero();
    let mut block = T::zero();
    let mut block_exp = walk.scaled().1;
    for j in 0..=m {
        let (mant, e) = walk.scaled();
        if e != block_exp {
            sum = add_log(sum, LogValue::from_real(block).scale2(2 * block_exp));
            block = T::zero();
            block_exp = e;
        }
        block = block + mant * mant;
        if j < m {
            walk.advance(&p, j);
        }
    }
    sum = add_log(sum, LogValue::from_real(block).scale2(2 * block_exp));
    let half = T::lit(0.5);
    let big_n = T::count(n / 2 + 1);
    let eps = (big_n * big_n).recip();
    let ln_rhs = big_n.ln() - (mu + half) * (T::one() - t + eps).ln() - (delta + half) * (T::one() + t + eps).ln();
    Ok((sum.log_magnitude() - ln_rhs).exp())
}

/// Sum of two non-negative log values.
fn add_log<T: Real>(a: LogValue<T>, b: LogValue<T>) -> LogValue<T> {
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let (la, lb) = (a.log_magnitude(), b.log_magnitude());
    let (hi, lo) = if la >= lb { (la, lb) } else { (lb, la) };
    LogValue::from_ln(hi + (lo - hi).exp().ln_1p())
}

/// The 41-point grid `t_i = −1 + 2i/41`, `i = 1..=41`.
pub fn lemma6_t_grid<T: Real>() -> Vec<T> {
    (1..=41).map(|i| -T::one() + T::count(2 * i) / T::lit(41.0)).collect()
}

/// Supremum of [`lemma6_bound_check`] over `0 ≤ k ≤ n−2` and the given `t`s.
pub fn lemma6_grid_supremum<T: Real>(mu: T, delta: T, n: usize, grid: &[T]) -> Result<T> {
    if n < 2 {
        return Err(param("the grid supremum needs n >= 2"));
    }
    let per_k: Result<Vec<T>> = (0..=n - 2)
        .into_par_iter()
        .map(|k| {
            grid.iter()
                .map(|&t| lemma6_bound_check(mu, delta, n, k, t))
                .try_fold(T::zero(), |acc, v| v.map(|v| acc.max(v)))
        })
        .collect();
    Ok(per_k?.into_iter().fold(T::zero(), T::max))
}

/// Which limit a sweep tabulates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepKind<T> {
    Boundary,
    /// Interior point at radius `r` (the direction does not enter the diagonal).
    Interior {
        r: T,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig<T> {
    pub params: BallParams<T>,
    pub kind: SweepKind<T>,
    pub schedule: Vec<usize>,
}

/// `{⌊n_max / 2^i⌋ ≥ n_min}` in increasing order; empty when `n_max < n_min`.
pub fn geometric_schedule(n_min: usize, n_max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut n = n_max;
    while n >= n_min && n > 0 {
        out.push(n);
        n /= 2;
    }
    out.reverse();
    out
}

/// Evaluates every schedule entry (in parallel) and returns rows in schedule order.
pub fn run_sweep<T: Real>(config: &SweepConfig<T>) -> Result<Vec<ConvergenceRecord<T>>> {
    let bp = &config.params;
    bp.require_asymptotic()?;
    match config.kind {
        SweepKind::Boundary => {
            if !(bp.lambda() > T::zero()) {
                return Err(param("a boundary sweep needs lambda > 0"));
            }
            let target = T::lit(2.0) / bp.lambda();
            config
                .schedule
                .par_iter()
                .map(|&n| Ok(ConvergenceRecord::new(bp, n, T::one(), boundary_ratio(bp, n)?, target)))
                .collect()
        }
        SweepKind::Interior { r } => {
            let target = interior_limit_target(bp, r)?;
            let mut axis = vec![T::zero(); bp.d()];
            axis[0] = T::one();
            let x = BallPoint::new(r, UnitDirection::new(axis)?)?;
            config
                .schedule
                .par_iter()
                .map(|&n| Ok(ConvergenceRecord::new(bp, n, r, interior_ratio(bp, n, &x)?, target)))
                .collect()
        }
    }
}

/// Final row within `tol` and better than the row before it.
pub fn sweep_converged<T: Real>(records: &[ConvergenceRecord<T>], tol: T) -> bool {
    match records {
        [] => false,
        [only] => only.rel_err < tol,
        [.., prev, last] => last.rel_err < tol && last.rel_err < prev.rel_err,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn target_examples() {
        let bp = BallParams::new(2, 0.0, 1.0).unwrap();
        assert!(close(interior_limit_target(&bp, 0.0).unwrap(), 0.5, 1e-14));
        assert!(close(interior_limit_target(&bp, 0.5).unwrap(), 0.5 / 0.75f64.sqrt(), 1e-14));
        let bp3 = BallParams::new(3, 0.0, 1.0).unwrap();
        // Γ(1)Γ(2)/(√π Γ(5/2)) = 4/(3π)
        let want = 4.0 / (3.0 * std::f64::consts::PI);
        assert!(close(interior_limit_target(&bp3, 0.0).unwrap(), want, 1e-14));
        assert!(interior_limit_target(&bp, 1.0).is_err());
    }

    #[test]
    fn boundary_matches_generic_kernel() {
        for d in [2, 3] {
            for &mu in &[0.0, 0.5] {
                let bp = BallParams::new(d, mu, 1.5).unwrap();
                let mut x = vec![0.0; d];
                x[0] = 0.6;
                x[1] = 0.8;
                let x = BallPoint::from_cartesian(&x).unwrap();
                for n in [0, 1, 7, 40] {
                    let norm = ln_binomial_unchecked((n + d - 1) as f64, n).exp();
                    let generic = bp.kernel_modified(n, &x, &x).unwrap() / norm;
                    assert!(close(boundary_ratio(&bp, n).unwrap(), generic, 1e-10));
                }
            }
        }
    }

    #[test]
    fn boundary_needs_mass() {
        let bp = BallParams::new(2, 0.0, 0.0).unwrap();
        assert!(boundary_ratio(&bp, 10).is_err());
    }

    #[test]
    fn schedules() {
        assert_eq!(geometric_schedule(125, 10000), vec![156, 312, 625, 1250, 2500, 5000, 10000]);
        assert_eq!(geometric_schedule(125, 2000), vec![125, 250, 500, 1000, 2000]);
        assert!(geometric_schedule(125, 100).is_empty());
        let cfg =
            SweepConfig { params: BallParams::new(2, 0.0, 1.0).unwrap(), kind: SweepKind::Boundary, schedule: vec![] };
        assert!(run_sweep(&cfg).unwrap().is_empty());
    }

    #[test]
    fn lemma6_checks() {
        assert!(lemma6_bound_check(0.0, 0.0, 3, 2, 0.0).is_err());
        assert!(lemma6_bound_check(0.0, 0.0, 10, 0, -1.0).is_err());
        let v = lemma6_bound_check(0.5, 0.5, 40, 6, 0.3).unwrap();
        // direct recomputation
        let p = JacobiParams::new(0.5, 6.5).unwrap();
        let direct = 1.3f64.powi(6) * p.kernel(17, 0.3, 0.3);
        let rhs = 21.0 * (0.7f64 + 1.0 / 441.0).powf(-1.0) * (1.3f64 + 1.0 / 441.0).powf(-1.0);
        assert!(close(v, direct / rhs, 1e-12));
    }

    #[test]
    fn difference_ratio_positive() {
        let bp = BallParams::new(2, 0.0, 1.0).unwrap();
        let x = BallPoint::from_cartesian(&[0.3, 0.4]).unwrap();
        assert!(difference_bound_check(&bp, 50, &x).unwrap() > 0.0);
        let bp0 = bp.with_lambda(0.0).unwrap();
        assert_eq!(difference_bound_check(&bp0, 50, &x).unwrap(), 0.0);
    }
}
