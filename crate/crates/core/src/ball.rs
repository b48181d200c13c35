//! Orthogonal polynomials on the unit ball `B^d` for the weight
//! `W_μ(x) = (1 − ‖x‖²)^μ / ω_μ`, with and without the uniform mass
//! `(λ/σ_{d−1}) ∫_{S^{d−1}} f g dσ` on the sphere.
//!
//! Bases are `P^n_{j,ν}(x) = P_j^{(μ,β_k)}(2‖x‖²−1) r^k Y_ν^k(ξ)` with `k = n − 2j`
//! and `β_k = k + (d−2)/2`; the modified basis swaps the Jacobi factor for the
//! point-mass polynomial with mass `M_k = λ 2^k / c_μ^d`.
//!
//! Kernels use the Gegenbauer reduction
//! `𝕂_n(x,y) = c^{-1} Σ_k F_k(⟨ξ,ρ⟩) Σ_{j ≤ ⌊(n−k)/2⌋} R_j(r) R_j(s)`,
//! where `R_j(r) = (√2 r)^k p̂_j^{(μ,β_k)}(2r²−1)` are scaled orthonormal radial
//! functions. These stay polynomially bounded in `n` for every `r ∈ [0,1]`,
//! so the kernels are summed in ordinary floating point.

use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::gegenbauer::SphericalFactor;
use crate::harmonics::{harmonic_basis_eval, SphereRule, UnitDirection};
use crate::jacobi::{JacobiParams, OrthonormalWalk};
use crate::scalar::{pairwise_sum, softplus, Real};
use crate::specfun::{check_ball, harmonic_dim, ln_c_mu_d, ln_pochhammer, LogValue};
use crate::uvarov::UvarovParams;

/// Below this many harmonic degrees the kernel sums run sequentially.
const PAR_MIN_DEGREES: usize = 64;

/// Dimension `d`, ball exponent `μ` and sphere mass `λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallParams<T> {
    d: usize,
    mu: T,
    lambda: T,
    delta: T,
    ln_c: T,
}

impl<T: Real> BallParams<T> {
    pub fn new(d: usize, mu: T, lambda: T) -> Result<Self> {
        check_ball(mu, d)?;
        if !(lambda >= T::zero()) || !lambda.is_finite() {
            return Err(param(format!("sphere mass must be finite and >= 0, got {lambda}")));
        }
        Ok(Self { d, mu, lambda, delta: T::count(d - 2) / T::lit(2.0), ln_c: ln_c_mu_d(mu, d)? })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// `δ = (d − 2)/2`.
    pub fn delta(&self) -> T {
        self.delta
    }

    /// `c_μ^d`.
    pub fn c(&self) -> T {
        self.ln_c.exp()
    }

    pub fn ln_c(&self) -> T {
        self.ln_c
    }

    /// Same `d` and `μ` with a different sphere mass.
    pub fn with_lambda(&self, lambda: T) -> Result<Self> {
        Self::new(self.d, self.mu, lambda)
    }

    /// The asymptotic results are stated for `μ ≥ −1/2`.
    pub fn require_asymptotic(&self) -> Result<()> {
        if self.mu < -T::lit(0.5) {
            return Err(param(format!("asymptotic routines require mu >= -1/2, got {}", self.mu)));
        }
        Ok(())
    }

    /// Jacobi exponents `(μ, k + δ)` of the radial factor at harmonic degree `k`.
    pub fn radial_params(&self, k: usize) -> JacobiParams<T> {
        JacobiParams::new(self.mu, T::count(k) + self.delta).expect("validated exponents")
    }

    /// `M_k = λ 2^k / c_μ^d` in log form.
    pub fn mass_for_harmonic_degree_log(&self, k: usize) -> LogValue<T> {
        if self.lambda == T::zero() {
            return LogValue::zero();
        }
        LogValue::from_ln(self.lambda.ln() - self.ln_c).scale2(k as i64)
    }

    /// `M_k = λ 2^k / c_μ^d` (saturates to `inf` for very large `k`).
    pub fn mass_for_harmonic_degree(&self, k: usize) -> T {
        self.mass_for_harmonic_degree_log(k).to_real()
    }

    /// Radial point-mass parameters at harmonic degree `k`.
    pub fn radial_uvarov(&self, k: usize) -> UvarovParams<T> {
        let ln_mass = self.mass_for_harmonic_degree_log(k).log_magnitude();
        UvarovParams::with_ln_mass(self.radial_params(k), ln_mass).expect("finite log-mass")
    }
}

fn sphere_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(64.0))
}

/// A point `x = r ξ` of the closed unit ball.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint<T> {
    r: T,
    xi: UnitDirection<T>,
}

impl<T: Real> BallPoint<T> {
    /// `r ∈ [0,1]` and a unit direction.
    pub fn new(r: T, xi: UnitDirection<T>) -> Result<Self> {
        if !(r >= T::zero() && r <= T::one()) {
            return Err(Error::Domain(format!("radius must lie in [0, 1], got {r}")));
        }
        Ok(Self { r, xi })
    }

    /// From Cartesian coordinates. Norms above `1 + 1e−12` are rejected and
    /// norms within `1e−12` of 1 are snapped onto the sphere.
    pub fn from_cartesian(coords: &[T]) -> Result<Self> {
        let d = coords.len();
        if d < 2 {
            return Err(param(format!("a ball point needs d >= 2 coordinates, got {d}")));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(param("point has non-finite coordinates"));
        }
        let norm = coords.iter().map(|c| *c * *c).sum::<T>().sqrt();
        let tol = sphere_tolerance::<T>();
        if norm > T::one() + tol {
            return Err(Error::Domain(format!("point lies outside the unit ball (norm {norm})")));
        }
        if norm == T::zero() {
            return Ok(Self::origin(d));
        }
        let r = if (norm - T::one()).abs() <= tol { T::one() } else { norm };
        Ok(Self { r, xi: UnitDirection::normalized(coords.to_vec())? })
    }

    /// The centre; its direction is an arbitrary placeholder.
    pub fn origin(d: usize) -> Self {
        Self { r: T::zero(), xi: UnitDirection::axis(d) }
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn xi(&self) -> &UnitDirection<T> {
        &self.xi
    }

    pub fn dim(&self) -> usize {
        self.xi.dim()
    }

    /// `t = 2r² − 1`.
    pub fn t(&self) -> T {
        T::lit(2.0) * self.r * self.r - T::one()
    }

    pub fn cartesian(&self) -> Vec<T> {
        self.xi.coords().iter().map(|c| *c * self.r).collect()
    }
}

/// Total degree `n` and radial index `j ≤ ⌊n/2⌋`; the harmonic degree is `n − 2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RadialIndex {
    n: usize,
    j: usize,
}

impl RadialIndex {
    pub fn new(n: usize, j: usize) -> Result<Self> {
        if 2 * j > n {
            return Err(param(format!("radial index needs 2j <= n, got n = {n}, j = {j}")));
        }
        Ok(Self { n, j })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Harmonic degree `k = n − 2j`.
    pub fn k(&self) -> usize {
        self.n - 2 * self.j
    }

    /// `β_k = k + (d − 2)/2`.
    pub fn beta<T: Real>(&self, d: usize) -> T {
        T::count(self.k()) + T::count(d - 2) / T::lit(2.0)
    }
}

/// All `(index, ν)` of the degree-`n` basis in evaluation order.
pub fn basis_indices(n: usize, d: usize) -> Result<Vec<(RadialIndex, usize)>> {
    let mut out = Vec::new();
    for j in 0..=n / 2 {
        let idx = RadialIndex::new(n, j)?;
        let count = harmonic_dim(idx.k(), d)? as usize;
        out.extend((1..=count).map(|nu| (idx, nu)));
    }
    Ok(out)
}

fn check_point<T: Real>(bp: &BallParams<T>, x: &BallPoint<T>) -> Result<()> {
    if x.dim() != bp.d {
        return Err(param(format!("point has dimension {}, parameters have d = {}", x.dim(), bp.d)));
    }
    Ok(())
}

/// `r^k Y_ν^k(ξ)`.
fn solid_harmonic<T: Real>(k: usize, nu: usize, x: &BallPoint<T>) -> Result<T> {
    let y = harmonic_basis_eval(k, nu, x.xi())?;
    Ok(if k == 0 { y } else { x.r().powi(k as i32) * y })
}

/// `P^n_{j,ν}(x)`; needs `d ∈ {2, 3}`.
pub fn classical_basis_eval<T: Real>(bp: &BallParams<T>, idx: RadialIndex, nu: usize, x: &BallPoint<T>) -> Result<T> {
    check_point(bp, x)?;
    let y = solid_harmonic(idx.k(), nu, x)?;
    Ok(bp.radial_params(idx.k()).eval(idx.j(), x.t()) * y)
}

/// `Q^n_{j,ν}(x)`; needs `d ∈ {2, 3}`.
pub fn modified_basis_eval<T: Real>(bp: &BallParams<T>, idx: RadialIndex, nu: usize, x: &BallPoint<T>) -> Result<T> {
    check_point(bp, x)?;
    let y = solid_harmonic(idx.k(), nu, x)?;
    Ok(bp.radial_uvarov(idx.k()).eval(idx.j(), x.t()) * y)
}

fn ln_norm_pochhammer<T: Real>(bp: &BallParams<T>, idx: RadialIndex) -> T {
    let (n, j) = (idx.n(), idx.j());
    let half_d = T::count(bp.d) / T::lit(2.0);
    let mu = bp.mu;
    ln_pochhammer(mu + T::one(), j) + ln_pochhammer(half_d, n - j) + (T::count(n - j) + mu + half_d).ln()
        - ln_pochhammer(T::one(), j)
        - ln_pochhammer(mu + half_d + T::one(), n - j)
        - (T::count(n) + mu + half_d).ln()
}

fn ln_norm_jacobi<T: Real>(bp: &BallParams<T>, idx: RadialIndex) -> T {
    bp.ln_c - T::count(idx.k()) * T::LN_2() + bp.radial_params(idx.k()).ln_norm(idx.j())
}

/// `H^n_{j}` by the Pochhammer form and by `c/2^k · h_j`; returns both.
pub fn classical_norm_h_forms<T: Real>(bp: &BallParams<T>, idx: RadialIndex) -> (T, T) {
    (ln_norm_pochhammer(bp, idx).exp(), ln_norm_jacobi(bp, idx).exp())
}

/// `⟨P^n_{j,ν}, P^n_{j,ν}⟩_μ`, independent of `ν`.
pub fn classical_norm_h<T: Real>(bp: &BallParams<T>, idx: RadialIndex) -> T {
    let (pochhammer, jacobi) = classical_norm_h_forms(bp, idx);
    debug_assert!(
        (pochhammer - jacobi).abs() <= T::lit(1e-10).max(T::epsilon() * T::lit(1e3)) * jacobi,
        "norm forms disagree: {pochhammer} vs {jacobi}"
    );
    jacobi
}

/// `⟨Q^n_{j,ν}, Q^n_{j,ν}⟩_μ^λ = c/2^k · h̃_j`.
pub fn modified_norm_h<T: Real>(bp: &BallParams<T>, idx: RadialIndex) -> T {
    let k = idx.k();
    (bp.ln_c - T::count(k) * T::LN_2() + bp.radial_uvarov(k).ln_norm(idx.j())).exp()
}

/// `(√2 r)^k` as a log value; `1` at `k = 0` for every `r`.
fn radial_scale<T: Real>(k: usize, r: T) -> LogValue<T> {
    if k == 0 {
        LogValue::one()
    } else if r == T::zero() {
        LogValue::zero()
    } else {
        LogValue::from_ln(T::count(k) * (r.ln() + T::LN_2() / T::lit(2.0)))
    }
}

/// Which of the two kernels a radial sum builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Radial {
    Classical,
    Modified,
}

impl<T: Real> BallParams<T> {
    /// `Σ_{j≤m} R_j(r) R_j(s)`, or its modified counterpart built from the
    /// orthonormal point-mass radial functions. The latter avoids the
    /// cancellation of the rank-one form near the sphere.
    fn radial_sum(&self, k: usize, m: usize, r: T, s: T, kind: Radial) -> T {
        let p = self.radial_params(k);
        let diagonal = r == s;
        let mut wr = OrthonormalWalk::new(&p, T::lit(2.0) * r * r - T::one(), radial_scale(k, r));
        let mut ws = if diagonal {
            None
        } else {
            Some(OrthonormalWalk::new(&p, T::lit(2.0) * s * s - T::one(), radial_scale(k, s)))
        };
        let modified = kind == Radial::Modified && self.lambda > T::zero();
        let mut w1 = if modified { Some(OrthonormalWalk::new(&p, T::one(), radial_scale(k, T::one()))) } else { None };
        let (c, lambda) = (self.c(), self.lambda);
        // running sums Σ R_i(1)R_i(r), Σ R_i(1)R_i(s), Σ R_i(1)² over i < j
        let (mut gr, mut gs, mut b) = (T::zero(), T::zero(), T::zero());
        let mut acc = T::zero();
        for j in 0..=m {
            let rr = wr.value();
            let rs = ws.as_ref().map_or(rr, |w| w.value());
            if let Some(w1) = &w1 {
                let r1 = w1.value();
                let denom = c + lambda * b;
                let b_next = b + r1 * r1;
                let renorm = (denom / (c + lambda * b_next)).sqrt();
                let qr = (rr - lambda * r1 * gr / denom) * renorm;
                let qs = if diagonal { qr } else { (rs - lambda * r1 * gs / denom) * renorm };
                acc = acc + qr * qs;
                gr = gr + r1 * rr;
                gs = gs + r1 * rs;
                b = b_next;
            } else {
                acc = acc + rr * rs;
            }
            if j < m {
                let (diag, sb_cur, sb_next) = (
                    p.recurrence_diag(j),
                    if j == 0 { T::zero() } else { p.recurrence_offdiag(j) },
                    p.recurrence_offdiag(j + 1),
                );
                wr.advance_with(diag, sb_cur, sb_next);
                if let Some(w) = ws.as_mut() {
                    w.advance_with(diag, sb_cur, sb_next);
                }
                if let Some(w) = w1.as_mut() {
                    w.advance_with(diag, sb_cur, sb_next);
                }
            }
        }
        acc
    }

    /// `λ A_r A_s / (c + λB)` with `A_r = 2^k r^k K_m(t,1)`, `B = 2^k K_m(1,1)`.
    fn rank_one_term(&self, k: usize, m: usize, r: T, s: T) -> T {
        let p = self.radial_params(k);
        let kk = T::count(k);
        let scaled_at_one = |r: T| -> LogValue<T> {
            let a = p.kernel_at_one_log(m, T::lit(2.0) * r * r - T::one()).scale2(k as i64);
            if k == 0 {
                a
            } else if r == T::zero() {
                LogValue::zero()
            } else {
                a * LogValue::from_ln(kk * r.ln())
            }
        };
        let ln_b = kk * T::LN_2() + p.ln_kernel_one_one(m);
        let ln_lambda = self.lambda.ln();
        let ln_denom = ln_lambda + ln_b + softplus(self.ln_c - ln_lambda - ln_b);
        (scaled_at_one(r) * scaled_at_one(s) * LogValue::from_ln(ln_lambda - ln_denom)).to_real()
    }

    fn reduce<F>(&self, n: usize, x: &BallPoint<T>, y: &BallPoint<T>, term: F) -> Result<T>
    where
        F: Fn(usize, usize, T, T) -> T + Sync,
    {
        check_point(self, x)?;
        check_point(self, y)?;
        let (r, s) = (x.r(), y.r());
        let top = if r == T::zero() || s == T::zero() { 0 } else { n };
        let factors = SphericalFactor::new(self.d)?.sequence(top, x.xi().dot(y.xi()));
        let one_k = |k: usize| factors[k] * term(k, (n - k) / 2, r, s);
        let terms: Vec<T> = if top + 1 >= PAR_MIN_DEGREES {
            (0..=top).into_par_iter().map(one_k).collect()
        } else {
            (0..=top).map(one_k).collect()
        };
        Ok(pairwise_sum(&terms) / self.c())
    }

    /// `𝕂_n(x, y)` for `W_μ` alone.
    pub fn kernel(&self, n: usize, x: &BallPoint<T>, y: &BallPoint<T>) -> Result<T> {
        self.reduce(n, x, y, |k, m, r, s| self.radial_sum(k, m, r, s, Radial::Classical))
    }

    /// `𝕂̃_n(x, y)` for `W_μ` plus the sphere mass.
    pub fn kernel_modified(&self, n: usize, x: &BallPoint<T>, y: &BallPoint<T>) -> Result<T> {
        self.reduce(n, x, y, |k, m, r, s| self.radial_sum(k, m, r, s, Radial::Modified))
    }

    /// `𝕂_n(x,y) − 𝕂̃_n(x,y)` from the per-degree rank-one closed form.
    pub fn kernel_difference(&self, n: usize, x: &BallPoint<T>, y: &BallPoint<T>) -> Result<T> {
        if self.lambda == T::zero() {
            check_point(self, x)?;
            check_point(self, y)?;
            return Ok(T::zero());
        }
        self.reduce(n, x, y, |k, m, r, s| self.rank_one_term(k, m, r, s))
    }

    /// `Λ_n(x) = 1 / K_n(x,x)` for the classical or the modified kernel.
    pub fn christoffel(&self, n: usize, x: &BallPoint<T>, modified: bool) -> Result<T> {
        let k = if modified { self.kernel_modified(n, x, x)? } else { self.kernel(n, x, x)? };
        Ok(k.recip())
    }
}

/// Product quadrature on the ball for `W_μ`, plus the sphere rule used by the
/// mass term.
#[derive(Clone, Debug)]
pub struct BallQuadrature<T> {
    points: Vec<BallPoint<T>>,
    weights: Vec<T>,
    sphere: SphereRule<T>,
}

/// Radial Gauss–Jacobi rule in `t = 2r² − 1` times a sphere rule with
/// `angular_nodes` equispaced azimuths (and `angular_nodes/2 + 1` polar
/// Gauss nodes when `d = 3`). With `N` radial nodes and `A` azimuths, products
/// `f g` of radial degree `< 2N` in `t` and spherical degree `< A` are exact.
pub fn ball_quadrature<T: Real>(
    bp: &BallParams<T>,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<BallQuadrature<T>> {
    if bp.d != 2 && bp.d != 3 {
        return Err(Error::UnsupportedDimension(bp.d));
    }
    let sphere = SphereRule::with_sizes(bp.d, angular_nodes / 2 + 1, angular_nodes)?;
    let radial = bp.radial_params(0).gauss_rule(radial_nodes)?;
    let c = bp.c();
    let mut points = Vec::with_capacity(radial.len() * sphere.points().len());
    let mut weights = Vec::with_capacity(points.capacity());
    for (t, w) in radial.iter() {
        let r = ((T::one() + t) / T::lit(2.0)).max(T::zero()).sqrt();
        for (xi, ws) in sphere.iter() {
            points.push(BallPoint { r, xi: xi.clone() });
            weights.push(c * w * ws);
        }
    }
    Ok(BallQuadrature { points, weights, sphere })
}

impl<T: Real> BallQuadrature<T> {
    pub fn points(&self) -> &[BallPoint<T>] {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn sphere(&self) -> &SphereRule<T> {
        &self.sphere
    }

    /// `∫ f W_μ / ω_μ dx`.
    pub fn integrate<F: FnMut(&BallPoint<T>) -> T>(&self, mut f: F) -> T {
        self.points.iter().zip(&self.weights).map(|(p, w)| *w * f(p)).sum()
    }

    /// `⟨f, g⟩_μ`.
    pub fn inner<F, G>(&self, mut f: F, mut g: G) -> T
    where
        F: FnMut(&BallPoint<T>) -> T,
        G: FnMut(&BallPoint<T>) -> T,
    {
        self.integrate(|p| f(p) * g(p))
    }

    /// `⟨f, g⟩_μ + λ ∫ f g dσ/σ_{d−1}`.
    pub fn inner_modified<F, G>(&self, lambda: T, mut f: F, mut g: G) -> T
    where
        F: FnMut(&BallPoint<T>) -> T,
        G: FnMut(&BallPoint<T>) -> T,
    {
        let interior = self.inner(&mut f, &mut g);
        let boundary = self.sphere.integrate(|xi| {
            let p = BallPoint { r: T::one(), xi: xi.clone() };
            f(&p) * g(&p)
        });
        interior + lambda * boundary
    }
}
