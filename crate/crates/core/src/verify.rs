//! Self-checks run by `ballmass verify`. Each check compares a library formula
//! against an independent construction (quadrature, discretized Stieltjes,
//! explicit basis sums) and reports the worst discrepancy seen.

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::boundary_ratio;
use crate::ball::{
    ball_quadrature, basis_indices, classical_basis_eval, classical_norm_h, modified_basis_eval, modified_norm_h,
    BallParams, BallPoint,
};
use crate::error::{param, Error, Result};
use crate::jacobi::JacobiParams;
use crate::specfun::log_binomial;
use crate::uvarov::UvarovParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Jacobi,
    Uvarov,
    Ball,
    Asymptotics,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Jacobi => "jacobi",
            Suite::Uvarov => "uvarov",
            Suite::Ball => "ball",
            Suite::Asymptotics => "asymptotics",
        }
    }

    /// Tolerance used when none is given.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Jacobi => 1e-10,
            Suite::Uvarov => 1e-9,
            Suite::Ball | Suite::Asymptotics | Suite::All => 1e-8,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "jacobi" => Ok(Suite::Jacobi),
            "uvarov" => Ok(Suite::Uvarov),
            "ball" => Ok(Suite::Ball),
            "asymptotics" => Ok(Suite::Asymptotics),
            other => Err(param(format!("unknown suite `{other}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

/// Relative error with a floor on the scale.
fn rel(got: f64, want: f64, scale: f64) -> f64 {
    (got - want).abs() / want.abs().max(scale)
}

struct Tracker {
    suite: Suite,
    tolerance: f64,
    out: Vec<CheckOutcome>,
}

impl Tracker {
    fn record(&mut self, name: impl Into<String>, max_error: f64) {
        self.out.push(CheckOutcome { suite: self.suite, name: name.into(), max_error, tolerance: self.tolerance });
    }
}

/// Runs one suite (or all of them). `tolerance` overrides the per-suite default.
pub fn run_suite(suite: Suite, tolerance: Option<f64>) -> Result<Vec<CheckOutcome>> {
    if let Some(t) = tolerance {
        if !(t > 0.0) || !t.is_finite() {
            return Err(param(format!("tolerance must be positive, got {t}")));
        }
    }
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in [Suite::Jacobi, Suite::Uvarov, Suite::Ball, Suite::Asymptotics] {
            out.extend(run_suite(s, tolerance)?);
        }
        return Ok(out);
    }
    let mut tracker = Tracker { suite, tolerance: tolerance.unwrap_or(suite.default_tolerance()), out: Vec::new() };
    match suite {
        Suite::Jacobi => jacobi_checks(&mut tracker)?,
        Suite::Uvarov => uvarov_checks(&mut tracker)?,
        Suite::Ball => ball_checks(&mut tracker)?,
        Suite::Asymptotics => asymptotics_checks(&mut tracker)?,
        Suite::All => unreachable!(),
    }
    Ok(tracker.out)
}

const JACOBI_PAIRS: [(f64, f64); 4] = [(0.0, 0.0), (0.5, 1.5), (-0.5, -0.5), (2.0, 0.25)];

fn jacobi_checks(tr: &mut Tracker) -> Result<()> {
    for &(a, b) in &JACOBI_PAIRS {
        let p = JacobiParams::new(a, b)?;
        let rule = p.gauss_rule(40)?;
        let mut gram = 0.0f64;
        for i in 0..=30 {
            for j in 0..=i {
                let g = rule.integrate(|t| p.eval_orthonormal(i, t) * p.eval_orthonormal(j, t));
                gram = gram.max((g - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        tr.record(format!("orthonormality (a={a}, b={b}, n<=30)"), gram);

        let mut cd = 0.0f64;
        let mut at_one = 0.0f64;
        for n in [0, 3, 10, 30] {
            for &(t, u) in &[(0.3, -0.7), (-0.95, 0.2), (0.999, 0.5)] {
                cd = cd.max(rel(
                    p.kernel_christoffel_darboux(n, t, u),
                    p.kernel(n, t, u),
                    p.kernel(n, t, t).sqrt() * p.kernel(n, u, u).sqrt(),
                ));
                at_one = at_one.max(rel(p.kernel_at_one(n, t), p.kernel(n, t, 1.0), p.kernel(n, 1.0, 1.0)));
            }
            at_one = at_one.max(rel(p.kernel_one_one(n), p.kernel(n, 1.0, 1.0), 0.0));
        }
        tr.record(format!("Christoffel-Darboux form (a={a}, b={b})"), cd);
        tr.record(format!("kernel closed forms at t=1 (a={a}, b={b})"), at_one);
    }
    Ok(())
}

/// Monic recurrence coefficients of a discrete measure by the Stieltjes
/// procedure; returns `(a_j, b_j, ‖π_j‖²)` for `j ≤ n`.
fn stieltjes(nodes: &[f64], weights: &[f64], n: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut prev = vec![0.0; nodes.len()];
    let mut cur = vec![1.0; nodes.len()];
    let (mut a, mut b, mut norms) = (Vec::new(), Vec::new(), Vec::new());
    for j in 0..=n {
        let norm: f64 = cur.iter().zip(weights).map(|(p, w)| w * p * p).sum();
        let first: f64 = cur.iter().zip(weights).zip(nodes).map(|((p, w), x)| w * x * p * p).sum();
        let aj = first / norm;
        let bj = if j == 0 { 0.0 } else { norm / norms[j - 1] };
        a.push(aj);
        b.push(bj);
        norms.push(norm);
        let next: Vec<f64> = cur.iter().zip(&prev).zip(nodes).map(|((p, q), x)| (x - aj) * p - bj * q).collect();
        prev = std::mem::replace(&mut cur, next);
    }
    (a, b, norms)
}

fn monic_values(a: &[f64], b: &[f64], n: usize, t: f64) -> Vec<f64> {
    let mut out = vec![1.0];
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 0..n {
        let next = (t - a[j]) * cur - b[j] * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// `ln` of the leading coefficient of `P_k^{(α,β)}`, `Γ(2k+α+β+1)/(2^k k! Γ(k+α+β+1))`.
fn ln_leading(alpha: f64, beta: f64, k: usize) -> Result<f64> {
    Ok(log_binomial(2.0 * k as f64 + alpha + beta, k)? - k as f64 * std::f64::consts::LN_2)
}

fn uvarov_checks(tr: &mut Tracker) -> Result<()> {
    const KMAX: usize = 30;
    let points = [-0.9, -0.3, 0.2, 0.75, 0.99, 1.0];
    for &(alpha, beta) in &[(0.0, 0.0), (0.5, 1.5)] {
        let base = JacobiParams::new(alpha, beta)?;
        let rule = base.gauss_rule(KMAX + 10)?;
        for &mass in &[0.1, 1.0, 10.0] {
            let u = UvarovParams::new(base, mass)?;
            let mut nodes = rule.nodes().to_vec();
            let mut weights = rule.weights().to_vec();
            nodes.push(1.0);
            weights.push(mass);
            let (a, b, norms) = stieltjes(&nodes, &weights, KMAX);
            let (mut poly, mut norm, mut kern, mut kern11, mut at_one) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
            let monic: Vec<Vec<f64>> = points.iter().map(|&t| monic_values(&a, &b, KMAX, t)).collect();
            for k in 0..=KMAX {
                let lead = ln_leading(alpha, beta, k)?.exp();
                let scale = (lead * lead * norms[k]).sqrt();
                for (pi, &t) in points.iter().enumerate() {
                    poly = poly.max(rel(u.eval(k, t), lead * monic[pi][k], scale));
                }
                norm = norm.max(rel(u.norm(k), lead * lead * norms[k], 0.0));
                at_one = at_one.max(rel(u.value_at_one(k), lead * monic[points.len() - 1][k], scale));
                for (pi, &t) in points.iter().enumerate() {
                    for (qi, &s) in points.iter().enumerate() {
                        let want: f64 = (0..=k).map(|j| monic[pi][j] * monic[qi][j] / norms[j]).sum();
                        let diag: f64 = (0..=k).map(|j| monic[pi][j].powi(2) / norms[j]).sum::<f64>().sqrt()
                            * (0..=k).map(|j| monic[qi][j].powi(2) / norms[j]).sum::<f64>().sqrt();
                        kern = kern.max(rel(u.kernel(k, t, s), want, diag));
                    }
                }
                let want11: f64 = (0..=k).map(|j| monic[points.len() - 1][j].powi(2) / norms[j]).sum();
                kern11 = kern11.max(rel(u.kernel_one_one(k), want11, 0.0));
            }
            let tag = format!("(a={alpha}, b={beta}, M={mass}, k<=30)");
            tr.record(format!("modified polynomials {tag}"), poly);
            tr.record(format!("modified norms {tag}"), norm);
            tr.record(format!("modified kernel {tag}"), kern);
            tr.record(format!("modified kernel at (1,1) {tag}"), kern11);
            tr.record(format!("modified value at 1 {tag}"), at_one);
        }
    }
    Ok(())
}

fn sample_points(d: usize) -> Vec<BallPoint<f64>> {
    let raw: [[f64; 3]; 5] = [[0.1, 0.2, -0.3], [0.5, -0.4, 0.1], [-0.6, 0.6, 0.3], [0.0, 0.0, 0.0], [0.8, 0.0, 0.6]];
    raw.iter().map(|c| BallPoint::from_cartesian(&c[..d]).expect("sample inside the ball")).collect()
}

fn ball_checks(tr: &mut Tracker) -> Result<()> {
    const NMAX: usize = 6;
    for d in [2usize, 3] {
        for &(mu, lambda) in &[(0.0, 0.5), (0.5, 2.0)] {
            let bp = BallParams::new(d, mu, lambda)?;
            let quad = ball_quadrature(&bp, NMAX + 2, 2 * NMAX + 2)?;
            let mut basis = Vec::new();
            for n in 0..=NMAX {
                basis.extend(basis_indices(n, d)?);
            }
            let eval_all = |modified: bool| -> Result<Vec<Vec<f64>>> {
                let mut rows = Vec::new();
                for &(idx, nu) in &basis {
                    let f = |p: &BallPoint<f64>| {
                        if modified {
                            modified_basis_eval(&bp, idx, nu, p)
                        } else {
                            classical_basis_eval(&bp, idx, nu, p)
                        }
                    };
                    let interior = quad.points().iter().map(&f).collect::<Result<Vec<_>>>()?;
                    let boundary = quad
                        .sphere()
                        .points()
                        .iter()
                        .map(|xi| f(&BallPoint::new(1.0, xi.clone())?))
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(interior.into_iter().chain(boundary).collect());
                }
                Ok(rows)
            };
            let nq = quad.points().len();
            for modified in [false, true] {
                let rows = eval_all(modified)?;
                let mut worst = 0.0f64;
                for (i, &(ii, _)) in basis.iter().enumerate() {
                    let hi = if modified { modified_norm_h(&bp, ii) } else { classical_norm_h(&bp, ii) };
                    for j in 0..=i {
                        let mut g: f64 = (0..nq).map(|q| quad.weights()[q] * rows[i][q] * rows[j][q]).sum();
                        if modified {
                            g += lambda
                                * quad
                                    .sphere()
                                    .weights()
                                    .iter()
                                    .enumerate()
                                    .map(|(s, w)| w * rows[i][nq + s] * rows[j][nq + s])
                                    .sum::<f64>();
                        }
                        let want = if i == j { hi } else { 0.0 };
                        worst = worst.max((g - want).abs() / hi);
                    }
                }
                let which = if modified { "modified" } else { "classical" };
                tr.record(format!("{which} Gram matrix (d={d}, mu={mu}, lambda={lambda}, n<={NMAX})"), worst);
            }

            let pts = sample_points(d);
            let (mut kc, mut km) = (0.0f64, 0.0f64);
            for x in &pts {
                for y in &pts {
                    for n in 0..=NMAX {
                        let (mut sc, mut sm) = (0.0, 0.0);
                        for m in 0..=n {
                            for (idx, nu) in basis_indices(m, d)? {
                                sc += classical_basis_eval(&bp, idx, nu, x)? * classical_basis_eval(&bp, idx, nu, y)?
                                    / classical_norm_h(&bp, idx);
                                sm += modified_basis_eval(&bp, idx, nu, x)? * modified_basis_eval(&bp, idx, nu, y)?
                                    / modified_norm_h(&bp, idx);
                            }
                        }
                        let scale = (bp.kernel(n, x, x)? * bp.kernel(n, y, y)?).sqrt();
                        kc = kc.max(rel(bp.kernel(n, x, y)?, sc, scale));
                        km = km.max(rel(bp.kernel_modified(n, x, y)?, sm, scale));
                    }
                }
            }
            tr.record(format!("classical kernel vs basis sum (d={d}, mu={mu})"), kc);
            tr.record(format!("modified kernel vs basis sum (d={d}, mu={mu}, lambda={lambda})"), km);
        }
    }
    Ok(())
}

fn asymptotics_checks(tr: &mut Tracker) -> Result<()> {
    for d in [2usize, 3] {
        for &mu in &[0.0, 0.5] {
            let bp = BallParams::new(d, mu, 1.0)?;
            let mut e = vec![0.0; d];
            e[0] = 1.0;
            let x = BallPoint::from_cartesian(&e)?;
            let mut worst = 0.0f64;
            for n in [0usize, 1, 10, 50, 120] {
                let norm = log_binomial((n + d - 1) as f64, n)?.exp();
                worst = worst.max(rel(boundary_ratio(&bp, n)?, bp.kernel_modified(n, &x, &x)? / norm, 0.0));
            }
            tr.record(format!("boundary closed form vs kernel (d={d}, mu={mu})"), worst);

            let mut worst = 0.0f64;
            for p in sample_points(d) {
                for n in [1usize, 8, 30] {
                    let diff = bp.kernel(n, &p, &p)? - bp.kernel_modified(n, &p, &p)?;
                    let formula = bp.kernel_difference(n, &p, &p)?;
                    worst = worst.max(if formula > 0.0 { rel(formula, diff, 0.0) } else { f64::INFINITY });
                }
            }
            tr.record(format!("kernel difference: positive, equals subtraction (d={d}, mu={mu})"), worst);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_suites() {
        assert_eq!("uvarov".parse::<Suite>().unwrap(), Suite::Uvarov);
        assert!("nope".parse::<Suite>().is_err());
        assert!(run_suite(Suite::Jacobi, Some(-1.0)).is_err());
    }

    #[test]
    fn stieltjes_reproduces_legendre() {
        let rule = JacobiParams::new(0.0, 0.0).unwrap().gauss_rule(12).unwrap();
        let (a, b, norms) = stieltjes(rule.nodes(), rule.weights(), 5);
        assert!(a.iter().all(|x| x.abs() < 1e-14));
        assert!((b[1] - 1.0 / 3.0).abs() < 1e-14);
        assert!((norms[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_and_uvarov_suites_pass() {
        for suite in [Suite::Jacobi, Suite::Uvarov] {
            for c in run_suite(suite, None).unwrap() {
                assert!(c.passed(), "{}: {} > {}", c.name, c.max_error, c.tolerance);
            }
        }
    }
}
