//! Real orthonormal spherical-harmonic bases on `S^1` and `S^2`, plus product
//! quadrature on the sphere.
//!
//! Orthonormality is with respect to the normalized surface measure
//! `σ_{d−1}^{-1} dσ`. Index order is deterministic: on `S^1` the cosine comes
//! before the sine; on `S^2` the index `ν = 1..=2k+1` runs over the azimuthal
//! order `m = −k..=k` (negative `m` are sine-type, positive `m` cosine-type).
//! All evaluation is polynomial in the Cartesian coordinates of `ξ`; no
//! angles are formed.

use crate::error::{param, Error, Result};
use crate::jacobi::JacobiParams;
use crate::scalar::Real;
use crate::specfun::{harmonic_dim, ln_gamma_ratio};

/// A point of the unit sphere `S^{d−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitDirection<T> {
    coords: Vec<T>,
}

fn norm_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(64.0))
}

impl<T: Real> UnitDirection<T> {
    /// Accepts coordinates whose Euclidean norm is 1 up to rounding.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(param(format!("a direction needs d >= 2 coordinates, got {}", coords.len())));
        }
        let norm = coords.iter().map(|c| *c * *c).sum::<T>().sqrt();
        if !((norm - T::one()).abs() <= norm_tolerance()) {
            return Err(param(format!("direction is not a unit vector (norm {norm})")));
        }
        Ok(Self { coords })
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(mut coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(param(format!("a direction needs d >= 2 coordinates, got {}", coords.len())));
        }
        let norm = coords.iter().map(|c| *c * *c).sum::<T>().sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(param("cannot normalize a zero or non-finite vector"));
        }
        coords.iter_mut().for_each(|c| *c = *c / norm);
        Ok(Self { coords })
    }

    /// First coordinate axis `e_1`.
    pub fn axis(d: usize) -> Self {
        let mut coords = vec![T::zero(); d.max(2)];
        coords[0] = T::one();
        Self { coords }
    }

    /// `(cos θ, sin θ)` on the circle.
    pub fn from_angle(theta: T) -> Self {
        Self { coords: vec![theta.cos(), theta.sin()] }
    }

    /// `(sin φ cos θ, sin φ sin θ, cos φ)` with polar angle `φ`.
    pub fn from_spherical(polar: T, azimuth: T) -> Self {
        let sp = polar.sin();
        Self { coords: vec![sp * azimuth.cos(), sp * azimuth.sin(), polar.cos()] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// `⟨ξ, ρ⟩`, clamped to `[−1, 1]`.
    pub fn dot(&self, other: &Self) -> T {
        let s: T = self.coords.iter().zip(&other.coords).map(|(a, b)| *a * *b).sum();
        s.max(-T::one()).min(T::one())
    }
}

/// `(Re, Im)` of `(x + i y)^m`, i.e. `ρ^m (cos mθ, sin mθ)`.
fn complex_power<T: Real>(x: T, y: T, m: usize) -> (T, T) {
    let (mut re, mut im) = (T::one(), T::zero());
    for _ in 0..m {
        let next = re * x - im * y;
        im = re * y + im * x;
        re = next;
    }
    (re, im)
}

/// `√((2l+1)(l−a)!/(l+a)!) · d^a P_l / dz^a (z)`.
fn normalized_legendre_derivative<T: Real>(l: usize, a: usize, z: T) -> T {
    let one = T::one();
    // d^a P_a / dz^a = (2a−1)!!
    let mut double_fact = one;
    for i in 1..=a {
        double_fact = double_fact * T::count(2 * i - 1);
    }
    let mut prev = T::zero();
    let mut cur = double_fact;
    for ll in a + 1..=l {
        let lf = T::count(ll);
        let next = ((T::lit(2.0) * lf - one) * z * cur - (lf + T::count(a) - one) * prev) / (lf - T::count(a));
        prev = cur;
        cur = next;
    }
    let ln_f = (T::count(2 * l + 1).ln() - ln_gamma_ratio(T::count(l - a + 1), T::count(2 * a))) / T::lit(2.0);
    ln_f.exp() * cur
}

/// Value of the `ν`-th basis element (1-based) of `H_k^d` at `ξ`, `d ∈ {2, 3}`.
pub fn harmonic_basis_eval<T: Real>(k: usize, nu: usize, xi: &UnitDirection<T>) -> Result<T> {
    let d = xi.dim();
    if d != 2 && d != 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    let count = harmonic_dim(k, d)? as usize;
    if nu == 0 || nu > count {
        return Err(param(format!("harmonic index nu = {nu} outside 1..={count} for k = {k}, d = {d}")));
    }
    let c = xi.coords();
    let sqrt2 = T::SQRT_2();
    if d == 2 {
        if k == 0 {
            return Ok(T::one());
        }
        let (re, im) = complex_power(c[0], c[1], k);
        return Ok(sqrt2 * if nu == 1 { re } else { im });
    }
    let m = nu as isize - 1 - k as isize;
    let a = m.unsigned_abs();
    let radial = normalized_legendre_derivative(k, a, c[2]);
    if a == 0 {
        return Ok(radial);
    }
    let (re, im) = complex_power(c[0], c[1], a);
    Ok(sqrt2 * radial * if m > 0 { re } else { im })
}

/// `Σ_ν Y_ν^k(ξ) Y_ν^k(ρ)` over the explicit basis.
pub fn addition_sum<T: Real>(k: usize, xi: &UnitDirection<T>, rho: &UnitDirection<T>) -> Result<T> {
    if xi.dim() != rho.dim() {
        return Err(param("directions of different dimension"));
    }
    let count = harmonic_dim(k, xi.dim())? as usize;
    let mut acc = T::zero();
    for nu in 1..=count {
        acc = acc + harmonic_basis_eval(k, nu, xi)? * harmonic_basis_eval(k, nu, rho)?;
    }
    Ok(acc)
}

/// Product quadrature for the normalized surface measure (weights sum to 1).
#[derive(Clone, Debug)]
pub struct SphereRule<T> {
    points: Vec<UnitDirection<T>>,
    weights: Vec<T>,
}

impl<T: Real> SphereRule<T> {
    /// `d = 2`: `azimuthal` equispaced points (exact for trigonometric degree
    /// below `azimuthal`). `d = 3`: `polar` Gauss–Legendre nodes in `cos φ`
    /// times `azimuthal` equispaced angles.
    pub fn with_sizes(d: usize, polar: usize, azimuthal: usize) -> Result<Self> {
        if azimuthal == 0 || (d == 3 && polar == 0) {
            return Err(param("sphere rule sizes must be positive"));
        }
        let two_pi = T::PI() * T::lit(2.0);
        let angles: Vec<T> = (0..azimuthal).map(|i| two_pi * T::count(i) / T::count(azimuthal)).collect();
        let w_az = T::count(azimuthal).recip();
        match d {
            2 => Ok(Self {
                points: angles.iter().map(|&th| UnitDirection::from_angle(th)).collect(),
                weights: vec![w_az; azimuthal],
            }),
            3 => {
                let gl = JacobiParams::new(T::zero(), T::zero())?.gauss_rule(polar)?;
                let mut points = Vec::with_capacity(polar * azimuthal);
                let mut weights = Vec::with_capacity(polar * azimuthal);
                for (z, wz) in gl.iter() {
                    let sp = (T::one() - z * z).max(T::zero()).sqrt();
                    for &th in &angles {
                        points.push(UnitDirection { coords: vec![sp * th.cos(), sp * th.sin(), z] });
                        weights.push(wz / T::lit(2.0) * w_az);
                    }
                }
                Ok(Self { points, weights })
            }
            _ => Err(Error::UnsupportedDimension(d)),
        }
    }

    /// A rule exact for polynomials of total degree `≤ degree` on the sphere.
    pub fn exact_to(d: usize, degree: usize) -> Result<Self> {
        Self::with_sizes(d, degree / 2 + 1, degree + 1)
    }

    pub fn points(&self) -> &[UnitDirection<T>] {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UnitDirection<T>, T)> + '_ {
        self.points.iter().zip(self.weights.iter().copied())
    }

    pub fn integrate<F: FnMut(&UnitDirection<T>) -> T>(&self, mut f: F) -> T {
        self.iter().map(|(p, w)| w * f(p)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_validation() {
        assert!(UnitDirection::new(vec![0.6, 0.8]).is_ok());
        assert!(UnitDirection::new(vec![0.6, 0.7]).is_err());
        assert!(UnitDirection::new(vec![1.0]).is_err());
        assert!(UnitDirection::<f64>::normalized(vec![0.0, 0.0, 0.0]).is_err());
        let u = UnitDirection::normalized(vec![3.0f64, 4.0]).unwrap();
        assert!((u.coords()[0] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn circle_examples() {
        let e = UnitDirection::from_angle(0.0f64);
        assert_eq!(harmonic_basis_eval(0, 1, &e).unwrap(), 1.0);
        assert!((harmonic_basis_eval(1, 1, &e).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(harmonic_basis_eval(1, 3, &e).is_err());
        assert!(harmonic_basis_eval(0, 0, &e).is_err());
        let a = UnitDirection::from_angle(0.0f64);
        let b = UnitDirection::from_angle(std::f64::consts::FRAC_PI_2);
        assert!((addition_sum(2, &a, &b).unwrap() + 2.0).abs() < 1e-14);
    }

    #[test]
    fn degree_one_on_s2_is_scaled_coordinates() {
        let xi = UnitDirection::normalized(vec![0.3f64, -0.5, 0.8]).unwrap();
        let mut got: Vec<f64> = (1..=3).map(|nu| harmonic_basis_eval(1, nu, &xi).unwrap()).collect();
        let mut want: Vec<f64> = xi.coords().iter().map(|c| 3f64.sqrt() * c).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn trace_on_s2() {
        let xi = UnitDirection::from_spherical(0.7f64, 2.1);
        for k in 0..12 {
            let v = addition_sum(k, &xi, &xi).unwrap();
            assert!((v - (2 * k + 1) as f64).abs() < 1e-11 * (2 * k + 1) as f64);
        }
    }

    #[test]
    fn rules_integrate_constants() {
        for d in [2, 3] {
            let rule = SphereRule::<f64>::exact_to(d, 10).unwrap();
            assert!((rule.integrate(|_| 1.0) - 1.0).abs() < 1e-14);
        }
        // ⟨ξ_3², 1⟩ = 1/3 on S²
        let rule = SphereRule::<f64>::exact_to(3, 4).unwrap();
        assert!((rule.integrate(|p| p.coords()[2] * p.coords()[2]) - 1.0 / 3.0).abs() < 1e-14);
        assert!(SphereRule::<f64>::exact_to(4, 4).is_err());
    }

    #[test]
    fn unsupported_dimension() {
        let xi = UnitDirection::axis(4);
        assert_eq!(harmonic_basis_eval::<f64>(1, 1, &xi), Err(Error::UnsupportedDimension(4)));
    }
}
