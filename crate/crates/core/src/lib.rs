//! Orthogonal polynomials on the unit ball with a uniform mass on the sphere.
//!
//! The ball carries the weight `(1 − ‖x‖²)^μ` and, optionally, the extra term
//! `(λ/σ_{d−1}) ∫_{S^{d−1}} f g dσ`. Separating variables reduces everything
//! to Jacobi polynomials in `t = 2‖x‖² − 1` modified by a point mass at
//! `t = 1` and to spherical harmonics. The crate provides:
//!
//! * [`jacobi`]: Jacobi polynomials, norms, kernels, Gauss rules;
//! * [`uvarov`]: the same objects with a point mass at `t = 1`;
//! * [`gegenbauer`] and [`harmonics`]: Gegenbauer/Chebyshev factors and explicit
//!   harmonic bases for `d ∈ {2, 3}`;
//! * [`ball`]: ball bases, norms, the kernels `𝕂_n`, `𝕂̃_n` and their difference,
//!   Christoffel functions, product quadrature;
//! * [`asymptotics`]: the boundary and interior large-`n` limits and sweeps;
//! * [`verify`]: self-check suites.
//!
//! Everything is generic over [`Real`] (implemented for `f32` and `f64`); the
//! aliases below fix `f64`.
//!
//! ```
//! use ballmass::{BallParamsF64, BallPoint};
//!
//! let bp = BallParamsF64::new(2, 0.0, 1.0).unwrap();
//! let x = BallPoint::from_cartesian(&[0.3, 0.4]).unwrap();
//! let k0 = bp.kernel_modified(0, &x, &x).unwrap();
//! assert!((k0 - 0.5).abs() < 1e-14);
//! ```

// `!(x > 0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod ball;
pub mod error;
pub mod gegenbauer;
pub mod harmonics;
pub mod jacobi;
pub mod quadrature;
pub mod scalar;
pub mod specfun;
pub mod uvarov;
pub mod verify;

pub use asymptotics::{
    boundary_ratio, difference_bound_check, geometric_schedule, interior_limit_target, interior_ratio,
    lemma6_bound_check, lemma6_grid_supremum, lemma6_t_grid, run_sweep, sweep_converged, ConvergenceRecord,
    SweepConfig, SweepKind,
};
pub use ball::{
    ball_quadrature, basis_indices, classical_basis_eval, classical_norm_h, modified_basis_eval, modified_norm_h,
    BallParams, BallPoint, BallQuadrature, RadialIndex,
};
pub use error::{Error, Result};
pub use gegenbauer::{chebyshev, gegenbauer, spherical_factor, SphericalFactor};
pub use harmonics::{addition_sum, harmonic_basis_eval, SphereRule, UnitDirection};
pub use jacobi::JacobiParams;
pub use quadrature::QuadratureRule;
pub use scalar::Real;
pub use specfun::{c_mu_d, harmonic_dim, log_binomial, log_gamma, omega_mu, sigma_sphere, LogValue};
pub use uvarov::UvarovParams;

pub type JacobiF64 = JacobiParams<f64>;
pub type UvarovF64 = UvarovParams<f64>;
pub type BallParamsF64 = BallParams<f64>;
pub type BallPointF64 = BallPoint<f64>;
pub type DirectionF64 = UnitDirection<f64>;
pub type RecordF64 = ConvergenceRecord<f64>;
pub type LogValueF64 = LogValue<f64>;
pub type JacobiF32 = JacobiParams<f32>;
pub type BallParamsF32 = BallParams<f32>;
