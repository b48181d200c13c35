use ballmass::{
    addition_sum, ball_quadrature, basis_indices, boundary_ratio, harmonic_basis_eval, harmonic_dim,
    modified_basis_eval, spherical_factor, BallParams, BallPoint, SphereRule, UnitDirection,
};
use proptest::prelude::*;

fn direction(d: usize, a: f64, b: f64) -> UnitDirection<f64> {
    if d == 2 {
        UnitDirection::from_angle(a)
    } else {
        UnitDirection::from_spherical(b, a)
    }
}

fn point(d: usize, r: f64, a: f64, b: f64) -> BallPoint<f64> {
    BallPoint::new(r, direction(d, a, b)).unwrap()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

prop_compose! {
    fn params()(d in 2usize..=3, mu in 0.0f64..1.5, lambda in 0.0f64..3.0) -> BallParams<f64> {
        BallParams::new(d, mu, lambda).unwrap()
    }
}

prop_compose! {
    fn angles()(a in 0.0f64..std::f64::consts::TAU, b in 0.0f64..std::f64::consts::PI) -> (f64, f64) {
        (a, b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernels_are_symmetric(bp in params(), n in 0usize..14, r in 0.0f64..=1.0, s in 0.0f64..=1.0, u in angles(), v in angles()) {
        let x = point(bp.d(), r, u.0, u.1);
        let y = point(bp.d(), s, v.0, v.1);
        for k in [bp.kernel(n, &x, &y).unwrap() - bp.kernel(n, &y, &x).unwrap(),
                  bp.kernel_modified(n, &x, &y).unwrap() - bp.kernel_modified(n, &y, &x).unwrap()] {
            let scale = bp.kernel(n, &x, &x).unwrap() * bp.kernel(n, &y, &y).unwrap();
            prop_assert!(k.abs() <= 1e-12 * scale.sqrt());
        }
    }

    #[test]
    fn diagonal_is_positive_and_grows_with_degree(bp in params(), n in 0usize..20, r in 0.0f64..=1.0, u in angles()) {
        let x = point(bp.d(), r, u.0, u.1);
        let plain = bp.kernel(n, &x, &x).unwrap();
        let modified = bp.kernel_modified(n, &x, &x).unwrap();
        let next = bp.kernel_modified(n + 1, &x, &x).unwrap();
        prop_assert!(modified > 0.0);
        prop_assert!(modified <= plain * (1.0 + 1e-12));
        prop_assert!(next >= modified * (1.0 - 1e-12));
    }

    #[test]
    fn addition_formula(d in 2usize..=3, k in 0usize..16, u in angles(), v in angles()) {
        let xi = direction(d, u.0, u.1);
        let rho = direction(d, v.0, v.1);
        let sum = addition_sum(k, &xi, &rho).unwrap();
        let closed = spherical_factor(d, k, xi.dot(&rho)).unwrap();
        prop_assert!((sum - closed).abs() <= 1e-11 * harmonic_dim(k, d).unwrap() as f64);
    }

    #[test]
    fn boundary_ratio_decreases_in_lambda(d in 2usize..=3, mu in 0.0f64..1.0, lambda in 0.1f64..5.0, n in 100usize..3000) {
        let a = boundary_ratio(&BallParams::new(d, mu, lambda).unwrap(), n).unwrap();
        let b = boundary_ratio(&BallParams::new(d, mu, lambda * 1.5).unwrap(), n).unwrap();
        prop_assert!(b < a);
        prop_assert!(a <= 2.5 / lambda);
    }

    #[test]
    fn single_precision_tracks_double(d in 2usize..=3, mu in 0.0f64..1.0, lambda in 0.0f64..2.0, n in 0usize..10, r in 0.0f64..0.99, u in angles()) {
        let bp = BallParams::new(d, mu, lambda).unwrap();
        let bp32 = BallParams::new(d, mu as f32, lambda as f32).unwrap();
        let x = point(d, r, u.0, u.1);
        let x32 = BallPoint::<f32>::from_cartesian(&x.cartesian().iter().map(|&c| c as f32).collect::<Vec<_>>()).unwrap();
        let want = bp.kernel_modified(n, &x, &x).unwrap();
        let got = bp32.kernel_modified(n, &x32, &x32).unwrap() as f64;
        prop_assert!((got - want).abs() <= 1e-3 * want, "{got} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_sum_matches_basis(d in 2usize..=3, k in 0usize..10, u in angles(), v in angles()) {
        let xi = direction(d, u.0, u.1);
        let rho = direction(d, v.0, v.1);
        let count = harmonic_dim(k, d).unwrap() as usize;
        let direct: f64 = (1..=count)
            .map(|nu| harmonic_basis_eval(k, nu, &xi).unwrap() * harmonic_basis_eval(k, nu, &rho).unwrap())
            .sum();
        prop_assert!((addition_sum(k, &xi, &rho).unwrap() - direct).abs() <= 1e-12 * count as f64);
    }
}

#[test]
fn harmonics_are_orthonormal() {
    const K: usize = 12;
    for d in [2, 3] {
        let rule = SphereRule::<f64>::exact_to(d, 2 * K).unwrap();
        let basis: Vec<(usize, usize)> =
            (0..=K).flat_map(|k| (1..=harmonic_dim(k, d).unwrap() as usize).map(move |nu| (k, nu))).collect();
        for (i, &(k, nu)) in basis.iter().enumerate() {
            for &(l, eta) in &basis[i..] {
                let g = rule
                    .integrate(|p| harmonic_basis_eval(k, nu, p).unwrap() * harmonic_basis_eval(l, eta, p).unwrap());
                let want = if (k, nu) == (l, eta) { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-10, "d={d} ({k},{nu}) ({l},{eta}): {g}");
            }
        }
    }
}

#[test]
fn basis_sizes_add_up_to_polynomial_dimension() {
    for d in 2..=6 {
        let mut total = 0;
        for n in 0..=20 {
            total += basis_indices(n, d).unwrap().len();
            assert_eq!(total as f64, binomial(n + d, d), "d={d} n={n}");
        }
    }
}

#[test]
fn kernel_traces_equal_dimension() {
    for d in [2, 3] {
        for n in 0..=6 {
            let bp = BallParams::new(d, 0.5, 1.3).unwrap();
            let q = ball_quadrature(&bp, n + 2, 2 * n + 2).unwrap();
            let plain = q.integrate(|x| bp.kernel(n, x, x).unwrap());
            let modified = q.inner_modified(bp.lambda(), |x| bp.kernel_modified(n, x, x).unwrap(), |_| 1.0);
            let dim = binomial(n + d, d);
            assert!((plain - dim).abs() < 1e-10 * dim, "d={d} n={n}: {plain}");
            assert!((modified - dim).abs() < 1e-10 * dim, "d={d} n={n}: {modified}");
        }
    }
}

#[test]
fn modified_kernel_reproduces_polynomials_in_the_plane() {
    let x = point(2, 0.7, 1.1, 0.0);
    let edge = point(2, 1.0, -2.0, 0.0);
    for n in 0..=8 {
        let bp = BallParams::new(2, 0.5, 1.7).unwrap();
        let q = ball_quadrature(&bp, n + 3, 2 * n + 4).unwrap();
        for m in 0..=n + 1 {
            for (idx, nu) in basis_indices(m, 2).unwrap() {
                for at in [&x, &edge] {
                    let got = q.inner_modified(
                        bp.lambda(),
                        |y| bp.kernel_modified(n, at, y).unwrap(),
                        |y| modified_basis_eval(&bp, idx, nu, y).unwrap(),
                    );
                    // degree n+1 lies outside the space, so it must project to zero
                    let want = if m <= n { modified_basis_eval(&bp, idx, nu, at).unwrap() } else { 0.0 };
                    assert!(
                        (got - want).abs() < 1e-7 * (1.0 + want.abs()),
                        "n={n} m={m} j={} nu={nu}: {got} vs {want}",
                        idx.j()
                    );
                }
            }
        }
    }
}
