#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use singint_core::error::Error;
use singint_core::kernel::{
    cos_remainder, cos_remainder_direct, cos_remainder_series, cos_trunc, integrand, is_in_strip,
    normalization_constant, spherical_average, validity_strip,
};
use singint_core::special_fn::{sphere_monomial_moment, sphere_surface_area};
use singint_core::{EvaluationPoint, KernelSpec};

/// Gauss–Legendre nodes and weights on [-1, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            loop {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let w = 2.0 / ((1.0 - x * x) * dp * dp);
                    return (x, w);
                }
            }
        })
        .collect()
}

/// `∫_{S^{d-1}} f(ω₁) dω = |S^{d-2}| ∫_0^π f(cos θ) sin^{d-2} θ dθ`, composite
/// Gauss–Legendre in the polar angle.
fn polar_quadrature(d: usize, f: impl Fn(f64) -> f64) -> f64 {
    let rule = gauss_legendre(24);
    let panels = 40;
    let h = PI / panels as f64;
    let ring = if d == 2 {
        2.0
    } else {
        sphere_surface_area(d - 1)
    };
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for &(x, w) in &rule {
            let theta = mid + 0.5 * h * x;
            total += 0.5 * h * w * f(theta.cos()) * theta.sin().powi(d as i32 - 2);
        }
    }
    ring * total
}

#[test]
fn spherical_average_matches_polar_quadrature() {
    for d in [2usize, 3, 5] {
        for m in 1..=3u32 {
            let spec = KernelSpec::real(d, m, 2.0 * m as f64 - 1.0).unwrap();
            for u in [0.1, 1.0, 10.0] {
                let got = spherical_average(&spec, u).unwrap();
                let want = polar_quadrature(d, |c| cos_remainder(m, u * c));
                assert!(
                    (got - want).abs() <= 1e-8 * want.abs(),
                    "d={d} m={m} u={u}: {got:e} vs {want:e}"
                );
            }
        }
    }
}

#[test]
fn spherical_average_examples() {
    for m in 1..=3u32 {
        let spec = KernelSpec::real(1, m, 1.0).unwrap();
        for u in [0.2, 1.0, 3.7] {
            let got = spherical_average(&spec, u).unwrap();
            let want = 2.0 * cos_remainder(m, u);
            assert!((got - want).abs() <= 1e-13 * want.abs(), "m={m} u={u}");
        }
    }
    let spec = KernelSpec::real(3, 1, 1.0).unwrap();
    for u in [0.5f64, 2.0, 30.0] {
        let want = 4.0 * PI * (1.0 - u.sin() / u);
        let got = spherical_average(&spec, u).unwrap();
        assert!((got - want).abs() <= 1e-13 * want.abs(), "u={u}");
    }
    assert!(matches!(
        spherical_average(&spec, 0.0),
        Err(Error::Domain(_))
    ));
}

#[test]
fn spherical_average_leading_term_near_origin() {
    let u = 1e-3f64;
    for d in [1usize, 2, 3, 5] {
        for m in 1..=3u32 {
            let spec = KernelSpec::real(d, m, 1.0).unwrap();
            let lead = sphere_monomial_moment(d, m as usize) * u.powi(2 * m as i32)
                / (1..=2 * m).map(f64::from).product::<f64>();
            let got = spherical_average(&spec, u).unwrap();
            assert!((got.abs() / lead - 1.0).abs() < 1e-5, "d={d} m={m}");
            let polar = if d >= 2 {
                polar_quadrature(d, |c| cos_remainder(m, u * c))
            } else {
                got
            };
            assert!((got - polar).abs() <= 1e-8 * got.abs());
        }
    }
}

#[test]
fn cos_examples() {
    assert_eq!(cos_trunc(1, 17.3), 1.0);
    assert_eq!(cos_trunc(2, 2.0), -1.0);
    assert_eq!(cos_trunc(5, 0.0), 1.0);
    assert!((cos_remainder(1, PI) - 2.0).abs() < 1e-15);
    // mpmath: cos_2(0.1) - cos(0.1)
    let r = cos_remainder(2, 0.1);
    assert!(
        (r + 4.1652780257660964867e-6).abs() < 1e-15 * 4.2e-6,
        "{r:e}"
    );
    for m in 1..5 {
        assert_eq!(cos_remainder(m, 0.0), 0.0);
    }
}

#[test]
fn constant_examples() {
    let c = normalization_constant(1, Complex64::new(1.0, 0.0)).unwrap();
    assert!((c.re - PI).abs() < 1e-14 * PI);
    let c = normalization_constant(2, Complex64::new(1.0, 0.0)).unwrap();
    assert!((c.re - 2.0 * PI).abs() < 1e-14 * 2.0 * PI);
    for alpha in [0.0, 2.0, 4.0, 2.0 + 1e-11] {
        let r = normalization_constant(3, Complex64::new(alpha, 0.0));
        assert!(matches!(r, Err(Error::Pole { .. })), "alpha = {alpha}");
    }
    // odd integers are regular
    assert!(normalization_constant(3, Complex64::new(3.0, 0.0)).is_ok());
}

// mpmath, 40 digits
const CONSTANTS: [(usize, f64, f64, f64, f64); 7] = [
    (
        3,
        1.0,
        5.0,
        0.25531587598801177117,
        -0.024690002462181735732,
    ),
    (2, 3.0, 0.0, -0.69813170079773183077, 0.0),
    (5, 0.7, 0.0, 24.354927113412923025, 0.0),
    (1, 1.0, 2.0, 0.25937138723569135263, -0.74746417346237054142),
    (2, 1.0, 2.0, -0.15016034720417023365, -1.2476331890030099803),
    (4, 5.5, 0.0, 0.013207991149898437785, 0.0),
    (3, 5.0, 0.0, 0.027415567780803773941, 0.0),
];

#[test]
fn constant_matches_high_precision_values() {
    for (d, re, im, want_re, want_im) in CONSTANTS {
        let got = normalization_constant(d, Complex64::new(re, im)).unwrap();
        let want = Complex64::new(want_re, want_im);
        assert!(
            (got - want).norm() <= 1e-13 * want.norm(),
            "C({d}, {re}+{im}i) = {got}"
        );
    }
}

#[test]
fn strips() {
    for m in 1..6u32 {
        let s = validity_strip(m);
        assert_eq!((s.lower, s.upper), (2.0 * (m - 1) as f64, 2.0 * m as f64));
    }
    assert!(is_in_strip(
        &KernelSpec::new(3, 1, Complex64::new(1.0, 5.0)).unwrap()
    ));
    assert!(!is_in_strip(&KernelSpec::real(2, 1, 2.0).unwrap()));
    assert!(is_in_strip(&KernelSpec::real(2, 2, 3.0).unwrap()));
    assert!(!is_in_strip(&KernelSpec::real(2, 2, 2.0).unwrap()));
}

#[test]
fn integrand_examples() {
    let spec = KernelSpec::real(1, 1, 1.0).unwrap();
    let x = EvaluationPoint::new(vec![1.0]).unwrap();
    let v = integrand(&spec, &[PI], &x).unwrap();
    assert!((v.re - 2.0 / (PI * PI)).abs() < 1e-15);

    let spec = KernelSpec::real(2, 2, 3.0).unwrap();
    let x = EvaluationPoint::new(vec![2.0, 0.0]).unwrap();
    let v = integrand(&spec, &[1.0, 0.0], &x).unwrap();
    assert!((v.re - (-1.0 - 2f64.cos())).abs() < 1e-15);

    let zero = EvaluationPoint::new(vec![0.0, 0.0]).unwrap();
    assert_eq!(
        integrand(&spec, &[0.3, -2.0], &zero).unwrap(),
        Complex64::new(0.0, 0.0)
    );
    assert!(matches!(
        integrand(&spec, &[0.0, 0.0], &x),
        Err(Error::Domain(_))
    ));
}

proptest! {
    #[test]
    fn truncated_cosine_converges(v in -10.0..10.0f64) {
        prop_assert!((cos_trunc(40, v) - v.cos()).abs() <= 1e-12);
    }

    #[test]
    fn remainder_branches_agree(v in 0.5..2.0f64, m in 1u32..=3, negate: bool) {
        let v = if negate { -v } else { v };
        let a = cos_remainder_direct(m, v);
        let b = cos_remainder_series(m, v);
        prop_assert!((a - b).abs() <= 1e-10 * b.abs(), "m={} v={}: {:e} vs {:e}", m, v, a, b);
    }

    #[test]
    fn integrand_is_even(
        t in prop::collection::vec(-5.0..5.0f64, 3),
        x in prop::collection::vec(-3.0..3.0f64, 3),
        m in 1u32..4,
        re in 0.1..5.9f64,
        im in -2.0..2.0f64,
    ) {
        prop_assume!(t.iter().any(|&c| c != 0.0));
        let spec = KernelSpec::new(3, m, Complex64::new(re, im)).unwrap();
        let x = EvaluationPoint::new(x).unwrap();
        let neg: Vec<f64> = t.iter().map(|c| -c).collect();
        prop_assert_eq!(integrand(&spec, &t, &x).unwrap(), integrand(&spec, &neg, &x).unwrap());
    }
}
