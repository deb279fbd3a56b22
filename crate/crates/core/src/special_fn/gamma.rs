//! Complex log-gamma.
//!
//! Stirling's series is summed once the real part of the argument is at least
//! [`STIRLING_MIN_RE`]; smaller arguments are shifted upward with the
//! recurrence `ln Γ(z) = ln Γ(z + n) - Σ ln(z + k)`. Every logarithm in the
//! shift has its cut on the negative real axis of `z`, so the result is the
//! analytic continuation of `ln Γ` from the positive reals (the same branch as
//! `scipy.special.loggamma`), not `ln` of `Γ(z)` reduced to `(-π, π]`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Distance from a nonpositive integer below which `z` is treated as a pole.
pub const POLE_TOL: f64 = 1e-12;

const STIRLING_MIN_RE: f64 = 10.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)), k = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Principal-branch `ln Γ(z)`.
///
/// Fails with [`Error::Pole`] when `z` is within [`POLE_TOL`] of `0, -1, -2, ...`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!(
            "log_gamma of non-finite argument {z}"
        )));
    }
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - Complex64::new(nearest, 0.0)).norm() < POLE_TOL {
        return Err(Error::Pole {
            location: Complex64::new(nearest, 0.0),
        });
    }

    let mut shifted = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while shifted.re < STIRLING_MIN_RE {
        correction += shifted.ln();
        shifted += 1.0;
    }
    Ok(stirling(shifted) - correction)
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    log_gamma(Complex64::new(x, 0.0)).map(|v| v.re)
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(STIRLING[STIRLING.len() - 1], 0.0);
    for &c in STIRLING.iter().rev().skip(1) {
        series = series * inv2 + c;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series * inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn half_and_five() {
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        let v = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((v.re - 24f64.ln()).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn poles_rejected() {
        for k in 0..5 {
            let z = c(-(k as f64), 0.0);
            assert!(matches!(log_gamma(z), Err(Error::Pole { .. })));
        }
        assert!(matches!(
            log_gamma(c(-3.0 + 1e-13, 0.0)),
            Err(Error::Pole { .. })
        ));
        assert!(log_gamma(c(-3.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn non_finite_rejected() {
        assert!(log_gamma(c(f64::NAN, 0.0)).is_err());
        assert!(ln_gamma_real(-1.0).is_err());
    }
}
