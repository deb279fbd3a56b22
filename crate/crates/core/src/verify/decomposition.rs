use num_complex::Complex64;

use super::{power_of_norm, radial::profile_integral, QuadratureConfig};
use crate::error::{Error, Result};
use crate::kernel::{
    normalization_constant, EvaluationPoint, KernelSpec, SphericalProfile, POLE_TOL,
};
use crate::special_fn::ComplexScalar;
use crate::sum::ComplexCompensatedSum;

/// Ball radius used when none is given.
pub const DEFAULT_RADIUS: f64 = 1.0;

const SERIES_REL_STOP: f64 = 1e-17;

/// The three pieces of the integral split at the ball of radius `a`:
///
/// * `t1`: ball integral of the order-`m+1` remainder, as a series of
///   closed-form monomial ball integrals;
/// * `t2`: exterior integral of the order-`m` remainder;
/// * `t3`: the analytically continued ball integral of the order-`2m` monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub t1: ComplexScalar,
    pub t2: ComplexScalar,
    pub t3: ComplexScalar,
    pub radius_a: f64,
    /// Exactly `t1 + t2 + t3`.
    pub sum: ComplexScalar,
    pub closed_form: ComplexScalar,
    pub rel_error: f64,
}

/// Evaluates `T1 + T2 + T3` for `2(m-1) < Re α < 2(m+1)`, `Re α ≠ 2m`.
///
/// Above `2m` the direct integral at order `m` diverges but the sum still
/// equals `C(d,α) ‖x‖^α`; that is how the identity carries over to order
/// `m + 1`. The `t1` series is summed directly, so `a ‖x‖` should stay
/// moderate (a few units) to avoid cancellation.
pub fn verify_decomposition(
    spec: &KernelSpec,
    x: &EvaluationPoint,
    radius_a: f64,
    config: &QuadratureConfig,
) -> Result<DecompositionReport> {
    config.validate()?;
    let m = spec.m();
    let alpha = spec.alpha();
    let lower = 2.0 * (m as f64 - 1.0);
    let upper = 2.0 * (m as f64 + 1.0);
    let excluded = 2.0 * m as f64;
    if !(lower < alpha.re && alpha.re < upper) || alpha.re == excluded {
        return Err(Error::Region {
            m,
            alpha_re: alpha.re,
            lower,
            upper,
            excluded,
        });
    }
    if (alpha - excluded).norm() < POLE_TOL {
        return Err(Error::Pole {
            location: Complex64::new(excluded, 0.0),
        });
    }
    if x.dim() != spec.d() {
        return Err(Error::Shape(format!(
            "x has {} coordinates, expected d = {}",
            x.dim(),
            spec.d()
        )));
    }
    if x.is_origin() {
        return Err(Error::domain("decomposition needs x != 0"));
    }
    if !radius_a.is_finite() || radius_a <= 0.0 {
        return Err(Error::invalid(format!(
            "radius must be positive, got {radius_a}"
        )));
    }

    let profile = SphericalProfile::for_spec(spec, config.u_switch)?;
    let r = x.norm();
    let closed = normalization_constant(spec.d(), alpha)? * power_of_norm(r, alpha);

    let tail = profile.tail_coefficients();
    let ln_a = radius_a.ln();
    let ln_ra = (radius_a * r).ln();
    let mf = m as f64;

    // c_m r^{2m} a^{2m-α} / (2m-α)
    let e_m = 2.0 * mf - alpha;
    let t3 = tail[0] * (2.0 * mf * r.ln() + e_m * ln_a).exp() / e_m;

    // Σ_{j>m} c_j r^{2j} a^{2j-α} / (2j-α) = a^{-α} Σ c_j (ra)^{2j} / (2j-α)
    let mut series = ComplexCompensatedSum::new();
    for (k, &c) in tail.iter().enumerate().skip(1) {
        let j = mf + k as f64;
        let term = c * (2.0 * j * ln_ra).exp() / (2.0 * j - alpha);
        series.add(term);
        if term.norm() == 0.0 || term.norm() < SERIES_REL_STOP * series.value().norm() {
            break;
        }
    }
    let t1 = series.value() * (-alpha * ln_a).exp();

    let exterior = profile_integral(&profile, alpha, radius_a * r, config)?;
    let t2 = exterior.value * power_of_norm(r, alpha);

    let sum = t1 + t2 + t3;
    let rel_error = (sum - closed).norm() / closed.norm().max(config.abs_tol);
    Ok(DecompositionReport {
        t1,
        t2,
        t3,
        radius_a,
        sum,
        closed_form: closed,
        rel_error,
    })
}
