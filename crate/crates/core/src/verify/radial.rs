use num_complex::Complex64;

use super::{power_of_norm, QuadratureConfig, VerificationReport};
use crate::error::{ConvergenceFailure, Error, Result};
use crate::kernel::{
    normalization_constant, require_strip, EvaluationPoint, KernelSpec, SphericalProfile,
};
use crate::quadrature::{integrate, Integral, IteratedAverage, Tolerance};
use crate::special_fn::{bessel_zeros_after, ComplexScalar};
use crate::sum::ComplexCompensatedSum;

const SERIES_REL_STOP: f64 = 1e-17;
const MIN_TAIL_TERMS: usize = 8;
const MAX_TAIL_TERMS: usize = 600;
const SETTLED_STEPS: usize = 3;

/// `∫_lower^∞ s^{-1-α} Ψ_{d,m}(s) ds`.
///
/// Needs `Re α > 2(m-1)` for the head at infinity and, when `lower == 0`,
/// `Re α < 2m` for the origin. Callers check the admissible region.
pub(crate) fn profile_integral(
    profile: &SphericalProfile,
    alpha: ComplexScalar,
    lower: f64,
    config: &QuadratureConfig,
) -> Result<Integral> {
    let mut out = Integral::zero();
    let u0 = profile.switch();
    if lower < u0 {
        out.value += series_segment(profile, alpha, lower, u0);
    }

    let start = lower.max(u0);
    let zeros = bessel_zeros_after(profile.bessel_order(), start, config.tail_start_zeros);
    let upper = *zeros.last().expect("at least one zero requested");
    let middle_tol = Tolerance {
        abs: config.abs_tol,
        rel: 0.1 * config.rel_tol,
    };
    let middle = integrate(
        |s| profile.weighted(s, alpha),
        start,
        upper,
        middle_tol,
        config.max_subdivisions,
    )
    .map_err(|e| shift_estimate(e, out.value))?;
    out.accumulate(&middle);

    out.value += head_at_infinity(profile, alpha, upper);

    let tail = oscillatory_tail(profile, alpha, upper, config)
        .map_err(|e| shift_estimate(e, out.value))?;
    out.accumulate(&tail);
    Ok(out)
}

fn shift_estimate(err: Error, offset: Complex64) -> Error {
    match err {
        Error::Convergence {
            reason,
            subdivisions,
            estimate,
        } => Error::Convergence {
            reason,
            subdivisions,
            estimate: estimate + offset,
        },
        other => other,
    }
}

/// Termwise `∫_lower^{u0} Σ_{j>=m} c_j s^{2j-1-α} ds`.
fn series_segment(
    profile: &SphericalProfile,
    alpha: ComplexScalar,
    lower: f64,
    u0: f64,
) -> ComplexScalar {
    let m = profile.m() as f64;
    let ln_u0 = u0.ln();
    let ln_lower = if lower > 0.0 {
        lower.ln()
    } else {
        f64::NEG_INFINITY
    };
    let mut sum = ComplexCompensatedSum::new();
    for (k, &c) in profile.tail_coefficients().iter().enumerate() {
        let e = 2.0 * (m + k as f64) - alpha;
        let antiderivative = |ln_s: f64| -> ComplexScalar {
            if ln_s == f64::NEG_INFINITY {
                Complex64::new(0.0, 0.0)
            } else {
                (e * ln_s).exp()
            }
        };
        let piece = if e.norm() < 1e-300 {
            Complex64::new(ln_u0 - ln_lower, 0.0)
        } else {
            (antiderivative(ln_u0) - antiderivative(ln_lower)) / e
        };
        let term = piece * c;
        sum.add(term);
        let total = sum.value().norm();
        if term.norm() == 0.0 || (k > 0 && term.norm() < SERIES_REL_STOP * total) {
            break;
        }
    }
    sum.value()
}

/// `Σ_{j<m} h_j ∫_U^∞ s^{2j-1-α} ds = Σ h_j U^{2j-α} / (α - 2j)`.
fn head_at_infinity(profile: &SphericalProfile, alpha: ComplexScalar, upper: f64) -> ComplexScalar {
    let ln_u = upper.ln();
    profile
        .head_coefficients()
        .iter()
        .enumerate()
        .map(|(j, &h)| {
            let e = 2.0 * j as f64 - alpha;
            (e * ln_u).exp() / (-e) * h
        })
        .sum()
}

/// `-|S^{d-1}| ∫_U^∞ s^{-1-α} Λ_d(s) ds`, summed between consecutive zeros of
/// `J_{d/2-1}` and accelerated by iterated averaging.
fn oscillatory_tail(
    profile: &SphericalProfile,
    alpha: ComplexScalar,
    start: f64,
    config: &QuadratureConfig,
) -> Result<Integral> {
    let f = |s: f64| (-(1.0 + alpha) * s.ln()).exp() * profile.sphere_average_cos(s);
    let mut series = IteratedAverage::new();
    let mut out = Integral::zero();
    let mut left = start;
    let mut pending: std::collections::VecDeque<f64> = Default::default();
    let mut previous = None::<Complex64>;
    let mut settled = 0;
    let panel_tol = Tolerance {
        abs: 1e-3 * config.abs_tol,
        rel: 1e-13,
    };
    while series.len() < MAX_TAIL_TERMS {
        if pending.is_empty() {
            pending.extend(bessel_zeros_after(profile.bessel_order(), left + 1.0, 32));
        }
        let right = pending.pop_front().expect("refilled above");
        let piece = integrate(f, left, right, panel_tol, 64)?;
        out.evaluations += piece.evaluations;
        out.subdivisions += piece.subdivisions;
        series.push(piece.value);
        left = right;
        if series.len() < MIN_TAIL_TERMS {
            continue;
        }
        let estimate = series.estimate();
        if let Some(prev) = previous {
            let target = config.abs_tol.max(config.rel_tol * estimate.norm());
            if (estimate - prev).norm() <= 0.1 * target {
                settled += 1;
                if settled >= SETTLED_STEPS {
                    out.value = estimate * (-profile.surface());
                    out.error += (estimate - prev).norm() * profile.surface();
                    return Ok(out);
                }
            } else {
                settled = 0;
            }
        }
        previous = Some(estimate);
    }
    Err(Error::Convergence {
        reason: ConvergenceFailure::SeriesStalled,
        subdivisions: out.subdivisions,
        estimate: series.estimate() * (-profile.surface()),
    })
}

/// `J(d,m,α) = ∫_0^∞ s^{-1-α} Ψ_{d,m}(s) ds`, which equals `C(d,α)` on the strip.
pub fn radial_integral(spec: &KernelSpec, config: &QuadratureConfig) -> Result<ComplexScalar> {
    radial_integral_detailed(spec, config).map(|r| r.value)
}

/// [`radial_integral`] with error estimate and evaluation counts.
pub fn radial_integral_detailed(spec: &KernelSpec, config: &QuadratureConfig) -> Result<Integral> {
    config.validate()?;
    require_strip(spec)?;
    let profile = SphericalProfile::for_spec(spec, config.u_switch)?;
    profile_integral(&profile, spec.alpha(), 0.0, config)
}

/// [`radial_integral`] with every closed-form power integral replaced by
/// adaptive quadrature: `(0, u0]` is integrated directly and the polynomial
/// head beyond the last panel zero `U` through `s = U/t`. No strip check is
/// made, so this is the reference for how plain quadrature behaves where the
/// integral diverges.
pub fn raw_radial_quadrature(spec: &KernelSpec, config: &QuadratureConfig) -> Result<Integral> {
    config.validate()?;
    let profile = SphericalProfile::for_spec(spec, config.u_switch)?;
    let alpha = spec.alpha();
    let tol = Tolerance {
        abs: config.abs_tol,
        rel: 0.1 * config.rel_tol,
    };
    let u0 = profile.switch();
    let mut out = integrate(
        |s| profile.weighted(s, alpha),
        0.0,
        u0,
        tol,
        config.max_subdivisions,
    )?;

    let zeros = bessel_zeros_after(profile.bessel_order(), u0, config.tail_start_zeros);
    let upper = *zeros.last().expect("at least one zero requested");
    let middle = integrate(
        |s| profile.weighted(s, alpha),
        u0,
        upper,
        tol,
        config.max_subdivisions,
    )
    .map_err(|e| shift_estimate(e, out.value))?;
    out.accumulate(&middle);

    let ln_u = upper.ln();
    let head = integrate(
        |t| {
            let ln_t = t.ln();
            profile
                .head_coefficients()
                .iter()
                .enumerate()
                .map(|(j, &h)| {
                    let e = 2.0 * j as f64 - alpha;
                    (e * ln_u - (1.0 + e) * ln_t).exp() * h
                })
                .sum()
        },
        0.0,
        1.0,
        tol,
        config.max_subdivisions,
    )
    .map_err(|e| shift_estimate(e, out.value))?;
    out.accumulate(&head);

    let tail = oscillatory_tail(&profile, alpha, upper, config)
        .map_err(|e| shift_estimate(e, out.value))?;
    out.accumulate(&tail);
    Ok(out)
}

/// Checks the identity at `x` by radial quadrature.
pub fn verify_identity(
    spec: &KernelSpec,
    x: &EvaluationPoint,
    config: &QuadratureConfig,
) -> Result<VerificationReport> {
    config.validate()?;
    require_strip(spec)?;
    if x.dim() != spec.d() {
        return Err(Error::Shape(format!(
            "x has {} coordinates, expected d = {}",
            x.dim(),
            spec.d()
        )));
    }
    let constant = normalization_constant(spec.d(), spec.alpha())?;
    if x.is_origin() {
        let zero = Complex64::new(0.0, 0.0);
        return Ok(VerificationReport::new(
            zero,
            zero,
            config.abs_tol,
            0,
            true,
            vec!["degenerate evaluation point".to_string()],
        ));
    }
    let scale = power_of_norm(x.norm(), spec.alpha());
    let closed = constant * scale;
    let profile = SphericalProfile::for_spec(spec, config.u_switch)?;
    Ok(
        match profile_integral(&profile, spec.alpha(), 0.0, config) {
            Ok(r) => VerificationReport::new(
                r.value * scale,
                closed,
                config.abs_tol,
                r.evaluations,
                true,
                vec![],
            ),
            Err(Error::Convergence {
                reason,
                subdivisions,
                estimate,
            }) => VerificationReport::new(
                estimate * scale,
                closed,
                config.abs_tol,
                0,
                false,
                vec![format!(
                    "quadrature did not converge after {subdivisions} subdivisions: {reason}"
                )],
            ),
            Err(e) => return Err(e),
        },
    )
}

/// One row of a pole probe at `α = 2m - ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleProbeRow {
    pub epsilon: f64,
    pub alpha: f64,
    /// `|C(d, 2m - ε)|`
    pub closed_abs: f64,
    /// `|J(d, m, 2m - ε)|` from [`radial_integral`]
    pub numeric_abs: f64,
}

impl PoleProbeRow {
    /// `ε |C(d, 2m - ε)|`, which tends to the residue magnitude as `ε → 0`.
    pub fn scaled_closed(&self) -> f64 {
        self.epsilon * self.closed_abs
    }
}

/// Approaches the pole at `α = 2m` from inside the strip.
pub fn pole_probe(
    d: usize,
    m: u32,
    epsilons: &[f64],
    config: &QuadratureConfig,
) -> Result<Vec<PoleProbeRow>> {
    epsilons
        .iter()
        .map(|&eps| {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::invalid(format!(
                    "epsilon must lie in (0, 1), got {eps}"
                )));
            }
            let alpha = 2.0 * m as f64 - eps;
            let spec = KernelSpec::real(d, m, alpha)?;
            let closed = normalization_constant(d, spec.alpha())?;
            let numeric = radial_integral(&spec, config)?;
            Ok(PoleProbeRow {
                epsilon: eps,
                alpha,
                closed_abs: closed.norm(),
                numeric_abs: numeric.norm(),
            })
        })
        .collect()
}

/// `(max - min) / max` of `ε |C|` over the probe rows.
pub fn residue_spread(rows: &[PoleProbeRow]) -> f64 {
    let scaled: Vec<f64> = rows.iter().map(PoleProbeRow::scaled_closed).collect();
    let max = scaled.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = scaled.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) / max
}
