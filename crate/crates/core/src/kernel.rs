//! The truncated-cosine kernel, its normalisation constant and the
//! sphere-averaged radial profile of the singular integrand.
//!
//! For `m >= 1` the truncated cosine is `cos_m(v) = Σ_{j<m} (-1)^j v^{2j}/(2j)!`
//! and the integrand is `(cos_m⟨t,x⟩ - cos⟨t,x⟩) ‖t‖^{-(d+α)}`. It is absolutely
//! integrable over `R^d` exactly when `2(m-1) < Re α < 2m`, where it equals
//! `C(d,α) ‖x‖^α`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_fn::{
    bessel_j, ensure_finite, ln_gamma_real, ln_sphere_monomial_moment, log_gamma,
    sphere_surface_area, BesselOrder, ComplexScalar,
};
use crate::sum::CompensatedSum;

/// Distance to a pole of `C(d, α)` below which evaluation is refused.
pub const POLE_TOL: f64 = 1e-10;

/// Default split between the tail series and direct evaluation.
pub const DEFAULT_SWITCH: f64 = 1.0;

const SERIES_REL_STOP: f64 = 1e-17;
const MAX_SERIES_TERMS: usize = 600;

/// Dimension, truncation order and exponent of one instance of the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    d: usize,
    m: u32,
    alpha: ComplexScalar,
}

impl KernelSpec {
    pub fn new(d: usize, m: u32, alpha: ComplexScalar) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("dimension d must be at least 1"));
        }
        if m == 0 {
            return Err(Error::invalid("truncation order m must be at least 1"));
        }
        ensure_finite(alpha, "alpha")?;
        Ok(KernelSpec { d, m, alpha })
    }

    pub fn real(d: usize, m: u32, alpha: f64) -> Result<Self> {
        Self::new(d, m, Complex64::new(alpha, 0.0))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> ComplexScalar {
        self.alpha
    }

    pub fn strip(&self) -> Strip {
        validity_strip(self.m)
    }

    pub fn with_m(&self, m: u32) -> Result<Self> {
        Self::new(self.d, m, self.alpha)
    }
}

/// A point `x ∈ R^d` at which the identity is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationPoint {
    x: Vec<f64>,
}

impl EvaluationPoint {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::invalid(
                "evaluation point must have at least one coordinate",
            ));
        }
        if let Some(bad) = x.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "evaluation point has non-finite entry {bad}"
            )));
        }
        Ok(EvaluationPoint { x })
    }

    /// The first standard basis vector of `R^d`.
    pub fn unit(d: usize) -> Self {
        let mut x = vec![0.0; d.max(1)];
        x[0] = 1.0;
        EvaluationPoint { x }
    }

    pub fn coords(&self) -> &[f64] {
        &self.x
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn norm(&self) -> f64 {
        euclidean_norm(&self.x)
    }

    pub fn is_origin(&self) -> bool {
        self.x.iter().all(|&v| v == 0.0)
    }
}

pub(crate) fn euclidean_norm(v: &[f64]) -> f64 {
    let scale = v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let ss: f64 = v.iter().map(|x| (x / scale) * (x / scale)).sum();
    scale * ss.sqrt()
}

/// An open interval `(lower, upper)` of admissible `Re α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub lower: f64,
    pub upper: f64,
}

impl Strip {
    pub fn contains(&self, re: f64) -> bool {
        self.lower < re && re < self.upper
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

impl std::fmt::Display for Strip {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

/// `(2(m-1), 2m)`.
pub fn validity_strip(m: u32) -> Strip {
    let m = m as f64;
    Strip {
        lower: 2.0 * (m - 1.0),
        upper: 2.0 * m,
    }
}

pub fn is_in_strip(spec: &KernelSpec) -> bool {
    spec.strip().contains(spec.alpha.re)
}

pub(crate) fn require_strip(spec: &KernelSpec) -> Result<()> {
    if is_in_strip(spec) {
        Ok(())
    } else {
        let s = spec.strip();
        Err(Error::Strip {
            m: spec.m,
            alpha_re: spec.alpha.re,
            lower: s.lower,
            upper: s.upper,
        })
    }
}

/// `cos_m(v)`, evaluated in nested (Horner) form in `v²`.
pub fn cos_trunc(m: u32, v: f64) -> f64 {
    assert!(m >= 1, "truncation order must be at least 1");
    let w = v * v;
    let mut acc = 1.0;
    for j in (1..m).rev() {
        let j = j as f64;
        acc = 1.0 - w / ((2.0 * j) * (2.0 * j - 1.0)) * acc;
    }
    acc
}

/// `cos_m(v) - cos(v)`.
///
/// For `|v| <= 1` the alternating tail `Σ_{j>=m} (-1)^{j+1} v^{2j}/(2j)!` is
/// summed instead of subtracting two nearly equal numbers; the result has
/// magnitude about `v^{2m}/(2m)!` near the origin.
pub fn cos_remainder(m: u32, v: f64) -> f64 {
    if v.abs() <= DEFAULT_SWITCH {
        cos_remainder_series(m, v)
    } else {
        cos_remainder_direct(m, v)
    }
}

/// `cos_m(v) - cos(v)` by direct subtraction.
pub fn cos_remainder_direct(m: u32, v: f64) -> f64 {
    cos_trunc(m, v) - v.cos()
}

/// `cos_m(v) - cos(v)` from the alternating tail series.
pub fn cos_remainder_series(m: u32, v: f64) -> f64 {
    assert!(m >= 1, "truncation order must be at least 1");
    if v == 0.0 {
        return 0.0;
    }
    let w = v * v;
    // v^{2m} / (2m)!
    let mut term = 1.0;
    for k in 1..=(2 * m) {
        term *= v.abs() / k as f64;
    }
    if m.is_multiple_of(2) {
        term = -term;
    }
    let mut sum = CompensatedSum::new();
    let mut j = m as f64;
    for _ in 0..MAX_SERIES_TERMS {
        sum.add(term);
        if term == 0.0 || term.abs() < SERIES_REL_STOP * sum.value().abs() {
            break;
        }
        term *= -w / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
        j += 1.0;
    }
    sum.value()
}

fn nearest_pole(alpha: ComplexScalar) -> f64 {
    2.0 * (0.5 * alpha.re).round().max(0.0)
}

/// `C(d,α) = 2 π^{d/2} Γ(1-α/2) / (α 2^α Γ((d+α)/2))`.
///
/// Poles sit at `α ∈ {0, 2, 4, ...}`; odd positive integers are regular.
pub fn normalization_constant(d: usize, alpha: ComplexScalar) -> Result<ComplexScalar> {
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    ensure_finite(alpha, "alpha")?;
    let pole = nearest_pole(alpha);
    if (alpha - pole).norm() < POLE_TOL {
        return Err(Error::Pole {
            location: Complex64::new(pole, 0.0),
        });
    }
    let denom_arg = (alpha + d as f64) * 0.5;
    // 1/Γ vanishes at nonpositive integers
    let k = denom_arg.re.round();
    if k <= 0.0 && (denom_arg - k).norm() < POLE_TOL {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ln_c = LN_2 + 0.5 * d as f64 * PI.ln() + log_gamma(1.0 - alpha * 0.5)?
        - alpha.ln()
        - alpha * LN_2
        - log_gamma(denom_arg)?;
    let c = ln_c.exp();
    Ok(if alpha.im == 0.0 {
        Complex64::new(c.re, 0.0)
    } else {
        c
    })
}

/// `(cos_m⟨t,x⟩ - cos⟨t,x⟩) ‖t‖^{-(d+α)}`, principal power of the positive base.
pub fn integrand(spec: &KernelSpec, t: &[f64], x: &EvaluationPoint) -> Result<ComplexScalar> {
    if t.len() != spec.d || x.dim() != spec.d {
        return Err(Error::Shape(format!(
            "t has {} and x has {} coordinates, expected d = {}",
            t.len(),
            x.dim(),
            spec.d
        )));
    }
    let r = euclidean_norm(t);
    if r == 0.0 {
        return Err(Error::domain("integrand is undefined at t = 0"));
    }
    let v: f64 = t.iter().zip(x.coords()).map(|(a, b)| a * b).sum();
    let power = (-(spec.alpha + spec.d as f64) * r.ln()).exp();
    Ok(power * cos_remainder(spec.m, v))
}

/// Sphere average of the numerator,
/// `Ψ_{d,m}(u) = ∫_{S^{d-1}} (cos_m(u ω₁) - cos(u ω₁)) dω`,
/// with the coefficients it needs precomputed.
#[derive(Debug, Clone)]
pub struct SphericalProfile {
    d: usize,
    m: u32,
    switch: f64,
    surface: f64,
    order: BesselOrder,
    // Γ(d/2) 2^ν
    lambda_scale: f64,
    // (-1)^j M_j / (2j)!, j < m
    head: Vec<f64>,
    // (-1)^{j+1} M_j / (2j)!, j >= m
    tail: Vec<f64>,
}

const TAIL_TERMS: usize = 200;

/// `(-1)^j M_j/(2j)!` computed in log space.
fn signed_moment_coefficient(d: usize, j: usize) -> f64 {
    let mag =
        (ln_sphere_monomial_moment(d, j) - ln_gamma_real(2.0 * j as f64 + 1.0).unwrap()).exp();
    if j.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

impl SphericalProfile {
    pub fn new(d: usize, m: u32, switch: f64) -> Result<Self> {
        if d == 0 || m == 0 {
            return Err(Error::invalid("d and m must be at least 1"));
        }
        if !switch.is_finite() || switch <= 0.0 {
            return Err(Error::invalid(format!(
                "series switch must be positive, got {switch}"
            )));
        }
        let order = BesselOrder::for_dimension(d)?;
        let m_us = m as usize;
        let head = (0..m_us).map(|j| signed_moment_coefficient(d, j)).collect();
        let tail = (m_us..m_us + TAIL_TERMS)
            .map(|j| -signed_moment_coefficient(d, j))
            .collect();
        let half_d = 0.5 * d as f64;
        let lambda_scale = (ln_gamma_real(half_d)? + order.value() * LN_2).exp();
        Ok(SphericalProfile {
            d,
            m,
            switch,
            surface: sphere_surface_area(d),
            order,
            lambda_scale,
            head,
            tail,
        })
    }

    pub fn for_spec(spec: &KernelSpec, switch: f64) -> Result<Self> {
        Self::new(spec.d, spec.m, switch)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn switch(&self) -> f64 {
        self.switch
    }

    pub fn surface(&self) -> f64 {
        self.surface
    }

    pub fn bessel_order(&self) -> BesselOrder {
        self.order
    }

    /// Coefficients of `u^{2j}`, `j < m`, of the polynomial head.
    pub fn head_coefficients(&self) -> &[f64] {
        &self.head
    }

    /// Coefficients of `u^{2j}`, `j >= m`, of the tail series.
    pub fn tail_coefficients(&self) -> &[f64] {
        &self.tail
    }

    /// `Λ_d(u)`: the sphere average of `cos(u ω₁)` divided by `|S^{d-1}|`.
    pub fn sphere_average_cos(&self, u: f64) -> f64 {
        match self.d {
            1 => u.cos(),
            3 => u.sin() / u,
            _ => {
                let nu = self.order.value();
                self.lambda_scale * u.powf(-nu) * bessel_j(self.order, u).expect("u > 0")
            }
        }
    }

    /// `Σ_{j<m} head_j u^{2j}`.
    pub fn head_polynomial(&self, u: f64) -> f64 {
        let w = u * u;
        self.head.iter().rev().fold(0.0, |acc, &c| acc * w + c)
    }

    /// `Σ_{j>=m} tail_j u^{2(j-m)}`, i.e. the tail series divided by `u^{2m}`.
    pub fn reduced_tail(&self, u: f64) -> f64 {
        let w = u * u;
        let mut sum = CompensatedSum::new();
        let mut pw = 1.0;
        for &c in &self.tail {
            let term = c * pw;
            sum.add(term);
            if term == 0.0 || term.abs() < SERIES_REL_STOP * sum.value().abs() {
                break;
            }
            pw *= w;
        }
        sum.value()
    }

    /// `Ψ_{d,m}(u)` for `u > 0`.
    pub fn value(&self, u: f64) -> f64 {
        if u <= self.switch {
            u.powi(2 * self.m as i32) * self.reduced_tail(u)
        } else {
            self.head_polynomial(u) - self.surface * self.sphere_average_cos(u)
        }
    }

    /// `s^{-1-α} Ψ_{d,m}(s)`, arranged to stay finite as `s → 0`.
    pub fn weighted(&self, s: f64, alpha: ComplexScalar) -> ComplexScalar {
        if s <= self.switch {
            let exponent = 2.0 * self.m as f64 - 1.0 - alpha;
            (exponent * s.ln()).exp() * self.reduced_tail(s)
        } else {
            (-(1.0 + alpha) * s.ln()).exp() * self.value(s)
        }
    }
}

/// `Ψ_{d,m}(u)`, the integrand numerator averaged over `S^{d-1}`.
pub fn spherical_average(spec: &KernelSpec, u: f64) -> Result<f64> {
    if !u.is_finite() || u <= 0.0 {
        return Err(Error::domain(format!(
            "spherical_average needs u > 0, got {u}"
        )));
    }
    Ok(SphericalProfile::for_spec(spec, DEFAULT_SWITCH)?.value(u))
}
