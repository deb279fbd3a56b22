//! Surface measure of the unit sphere `S^{d-1}` and its even monomial moments.

use std::f64::consts::{LN_2, PI};

use super::gamma::ln_gamma_real;

/// `ln ∫_{S^{d-1}} ω₁^{2j} dω`.
pub fn ln_sphere_monomial_moment(d: usize, j: usize) -> f64 {
    assert!(d >= 1, "sphere dimension must be at least 1");
    let half_d = 0.5 * d as f64;
    let j = j as f64;
    let ratio = ln_gamma_real(j + 0.5).expect("j + 1/2 > 0")
        - ln_gamma_real(j + half_d).expect("j + d/2 > 0");
    LN_2 + (half_d - 0.5) * PI.ln() + ratio
}

/// `∫_{S^{d-1}} ω₁^{2j} dω = 2 π^{(d-1)/2} Γ(j + 1/2) / Γ(j + d/2)`.
///
/// For `d = 1` the sphere is `{-1, +1}` with counting measure and the moment is 2.
pub fn sphere_monomial_moment(d: usize, j: usize) -> f64 {
    ln_sphere_monomial_moment(d, j).exp()
}

/// `|S^{d-1}| = 2 π^{d/2} / Γ(d/2)`.
pub fn sphere_surface_area(d: usize) -> f64 {
    sphere_monomial_moment(d, 0)
}
