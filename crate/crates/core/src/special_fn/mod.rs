//! Scalar special functions: complex log-gamma, Bessel `J` of the orders
//! produced by spherical averaging, and unit-sphere moments.

mod bessel;
mod gamma;
mod sphere;

pub use bessel::{bessel_j, bessel_zeros_after, BesselOrder, ASYMPTOTIC_SWITCH};
pub use gamma::{ln_gamma_real, log_gamma, POLE_TOL as GAMMA_POLE_TOL};
pub use sphere::{ln_sphere_monomial_moment, sphere_monomial_moment, sphere_surface_area};

/// Complex scalars throughout the crate; components must be finite at API
/// boundaries.
pub type ComplexScalar = num_complex::Complex64;

pub(crate) fn ensure_finite(z: ComplexScalar, what: &str) -> crate::error::Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(crate::error::Error::invalid(format!(
            "{what} must be finite, got {z}"
        )))
    }
}
