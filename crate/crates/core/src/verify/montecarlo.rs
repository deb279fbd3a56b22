use rand::Rng;
use rand_distr::StandardNormal;

use super::{power_of_norm, radial::profile_integral, QuadratureConfig};
use crate::error::{Error, Result};
use crate::kernel::{require_strip, EvaluationPoint, KernelSpec, SphericalProfile};
use crate::par;
use crate::rng;
use crate::special_fn::{sphere_surface_area, ComplexScalar};

/// Monte-Carlo estimate of `∫_{R^d} (cos_m⟨t,x⟩ - cos⟨t,x⟩) ‖t‖^{-(d+α)} dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub estimate: ComplexScalar,
    pub std_error: f64,
    pub samples: usize,
}

/// Direction-averaging oracle.
///
/// Writing `t = r ω`, the integral is `|S^{d-1}|` times the mean over uniform
/// `ω` of `∫_0^∞ r^{-1-α} (cos_m - cos)(r⟨ω,x⟩) dr = |⟨ω,x⟩|^α K(m,α)`, where
/// `K` is the one-dimensional cosine integral, computed once without any
/// Bessel functions. Each sample is a Haar-random orthonormal frame and
/// contributes the average over its `d` vectors; every frame vector is itself
/// uniform on the sphere. Sample `i` draws from its own seeded stream, so the
/// estimate is bit-identical for a given seed regardless of threading.
pub fn montecarlo_oracle(
    spec: &KernelSpec,
    x: &EvaluationPoint,
    config: &QuadratureConfig,
) -> Result<MonteCarloEstimate> {
    config.validate()?;
    require_strip(spec)?;
    let d = spec.d();
    if x.dim() != d {
        return Err(Error::Shape(format!(
            "x has {} coordinates, expected d = {d}",
            x.dim()
        )));
    }
    if x.is_origin() {
        return Err(Error::domain("Monte-Carlo oracle needs x != 0"));
    }
    let alpha = spec.alpha();

    let line = SphericalProfile::new(1, spec.m(), config.u_switch)?;
    // d = 1 profile is 2 (cos_m - cos), so halve it.
    let kernel = profile_integral(&line, alpha, 0.0, config)?.value * 0.5;
    let surface = sphere_surface_area(d);
    let coords = x.coords();

    let n = config.mc_directions;
    let seed = config.rng_seed;
    let samples: Vec<ComplexScalar> = par::map_range(n, |i| {
        let mut rng = rng::stream(seed, i as u64);
        let frame = haar_frame(&mut rng, d);
        let mean: ComplexScalar = frame
            .iter()
            .map(|q| {
                let v: f64 = q.iter().zip(coords).map(|(a, b)| a * b).sum();
                power_of_norm(v.abs(), alpha)
            })
            .sum::<ComplexScalar>()
            / d as f64;
        mean * kernel * surface
    });

    let mean = samples.iter().sum::<ComplexScalar>() / n as f64;
    let std_error = if n > 1 {
        let ss: f64 = samples.iter().map(|s| (s - mean).norm_sqr()).sum();
        (ss / ((n - 1) as f64 * n as f64)).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(MonteCarloEstimate {
        estimate: mean,
        std_error,
        samples: n,
    })
}

/// Orthonormal frame from Gram–Schmidt on a standard Gaussian matrix.
fn haar_frame<R: Rng>(rng: &mut R, d: usize) -> Vec<Vec<f64>> {
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(d);
    while frame.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        // two passes keep the frame orthogonal to rounding level
        for _ in 0..2 {
            for q in &frame {
                let p: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= p * qi);
            }
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|a| *a /= norm);
            frame.push(v);
        }
    }
    frame
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::normalization_constant;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig {
            mc_directions: 512,
            ..QuadratureConfig::default()
        }
    }

    #[test]
    fn one_dimension_is_exact() {
        let spec = KernelSpec::real(1, 1, 1.0).unwrap();
        let x = EvaluationPoint::new(vec![1.0]).unwrap();
        let r = montecarlo_oracle(&spec, &x, &cfg()).unwrap();
        assert!((r.estimate.re - std::f64::consts::PI).abs() < 1e-9);
        assert!(r.std_error < 1e-12);
    }

    #[test]
    fn deterministic_for_seed() {
        let spec = KernelSpec::real(3, 1, 1.0).unwrap();
        let x = EvaluationPoint::unit(3);
        let a = montecarlo_oracle(&spec, &x, &cfg()).unwrap();
        let b = montecarlo_oracle(&spec, &x, &cfg()).unwrap();
        assert_eq!(a, b);
        let other = QuadratureConfig {
            rng_seed: 7,
            ..cfg()
        };
        let c = montecarlo_oracle(&spec, &x, &other).unwrap();
        assert_ne!(a.estimate, c.estimate);
    }

    #[test]
    fn three_dimensions_within_four_sigma() {
        let spec = KernelSpec::real(3, 1, 1.0).unwrap();
        let x = EvaluationPoint::unit(3);
        let r = montecarlo_oracle(&spec, &x, &cfg()).unwrap();
        let c = normalization_constant(3, spec.alpha()).unwrap();
        assert!((r.estimate - c).norm() < 4.0 * r.std_error, "{r:?} vs {c}");
    }

    #[test]
    fn frames_are_orthonormal() {
        let mut rng = rng::stream(1, 0);
        let f = haar_frame(&mut rng, 5);
        for i in 0..5 {
            for j in 0..5 {
                let p: f64 = f[i].iter().zip(&f[j]).map(|(a, b)| a * b).sum();
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((p - e).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn origin_rejected() {
        let spec = KernelSpec::real(2, 1, 1.0).unwrap();
        let x = EvaluationPoint::new(vec![0.0, 0.0]).unwrap();
        assert!(matches!(
            montecarlo_oracle(&spec, &x, &cfg()),
            Err(Error::Domain(_))
        ));
    }
}
