//! Bessel functions of the first kind for the orders `ν = d/2 - 1` that arise
//! from spherical averages in `d` dimensions.
//!
//! Half-integer orders are evaluated from the closed trigonometric forms of the
//! spherical Bessel functions. Integer orders use the power series for small
//! arguments, Miller's backward recurrence in the middle range and Hankel's
//! asymptotic expansion for large arguments.

use std::f64::consts::PI;

use super::gamma::ln_gamma_real;
use crate::error::{Error, Result};

/// Arguments at or above this use the asymptotic expansion (integer orders).
pub const ASYMPTOTIC_SWITCH: f64 = 25.0;

const SERIES_SWITCH: f64 = 1.0;
const RESCALE_AT: f64 = 1e250;

/// Order of a Bessel function, stored as twice its value so that both
/// integer and half-integer orders are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BesselOrder {
    twice: i32,
}

impl BesselOrder {
    /// `ν = twice / 2`; only `ν >= -1/2` is supported.
    pub fn from_twice(twice: i32) -> Result<Self> {
        if twice < -1 {
            return Err(Error::domain(format!(
                "Bessel order {} is below -1/2",
                twice as f64 / 2.0
            )));
        }
        Ok(BesselOrder { twice })
    }

    pub fn integer(n: u32) -> Self {
        BesselOrder {
            twice: 2 * n as i32,
        }
    }

    /// The order `d/2 - 1` attached to the sphere `S^{d-1}`.
    pub fn for_dimension(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        Self::from_twice(d as i32 - 2)
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn twice(self) -> i32 {
        self.twice
    }

    pub fn is_half_integer(self) -> bool {
        self.twice % 2 != 0
    }

    fn next(self) -> Self {
        BesselOrder {
            twice: self.twice + 2,
        }
    }
}

/// `J_ν(u)` for `u > 0`.
pub fn bessel_j(order: BesselOrder, u: f64) -> Result<f64> {
    if !u.is_finite() || u <= 0.0 {
        return Err(Error::domain(format!(
            "bessel_j needs 0 < u < inf, got {u}"
        )));
    }
    Ok(if order.is_half_integer() {
        half_integer(order, u)
    } else {
        integer_order((order.twice / 2) as u32, u)
    })
}

fn half_integer(order: BesselOrder, u: f64) -> f64 {
    // ν = n + 1/2
    let n = (order.twice - 1) / 2;
    if n == -1 {
        return (2.0 / (PI * u)).sqrt() * u.cos();
    }
    let n = n as u32;
    if n >= 1 && u < (n + 1) as f64 {
        return power_series(order.value(), u);
    }
    (2.0 * u / PI).sqrt() * spherical_upward(n, u)
}

/// Spherical Bessel `j_n(u)` by upward recurrence; stable for `u > n`.
fn spherical_upward(n: u32, u: f64) -> f64 {
    let (s, c) = u.sin_cos();
    let j0 = s / u;
    if n == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (u * u) - c / u;
    for k in 1..n {
        let next = (2 * k + 1) as f64 / u * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn power_series(nu: f64, u: f64) -> f64 {
    let half = 0.5 * u;
    let ln_first = nu * half.ln() - ln_gamma_real(nu + 1.0).expect("nu + 1 > 0");
    let mut term = ln_first.exp();
    let mut sum = term;
    let q = half * half;
    for k in 1..500 {
        let k = k as f64;
        term *= -q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn integer_order(n: u32, u: f64) -> f64 {
    let nu = n as f64;
    if u < SERIES_SWITCH {
        power_series(nu, u)
    } else if u >= ASYMPTOTIC_SWITCH && u >= 2.0 * nu * nu {
        hankel_asymptotic(nu, u)
    } else {
        miller(n, u)
    }
}

/// Backward recurrence normalised with `J_0 + 2 Σ J_{2k} = 1`.
fn miller(n: u32, u: f64) -> f64 {
    let top = (u.max(n as f64) + 40.0).ceil() as u32;
    let top = top + top % 2;
    let mut above = 0.0_f64;
    let mut cur = 1e-30_f64;
    let mut wanted = 0.0;
    let mut norm = 0.0;
    // cur holds j_k; loop produces j_{k-1}.
    for k in (1..=top).rev() {
        if k == n {
            wanted = cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        let below = 2.0 * k as f64 / u * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_AT {
            cur /= RESCALE_AT;
            above /= RESCALE_AT;
            wanted /= RESCALE_AT;
            norm /= RESCALE_AT;
        }
    }
    if n == 0 {
        wanted = cur;
    }
    norm += cur;
    wanted / norm
}

fn hankel_asymptotic(nu: f64, u: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * u);
        if a.abs() > last {
            break;
        }
        last = a.abs();
        // signs: P gets (-1)^{k/2} for even k, Q gets (-1)^{(k-1)/2} for odd k
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let phase = (0.5 * nu + 0.25) * PI;
    let (su, cu) = u.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cu * cp + su * sp;
    let sin_chi = su * cp - cu * sp;
    (2.0 / (PI * u)).sqrt() * (p * cos_chi - q * sin_chi)
}

fn derivative(order: BesselOrder, u: f64) -> f64 {
    let j = bessel_j(order, u).expect("u > 0");
    let j_next = bessel_j(order.next(), u).expect("u > 0");
    order.value() / u * j - j_next
}

fn newton_zero(order: BesselOrder, guess: f64) -> f64 {
    let mut z = guess;
    for _ in 0..30 {
        let f = bessel_j(order, z).expect("zero guesses stay positive");
        let step = f / derivative(order, z);
        z -= step;
        if step.abs() <= 1e-15 * z.abs() {
            break;
        }
    }
    z
}

fn bisect_zero(order: BesselOrder, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = bessel_j(order, lo).expect("lo > 0");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = bessel_j(order, mid).expect("mid > 0");
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    newton_zero(order, 0.5 * (lo + hi))
}

/// McMahon's leading approximation to the k-th positive zero (k >= 1).
fn mcmahon(order: BesselOrder, k: usize) -> f64 {
    let nu = order.value();
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    beta - (mu - 1.0) / (8.0 * beta)
}

/// The first `count` positive zeros of `J_ν` strictly greater than `after`,
/// in increasing order.
pub fn bessel_zeros_after(order: BesselOrder, after: f64, count: usize) -> Vec<f64> {
    let mut zeros: Vec<f64> = Vec::with_capacity(count);
    let mut k = 1usize;
    while zeros.len() < count {
        let guess = mcmahon(order, k);
        k += 1;
        if guess < after - PI {
            continue;
        }
        let mut z = newton_zero(order, guess.max(1e-3));
        let prev = zeros.last().copied();
        let plausible = z.is_finite()
            && z > 0.0
            && (z - guess).abs() < 0.5 * PI
            && prev.is_none_or(|p| z - p > 0.5 * PI);
        if !plausible {
            let lo = prev.map_or((guess - 0.5 * PI).max(1e-6), |p| p + 1e-9);
            z = scan_for_zero(order, lo);
        }
        if z > after && prev.is_none_or(|p| z > p) {
            zeros.push(z);
        }
    }
    zeros
}

fn scan_for_zero(order: BesselOrder, lo: f64) -> f64 {
    let step = 0.125;
    let mut a = lo;
    let mut fa = bessel_j(order, a).expect("positive");
    loop {
        let b = a + step;
        let fb = bessel_j(order, b).expect("positive");
        if fa == 0.0 {
            return a;
        }
        if (fa > 0.0) != (fb > 0.0) {
            return bisect_zero(order, a, b);
        }
        a = b;
        fa = fb;
    }
}
