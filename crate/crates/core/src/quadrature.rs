//! Globally adaptive Gauss–Kronrod (10/21) integration of complex-valued
//! functions on finite intervals, and iterated averaging of alternating
//! partial sums.

use num_complex::Complex64;

use crate::error::{ConvergenceFailure, Error, Result};
use crate::sum::ComplexCompensatedSum;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_067_972_370,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Absolute and relative targets for an integration.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs.max(self.rel * magnitude)
    }
}

/// Result of an integration with its bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

impl Integral {
    pub fn zero() -> Self {
        Integral {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
            subdivisions: 0,
        }
    }

    pub fn accumulate(&mut self, other: &Integral) {
        self.value += other.value;
        self.error += other.error;
        self.evaluations += other.evaluations;
        self.subdivisions += other.subdivisions;
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut values = [Complex64::new(0.0, 0.0); 21];
    values[20] = fc;
    for k in 0..10 {
        let dx = half * XGK[k];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[2 * k] = f1;
        values[2 * k + 1] = f2;
        kron += (f1 + f2) * WGK[k];
        if k % 2 == 1 {
            gauss += (f1 + f2) * WG[k / 2];
        }
    }
    if values
        .iter()
        .any(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(Error::Convergence {
            reason: ConvergenceFailure::NonFinite,
            subdivisions: 0,
            estimate: Complex64::new(f64::NAN, f64::NAN),
        });
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).norm() * WGK[10];
    for k in 0..10 {
        asc += ((values[2 * k] - mean).norm() + (values[2 * k + 1] - mean).norm()) * WGK[k];
    }
    let value = kron * half;
    let asc = asc * half.abs();
    let diff = ((kron - gauss) * half).norm();
    let mut error = diff;
    if asc != 0.0 && diff != 0.0 {
        error = asc * (200.0 * diff / asc).powf(1.5).min(1.0);
    }
    // floor at rounding level
    let floor = 50.0 * f64::EPSILON * value.norm();
    if error < floor {
        error = floor;
    }
    Ok(Panel { a, b, value, error })
}

/// Integrates `f` over `[a, b]`, bisecting the worst panel until the summed
/// error estimate meets `tol` or `max_subdivisions` bisections have been spent.
pub fn integrate<F>(
    mut f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
    max_subdivisions: usize,
) -> Result<Integral>
where
    F: FnMut(f64) -> Complex64,
{
    if a == b {
        return Ok(Integral::zero());
    }
    let mut panels = vec![kronrod(&mut f, a, b)?];
    let mut evaluations = 21;
    let mut subdivisions = 0;
    loop {
        let mut total = ComplexCompensatedSum::new();
        let mut err = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            total.add(p.value);
            err += p.error;
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        let value = total.value();
        if err <= tol.target(value.norm()) {
            return Ok(Integral {
                value,
                error: err,
                evaluations,
                subdivisions,
            });
        }
        let fail = |reason| Error::Convergence {
            reason,
            subdivisions,
            estimate: value,
        };
        if subdivisions >= max_subdivisions {
            return Err(fail(ConvergenceFailure::BudgetExhausted));
        }
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        let width = p.b - p.a;
        if width.abs() <= 4.0 * f64::EPSILON * p.a.abs().max(p.b.abs())
            || width.abs() < 1e3 * f64::MIN_POSITIVE
            || mid <= p.a.min(p.b)
            || mid >= p.a.max(p.b)
        {
            return Err(fail(ConvergenceFailure::IntervalCollapse));
        }
        let left = kronrod(&mut f, p.a, mid).map_err(|_| fail(ConvergenceFailure::NonFinite))?;
        let right = kronrod(&mut f, mid, p.b).map_err(|_| fail(ConvergenceFailure::NonFinite))?;
        evaluations += 42;
        subdivisions += 1;
        panels.push(left);
        panels.push(right);
    }
}

/// Iterated averaging of partial sums: the estimate after `n` terms is the
/// `n-1`-fold average of neighbouring partial sums, i.e. the binomially
/// weighted mean `Σ C(n-1,k) S_k / 2^{n-1}`. Suited to alternating series
/// whose terms vary smoothly in magnitude.
#[derive(Debug, Clone, Default)]
pub struct IteratedAverage {
    partial: Vec<Complex64>,
    running: ComplexCompensatedSum,
}

impl IteratedAverage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, term: Complex64) {
        self.running.add(term);
        self.partial.push(self.running.value());
    }

    pub fn len(&self) -> usize {
        self.partial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partial.is_empty()
    }

    pub fn estimate(&self) -> Complex64 {
        let mut row = self.partial.clone();
        while row.len() > 1 {
            for i in 0..row.len() - 1 {
                row[i] = (row[i] + row[i + 1]) * 0.5;
            }
            row.pop();
        }
        row.first().copied().unwrap_or_default()
    }
}
