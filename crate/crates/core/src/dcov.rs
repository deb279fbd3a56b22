//! Sample distance covariance and correlation with the distance raised to a
//! general exponent `α > 0`.
//!
//! For `α ∈ (0, 2)` the population statistic vanishes exactly under
//! independence. Exponents `α >= 2` are computed mechanically and flagged:
//! whether the statistic still characterises independence there is an open
//! question, and with double centering `v2` may then be negative.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::par;
use crate::rng;

/// Relative floor on `dvar` (scaled by the mean squared distance) below which
/// a sample counts as constant.
pub const DVAR_FLOOR: f64 = 1e-14;

/// Warning attached to results with `α >= 2`.
pub const EXTENDED_ALPHA_WARNING: &str =
    "alpha >= 2: independence characterisation is not established for this exponent range";

/// `n` observations of a `p`-dimensional variable, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    n: usize,
    p: usize,
    values: Vec<f64>,
}

impl SampleMatrix {
    pub fn new(n: usize, p: usize, values: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Size {
                required: 2,
                actual: n,
            });
        }
        if p == 0 || values.len() != n * p {
            return Err(Error::Shape(format!(
                "{} values do not form a {n} x {p} matrix",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite entry at row {}, column {}",
                i / p + 1,
                i % p + 1
            )));
        }
        Ok(SampleMatrix { n, p, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != p) {
            return Err(Error::Shape(format!(
                "row {} has {} columns, expected {p}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Self::new(rows.len(), p, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.p
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.p..(i + 1) * self.p]
    }
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("matrix is not square".into()));
        }
        Ok(SquareMatrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.data[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> f64 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    fn mean_square(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>() / self.data.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centering {
    /// Row, column and grand means removed (V-statistic).
    Double,
    /// U-centering, giving the unbiased estimator (needs `n >= 4`).
    Unbiased,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DcovOptions {
    pub alpha: f64,
    pub centering: Centering,
    pub permutations: usize,
    pub rng_seed: u64,
}

impl Default for DcovOptions {
    fn default() -> Self {
        DcovOptions {
            alpha: 1.0,
            centering: Centering::Double,
            permutations: 0,
            rng_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DcovResult {
    /// Squared distance covariance.
    pub v2: f64,
    /// `v2 / sqrt(dvar_x dvar_y)`, or 0 when either variance is below the floor.
    pub dcor: f64,
    pub dvar_x: f64,
    pub dvar_y: f64,
    pub p_value: Option<f64>,
    /// Set when `alpha >= 2`.
    pub extended_alpha: bool,
}

impl DcovResult {
    pub fn warning(&self) -> Option<&'static str> {
        self.extended_alpha.then_some(EXTENDED_ALPHA_WARNING)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "alpha must be positive, got {alpha}"
        )))
    }
}

/// `D_ij = ‖X_i - X_j‖^α`.
pub fn alpha_distance_matrix(x: &SampleMatrix, alpha: f64) -> Result<SquareMatrix> {
    check_alpha(alpha)?;
    let n = x.rows();
    let mut d = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = x
                .row(i)
                .iter()
                .zip(x.row(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let v = if dist == 0.0 { 0.0 } else { dist.powf(alpha) };
            d.set(i, j, v);
            d.set(j, i, v);
        }
    }
    Ok(d)
}

/// `A_ij = D_ij - D̄_i. - D̄_.j + D̄_..`.
pub fn double_center(d: &SquareMatrix) -> SquareMatrix {
    let n = d.size();
    let nf = n as f64;
    let rows: Vec<f64> = (0..n).map(|i| d.row_sum(i) / nf).collect();
    let cols: Vec<f64> = (0..n).map(|j| d.col_sum(j) / nf).collect();
    let grand = rows.iter().sum::<f64>() / nf;
    let mut a = SquareMatrix::zeros(n);
    for (i, &ri) in rows.iter().enumerate() {
        for (j, &cj) in cols.iter().enumerate() {
            a.set(i, j, d.get(i, j) - ri - cj + grand);
        }
    }
    a
}

/// U-centering: off-diagonal
/// `D_ij - row_i/(n-2) - col_j/(n-2) + total/((n-1)(n-2))`, zero diagonal.
pub fn u_center(d: &SquareMatrix) -> Result<SquareMatrix> {
    let n = d.size();
    if n < 4 {
        return Err(Error::Size {
            required: 4,
            actual: n,
        });
    }
    let nf = n as f64;
    let rows: Vec<f64> = (0..n).map(|i| d.row_sum(i)).collect();
    let cols: Vec<f64> = (0..n).map(|j| d.col_sum(j)).collect();
    let total: f64 = rows.iter().sum();
    let mut a = SquareMatrix::zeros(n);
    for (i, &ri) in rows.iter().enumerate() {
        for (j, &cj) in cols.iter().enumerate() {
            if i != j {
                let v = d.get(i, j) - ri / (nf - 2.0) - cj / (nf - 2.0)
                    + total / ((nf - 1.0) * (nf - 2.0));
                a.set(i, j, v);
            }
        }
    }
    Ok(a)
}

struct Centered {
    matrix: SquareMatrix,
    floor: f64,
}

fn centered(x: &SampleMatrix, opts: &DcovOptions) -> Result<Centered> {
    let d = alpha_distance_matrix(x, opts.alpha)?;
    let floor = DVAR_FLOOR * d.mean_square();
    let matrix = match opts.centering {
        Centering::Double => double_center(&d),
        Centering::Unbiased => u_center(&d)?,
    };
    Ok(Centered { matrix, floor })
}

/// `Σ_ij A_ij B_{π(i)π(j)}` scaled for the chosen centering.
fn inner(a: &SquareMatrix, b: &SquareMatrix, perm: Option<&[usize]>, centering: Centering) -> f64 {
    let n = a.size();
    let mut s = 0.0;
    for i in 0..n {
        let pi = perm.map_or(i, |p| p[i]);
        for j in 0..n {
            let pj = perm.map_or(j, |p| p[j]);
            s += a.get(i, j) * b.get(pi, pj);
        }
    }
    let nf = n as f64;
    match centering {
        Centering::Double => s / (nf * nf),
        Centering::Unbiased => s / (nf * (nf - 3.0)),
    }
}

fn check_pair(x: &SampleMatrix, y: &SampleMatrix, opts: &DcovOptions) -> Result<()> {
    check_alpha(opts.alpha)?;
    if x.rows() != y.rows() {
        return Err(Error::Shape(format!(
            "row count mismatch: {} vs {}",
            x.rows(),
            y.rows()
        )));
    }
    if opts.centering == Centering::Unbiased && x.rows() < 4 {
        return Err(Error::Size {
            required: 4,
            actual: x.rows(),
        });
    }
    Ok(())
}

/// Distance covariance, variances and correlation; runs the permutation test
/// as well when `opts.permutations >= 1`.
pub fn dcov_stat(x: &SampleMatrix, y: &SampleMatrix, opts: &DcovOptions) -> Result<DcovResult> {
    check_pair(x, y, opts)?;
    let a = centered(x, opts)?;
    let b = centered(y, opts)?;
    let v2 = inner(&a.matrix, &b.matrix, None, opts.centering);
    let dvar_x = inner(&a.matrix, &a.matrix, None, opts.centering);
    let dvar_y = inner(&b.matrix, &b.matrix, None, opts.centering);
    let dcor = if dvar_x > a.floor && dvar_y > b.floor {
        v2 / (dvar_x * dvar_y).sqrt()
    } else {
        0.0
    };
    let p_value =
        (opts.permutations >= 1).then(|| permutation_p_value(&a.matrix, &b.matrix, v2, opts));
    Ok(DcovResult {
        v2,
        dcor,
        dvar_x,
        dvar_y,
        p_value,
        extended_alpha: opts.alpha >= 2.0,
    })
}

fn permutation_p_value(
    a: &SquareMatrix,
    b: &SquareMatrix,
    observed: f64,
    opts: &DcovOptions,
) -> f64 {
    let n = a.size();
    let hits = par::map_range(opts.permutations, |k| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng::stream(opts.rng_seed, k as u64));
        inner(a, b, Some(&perm), opts.centering) >= observed
    })
    .into_iter()
    .filter(|&h| h)
    .count();
    (1 + hits) as f64 / (opts.permutations + 1) as f64
}

/// Permutation p-value `(1 + #{b : V²(X, Y_πb) >= V²(X, Y)}) / (B + 1)`.
pub fn permutation_test(x: &SampleMatrix, y: &SampleMatrix, opts: &DcovOptions) -> Result<f64> {
    if opts.permutations == 0 {
        return Err(Error::invalid(
            "permutation test needs at least one permutation",
        ));
    }
    check_pair(x, y, opts)?;
    let a = centered(x, opts)?;
    let b = centered(y, opts)?;
    let observed = inner(&a.matrix, &b.matrix, None, opts.centering);
    Ok(permutation_p_value(&a.matrix, &b.matrix, observed, opts))
}
