use std::cmp::Ordering;

use super::{radial::verify_identity, QuadratureConfig, VerificationReport};
use crate::kernel::{is_in_strip, EvaluationPoint, KernelSpec};
use crate::par;
use crate::special_fn::ComplexScalar;

#[derive(Debug, Clone, PartialEq)]
pub enum SweepOutcome {
    Verified(VerificationReport),
    /// Outside the convergence strip; the reason names the strip.
    Skipped(String),
    /// In the strip but evaluation failed (pole, invalid input, ...).
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub d: usize,
    pub m: u32,
    pub alpha: ComplexScalar,
    pub outcome: SweepOutcome,
}

impl SweepEntry {
    pub fn is_converged(&self) -> bool {
        matches!(&self.outcome, SweepOutcome::Verified(r) if r.converged)
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.outcome, SweepOutcome::Skipped(_))
    }
}

fn key_order(a: &SweepEntry, b: &SweepEntry) -> Ordering {
    a.d.cmp(&b.d)
        .then(a.m.cmp(&b.m))
        .then(a.alpha.re.total_cmp(&b.alpha.re))
        .then(a.alpha.im.total_cmp(&b.alpha.im))
}

/// Verifies the identity at `x = e₁` over the grid `d × m × α`.
///
/// Out-of-strip combinations are reported as skipped and failures are
/// recorded per entry. Entries are evaluated in parallel (when enabled) and
/// returned ordered by `(d, m, Re α, Im α)`.
pub fn sweep(
    d_list: &[usize],
    m_list: &[u32],
    alpha_grid: &[ComplexScalar],
    config: &QuadratureConfig,
) -> Vec<SweepEntry> {
    let mut keys = Vec::with_capacity(d_list.len() * m_list.len() * alpha_grid.len());
    for &d in d_list {
        for &m in m_list {
            for &alpha in alpha_grid {
                keys.push((d, m, alpha));
            }
        }
    }
    let mut entries = par::map_slice(&keys, |&(d, m, alpha)| {
        let outcome = match KernelSpec::new(d, m, alpha) {
            Err(e) => SweepOutcome::Failed(e.to_string()),
            Ok(spec) if !is_in_strip(&spec) => SweepOutcome::Skipped(format!(
                "Re(alpha) = {} outside strip {} for m = {m}",
                alpha.re,
                spec.strip()
            )),
            Ok(spec) => match verify_identity(&spec, &EvaluationPoint::unit(d), config) {
                Ok(report) => SweepOutcome::Verified(report),
                Err(e) => SweepOutcome::Failed(e.to_string()),
            },
        };
        SweepEntry {
            d,
            m,
            alpha,
            outcome,
        }
    });
    entries.sort_by(key_order);
    entries
}
