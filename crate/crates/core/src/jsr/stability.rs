use alloc::vec::Vec;

use super::words::{affordable_depth, necklace_cost, norm_cost, Candidate, NecklaceSearch, NormSearch};
use super::{exact_fast_path, upper_from, JsrReport, Method, DEFAULT_BUDGET, DEFAULT_DEPTH};
use crate::MatrixFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `𝝆 < 1`: every switched product tends to zero.
    Stable,
    /// Some periodic product grows.
    Unstable,
    /// `𝝆 = 1` within tolerance.
    Marginal,
    /// The bounds straddle 1.
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Unstable => "unstable",
            Verdict::Marginal => "marginal",
            Verdict::Undecided => "undecided",
        }
    }
}

/// What the verdict rests on.
#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// An exact route applied; `radii` are the member spectral radii.
    FastPath { method: Method, rho: f64, radii: Vec<f64> },
    /// Enumeration bounds at the depths the budget allowed.
    Bounds { lower: f64, upper: f64, witness: Vec<usize>, lower_depth: usize, upper_depth: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    pub reason: Evidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityOptions {
    pub max_depth: usize,
    pub budget: u64,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        Self { max_depth: DEFAULT_DEPTH, budget: DEFAULT_BUDGET }
    }
}

/// Absolute stability of the switched system `x_{n+1} = A_{σ(n)} x_n`.
///
/// With an exact route the verdict compares `𝝆` with 1 at `rtol`. Otherwise
/// enumeration bounds are computed as deep as the budget allows (never past
/// `max_depth`): `upper < 1` is stable, `lower > 1 + rtol` unstable,
/// `|lower − 1| <= rtol` marginal, and anything else undecided.
pub fn decide_stability(fam: &MatrixFamily, opts: &StabilityOptions) -> StabilityVerdict {
    if let Some(report) = exact_fast_path(fam) {
        return verdict_from_exact(fam, &report);
    }
    let max_depth = opts.max_depth.max(1);
    let k = fam.len();
    let lower_depth = affordable_depth(necklace_cost, k, max_depth, opts.budget);
    let upper_depth = affordable_depth(norm_cost, k, max_depth, opts.budget);
    let best = NecklaceSearch::new(fam, lower_depth).run().best;
    let upper = if upper_depth == 0 { f64::INFINITY } else { upper_from(NormSearch::new(fam, upper_depth).run()) };
    verdict_from_bounds(fam.tol().rtol, best, lower_depth, upper, upper_depth)
}

/// Verdict for an exact value: compares `𝝆` with 1 at `rtol`.
pub fn verdict_from_exact(fam: &MatrixFamily, report: &JsrReport) -> StabilityVerdict {
    let rtol = fam.tol().rtol;
    let rho = report.lower;
    let verdict = if rho < 1.0 - rtol {
        Verdict::Stable
    } else if rho > 1.0 + rtol {
        Verdict::Unstable
    } else {
        Verdict::Marginal
    };
    let radii = fam.members().iter().map(|m| m.spectral_radius()).collect();
    StabilityVerdict { verdict, reason: Evidence::FastPath { method: report.method, rho, radii } }
}

/// Verdict from enumeration bounds.
pub fn verdict_from_bounds(
    rtol: f64,
    best: Candidate,
    lower_depth: usize,
    upper: f64,
    upper_depth: usize,
) -> StabilityVerdict {
    let lower = best.value();
    let verdict = if upper < 1.0 {
        Verdict::Stable
    } else if lower > 1.0 + rtol {
        Verdict::Unstable
    } else if !best.word.is_empty() && (lower - 1.0).abs() <= rtol {
        Verdict::Marginal
    } else {
        Verdict::Undecided
    };
    StabilityVerdict {
        verdict,
        reason: Evidence::Bounds { lower, upper, witness: best.word, lower_depth, upper_depth },
    }
}
