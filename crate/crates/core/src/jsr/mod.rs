//! Generalized (joint) spectral radius of a family,
//! `sup_n max_{|w| = n} ρ(M_w)^{1/n}` with `M_w = A_{w_1} ⋯ A_{w_n}`.

mod fast_path;
mod flags;
mod simulate;
mod stability;
pub mod words;

use alloc::vec::Vec;

pub use fast_path::{canonical_route, exact_fast_path};
pub use flags::{info_flags, InfoFlags};
pub use simulate::{simulate_norm_decay, NormSample, SwitchingSequence};
pub use stability::{
    decide_stability, verdict_from_bounds, verdict_from_exact, Evidence, StabilityOptions, StabilityVerdict, Verdict,
};

use crate::{BudgetExceeded, Error, MatrixFamily, Result};
use words::{affordable_depth, necklace_cost, norm_cost, Candidate, NecklaceSearch, NormOutcome, NormSearch};

pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// How a [`JsrReport`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Proportional off-diagonals with `bc >= 0`.
    ExactPattern,
    /// All members symmetric.
    ExactSymmetric,
    /// Simultaneously symmetrizable by a positive-definite similarity.
    ExactSpd,
    /// A diagonal and an antidiagonal matrix.
    ExactDiagAntidiag,
    /// A pair that falls under the pattern after diagonalizing one member.
    ExactCanonical,
    Enumeration,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ExactPattern => "exact-pattern",
            Method::ExactSymmetric => "exact-symmetric",
            Method::ExactSpd => "exact-spd",
            Method::ExactDiagAntidiag => "exact-diag-antidiag",
            Method::ExactCanonical => "exact-canonical",
            Method::Enumeration => "enumeration",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JsrReport {
    pub lower: f64,
    /// `+inf` when no upper bound was computed.
    pub upper: f64,
    pub witness: Vec<usize>,
    pub depth: usize,
    pub method: Method,
    pub exact: bool,
}

pub(crate) fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        Err(Error::InvalidDepth)
    } else {
        Ok(())
    }
}

/// Best `ρ(M_w)^{1/|w|}` over all words of length `1..=max_depth`, with the
/// default product budget.
pub fn lower_bound(fam: &MatrixFamily, max_depth: usize) -> Result<JsrReport> {
    lower_bound_with_budget(fam, max_depth, DEFAULT_BUDGET)
}

/// On [`Error::BudgetExceeded`] the error carries the result for the deepest
/// level that fit.
pub fn lower_bound_with_budget(fam: &MatrixFamily, max_depth: usize, budget: u64) -> Result<JsrReport> {
    check_depth(max_depth)?;
    let depth = affordable_depth(necklace_cost, fam.len(), max_depth, budget);
    let best = NecklaceSearch::new(fam, depth).run().best;
    if depth < max_depth {
        return Err(Error::BudgetExceeded(BudgetExceeded {
            requested_depth: max_depth,
            completed_depth: depth,
            budget,
            best_so_far: best.value(),
            witness: best.word,
        }));
    }
    Ok(lower_report(best, depth))
}

pub fn lower_report(best: Candidate, depth: usize) -> JsrReport {
    JsrReport {
        lower: best.value(),
        upper: f64::INFINITY,
        witness: best.word,
        depth,
        method: Method::Enumeration,
        exact: false,
    }
}

/// `min_{n <= depth} max_{|w| = n} ‖M_w‖₂^{1/n}`, with the default budget.
pub fn upper_bound(fam: &MatrixFamily, depth: usize) -> Result<f64> {
    upper_bound_with_budget(fam, depth, DEFAULT_BUDGET)
}

pub fn upper_bound_with_budget(fam: &MatrixFamily, depth: usize, budget: u64) -> Result<f64> {
    check_depth(depth)?;
    let done = affordable_depth(norm_cost, fam.len(), depth, budget);
    let bound = upper_from(NormSearch::new(fam, done).run());
    if done < depth {
        return Err(Error::BudgetExceeded(BudgetExceeded {
            requested_depth: depth,
            completed_depth: done,
            budget,
            best_so_far: bound,
            witness: Vec::new(),
        }));
    }
    Ok(bound)
}

pub fn upper_from(outcome: NormOutcome) -> f64 {
    outcome.bound().0
}

/// Both enumeration bounds in one report. The lower bound's depth is reported.
pub fn enumerate_bounds(fam: &MatrixFamily, depth: usize, budget: u64) -> Result<JsrReport> {
    let mut report = lower_bound_with_budget(fam, depth, budget)?;
    report.upper = upper_bound_with_budget(fam, depth, budget)?;
    Ok(report)
}
