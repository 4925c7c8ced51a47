//! Thread-pool driver for the word enumerations.
//!
//! The tree is cut at a shallow level and each subtree below the cut is
//! explored on its own task. Merging is associative and commutative with a
//! total tie-break, so results do not depend on the number of threads.

use jsr2_core::jsr::words::{
    affordable_depth, necklace_cost, norm_cost, Candidate, LyndonOutcome, NecklaceSearch, NormOutcome, NormSearch,
};
use jsr2_core::jsr::{lower_report, upper_from, verdict_from_bounds, verdict_from_exact};
use jsr2_core::{exact_fast_path, BudgetExceeded, Error, JsrReport, MatrixFamily, StabilityOptions, StabilityVerdict};
use rayon::prelude::*;

/// Frontier size to aim for when cutting the tree.
const TARGET_TASKS: usize = 256;

fn split_depth(k: usize, depth: usize) -> usize {
    let mut s = 1;
    let mut nodes = k;
    while s < depth && nodes < TARGET_TASKS {
        nodes = nodes.saturating_mul(k);
        s += 1;
    }
    s.min(depth.saturating_sub(1)).max(1)
}

pub fn lyndon_search(fam: &MatrixFamily, depth: usize) -> LyndonOutcome {
    let search = NecklaceSearch::new(fam, depth);
    if depth <= 1 {
        return search.run();
    }
    let (head, frontier) = search.split(split_depth(fam.len(), depth));
    frontier.par_iter().map(|p| search.explore(p)).reduce(LyndonOutcome::empty, LyndonOutcome::merge).merge(head)
}

pub fn norm_search(fam: &MatrixFamily, depth: usize) -> NormOutcome {
    let search = NormSearch::new(fam, depth);
    if depth <= 1 {
        return search.run();
    }
    let (head, frontier) = search.split(split_depth(fam.len(), depth));
    frontier.par_iter().map(|p| search.explore(p)).reduce(|| NormOutcome::empty(depth), NormOutcome::merge).merge(head)
}

fn best_at(fam: &MatrixFamily, depth: usize) -> Candidate {
    if depth == 0 {
        Candidate::none()
    } else {
        lyndon_search(fam, depth).best
    }
}

fn upper_at(fam: &MatrixFamily, depth: usize) -> f64 {
    if depth == 0 {
        f64::INFINITY
    } else {
        upper_from(norm_search(fam, depth))
    }
}

/// Parallel counterpart of [`jsr2_core::jsr::lower_bound_with_budget`].
pub fn lower_bound(fam: &MatrixFamily, max_depth: usize, budget: u64) -> Result<JsrReport, Error> {
    if max_depth == 0 {
        return Err(Error::InvalidDepth);
    }
    let depth = affordable_depth(necklace_cost, fam.len(), max_depth, budget);
    let best = best_at(fam, depth);
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

/// Parallel counterpart of [`jsr2_core::jsr::upper_bound_with_budget`].
pub fn upper_bound(fam: &MatrixFamily, depth: usize, budget: u64) -> Result<f64, Error> {
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    let done = affordable_depth(norm_cost, fam.len(), depth, budget);
    let bound = upper_at(fam, done);
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

/// The exact value when a fast path applies, otherwise both enumeration
/// bounds.
pub fn jsr(fam: &MatrixFamily, depth: usize, budget: u64) -> Result<JsrReport, Error> {
    if let Some(report) = exact_fast_path(fam) {
        return Ok(report);
    }
    let mut report = lower_bound(fam, depth, budget)?;
    report.upper = upper_bound(fam, depth, budget)?;
    Ok(report)
}

/// Parallel counterpart of [`jsr2_core::decide_stability`].
pub fn decide_stability(fam: &MatrixFamily, opts: &StabilityOptions) -> StabilityVerdict {
    if let Some(report) = exact_fast_path(fam) {
        return verdict_from_exact(fam, &report);
    }
    let max_depth = opts.max_depth.max(1);
    let lower_depth = affordable_depth(necklace_cost, fam.len(), max_depth, opts.budget);
    let upper_depth = affordable_depth(norm_cost, fam.len(), max_depth, opts.budget);
    let best = best_at(fam, lower_depth);
    let upper = upper_at(fam, upper_depth);
    verdict_from_bounds(fam.tol().rtol, best, lower_depth, upper, upper_depth)
}
