use alloc::vec;

use super::{JsrReport, Method};
use crate::family::detect_pattern;
use crate::symmetrizer::{pattern_in_eigenbasis, spd_feasibility};
use crate::MatrixFamily;

/// Exact value when a structural criterion guarantees `𝝆 = max_k ρ(A_k)`.
///
/// Routes, in order: the proportional pattern with `bc >= 0`; an all-symmetric
/// family; a positive-definite simultaneous symmetrizer; a diagonal plus an
/// antidiagonal pair; and, for pairs, the pattern after diagonalizing either
/// member. Returns `None` when nothing applies.
pub fn exact_fast_path(fam: &MatrixFamily) -> Option<JsrReport> {
    let tol = fam.tol();
    let pattern = detect_pattern(fam);
    if pattern.holds && pattern.sign_class.is_nonnegative() {
        return Some(exact(fam, Method::ExactPattern));
    }
    if fam.members().iter().all(|m| m.is_symmetric(tol)) {
        return Some(exact(fam, Method::ExactSymmetric));
    }
    if spd_feasibility(fam).feasible() {
        return Some(exact(fam, Method::ExactSpd));
    }
    if let [x, y] = fam.members() {
        if (x.is_diagonal(tol) && y.is_antidiagonal(tol)) || (x.is_antidiagonal(tol) && y.is_diagonal(tol)) {
            return Some(exact(fam, Method::ExactDiagAntidiag));
        }
    }
    canonical_route(fam)
}

/// Pairs only: conjugate into the eigenbasis of a member with distinct real
/// eigenvalues and retry the pattern criterion there.
pub fn canonical_route(fam: &MatrixFamily) -> Option<JsrReport> {
    if fam.len() != 2 {
        return None;
    }
    (0..2)
        .filter_map(|pivot| pattern_in_eigenbasis(fam, pivot).ok())
        .any(|p| p.holds && p.sign_class.is_nonnegative())
        .then(|| exact(fam, Method::ExactCanonical))
}

fn exact(fam: &MatrixFamily, method: Method) -> JsrReport {
    let (k, rho) = fam.max_member_radius();
    JsrReport { lower: rho, upper: rho, witness: vec![k], depth: 1, method, exact: true }
}
