//! Simultaneous symmetrization by similarity.
//!
//! A nonsingular `Q` makes every `Q·A_k·Q⁻¹` symmetric exactly when
//! `S = QᵀQ` is a positive-definite solution of `S·A_k = A_kᵀ·S` for all `k`.
//! Writing `S = [[s1, s2], [s2, s3]]`, the matrix `S·A − Aᵀ·S` is
//! antisymmetric and vanishes iff
//!
//! ```text
//! b·s1 + (d − a)·s2 − c·s3 = 0        for A = [[a, b], [c, d]]
//! ```
//!
//! so each member contributes one linear equation on three unknowns.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::family::{detect_pattern, PatternReport, SignClass};
use crate::mat2::EigenKind;
use crate::{Error, Mat2, MatrixFamily, Result};

/// Tunables for the positive-definite feasibility decision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpdOptions {
    /// A unit-Frobenius `S` counts as positive definite when `λ_min(S) > pd_tol`.
    pub pd_tol: f64,
    /// Angular samples on the unit circle of a two-dimensional solution space.
    pub grid: usize,
}

impl Default for SpdOptions {
    fn default() -> Self {
        Self { pd_tol: 1e-8, grid: 3600 }
    }
}

/// Symmetric solutions of `S·A_k = A_kᵀ·S`, in `(s1, s2, s3)` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSubspace {
    /// Row-normalized constraint rows, one per non-scalar member.
    pub rows: Vec<[f64; 3]>,
    /// Singular values of the stacked rows, descending.
    pub singular_values: [f64; 3],
    /// Orthonormal basis of the numerical nullspace.
    pub basis: Vec<[f64; 3]>,
}

impl ConstraintSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Distance from the unit vector along `s` to the subspace.
    pub fn distance(&self, s: [f64; 3]) -> f64 {
        let n = norm3(s);
        if n == 0.0 {
            return 0.0;
        }
        let mut r = [s[0] / n, s[1] / n, s[2] / n];
        for v in &self.basis {
            let p = dot3(r, *v);
            for i in 0..3 {
                r[i] -= p * v[i];
            }
        }
        norm3(r)
    }
}

/// Why no positive-definite symmetrizer exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfeasibilityReason {
    /// Only `S = 0` satisfies the constraints.
    TrivialSubspace,
    /// Every nonzero solution is indefinite (or negative definite up to sign).
    NoDefiniteElement,
    /// The best solution is only positive semidefinite, within `pd_tol`.
    Marginal,
}

impl InfeasibilityReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            InfeasibilityReason::TrivialSubspace => "trivial-subspace",
            InfeasibilityReason::NoDefiniteElement => "no-definite-element",
            InfeasibilityReason::Marginal => "marginal",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub reason: InfeasibilityReason,
    /// Largest `λ_min` over unit-Frobenius elements of the subspace; `None`
    /// when the subspace is trivial.
    pub best_min_eigenvalue: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Feasible {
        /// Symmetric positive square root of `s`.
        q: Mat2,
        /// Positive definite, unit Frobenius norm (or the identity).
        s: Mat2,
        /// `Q·A_k·Q⁻¹`, all symmetric.
        conjugated: Vec<Mat2>,
    },
    Infeasible(Certificate),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrizationResult {
    pub subspace: ConstraintSubspace,
    pub outcome: Outcome,
}

impl SymmetrizationResult {
    pub fn feasible(&self) -> bool {
        matches!(self.outcome, Outcome::Feasible { .. })
    }

    pub fn q(&self) -> Option<&Mat2> {
        match &self.outcome {
            Outcome::Feasible { q, .. } => Some(q),
            Outcome::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            Outcome::Infeasible(c) => Some(c),
            Outcome::Feasible { .. } => None,
        }
    }
}

/// Diagonal `Q` symmetrizing every member of a pattern family with `bc > 0`.
///
/// `Q = diag(√|c|, √|b|)`, so `det Q = √(bc)` and each member maps to
/// `[[a_k, ±r_k√(bc)], [±r_k√(bc), d_k]]`.
pub fn diagonal_symmetrizer(pattern: &PatternReport) -> Result<Mat2> {
    if !pattern.holds {
        return Err(Error::PatternViolation("off-diagonals are not proportional"));
    }
    if pattern.sign_class != SignClass::Positive {
        return Err(Error::PatternViolation("base product bc is not positive"));
    }
    Ok(Mat2::diag(libm::sqrt(pattern.base_c.abs()), libm::sqrt(pattern.base_b.abs())))
}

/// The constraint row `[b, d − a, −c]` of one member.
pub fn constraint_row(m: &Mat2) -> [f64; 3] {
    [m.b, m.d - m.a, -m.c]
}

/// Assemble and solve the linear constraints for `fam`.
pub fn constraint_subspace(fam: &MatrixFamily) -> ConstraintSubspace {
    let tol = fam.tol();
    let rows: Vec<[f64; 3]> = fam
        .members()
        .iter()
        .filter_map(|m| {
            let r = constraint_row(m);
            let n = norm3(r);
            // Scalar multiples of the identity impose nothing.
            (n > tol.atol + tol.rtol * m.frobenius()).then(|| [r[0] / n, r[1] / n, r[2] / n])
        })
        .collect();
    let (singular_values, v) = jacobi_svd(&rows);
    let smax = singular_values[0];
    let basis = (0..3)
        .filter(|&i| smax == 0.0 || singular_values[i] <= tol.rtol * smax)
        .map(|i| [v[0][i], v[1][i], v[2][i]])
        .collect();
    ConstraintSubspace { rows, singular_values, basis }
}

/// Decide whether the family can be simultaneously symmetrized by similarity.
pub fn spd_feasibility(fam: &MatrixFamily) -> SymmetrizationResult {
    spd_feasibility_with(fam, &SpdOptions::default())
}

pub fn spd_feasibility_with(fam: &MatrixFamily, opts: &SpdOptions) -> SymmetrizationResult {
    let subspace = constraint_subspace(fam);
    let best = match subspace.basis.as_slice() {
        [] => {
            return SymmetrizationResult {
                subspace,
                outcome: Outcome::Infeasible(Certificate {
                    reason: InfeasibilityReason::TrivialSubspace,
                    best_min_eigenvalue: None,
                }),
            }
        }
        [v] => {
            let s = unit_frobenius(sym_from(*v));
            let (sp, sn) = (min_eig(&s), min_eig(&-s));
            if sp >= sn {
                (s, sp)
            } else {
                (-s, sn)
            }
        }
        [u, w] => best_on_circle(sym_from(*u), sym_from(*w), opts.grid),
        _ => (Mat2::IDENTITY, 1.0),
    };

    let (s, lmin) = best;
    let outcome = if lmin > opts.pd_tol {
        let q = spd_sqrt(&s);
        // S is well inside the cone, so Q is comfortably invertible.
        let qi = q.inverse(&crate::Tol::new(0.0, 0.0)).expect("positive definite root");
        let conjugated = fam.members().iter().map(|m| q * *m * qi).collect();
        Outcome::Feasible { q, s, conjugated }
    } else {
        let reason = if lmin >= 0.0 { InfeasibilityReason::Marginal } else { InfeasibilityReason::NoDefiniteElement };
        Outcome::Infeasible(Certificate { reason, best_min_eigenvalue: Some(lmin) })
    };
    SymmetrizationResult { subspace, outcome }
}

/// Conjugate the family into the eigenbasis of one member.
///
/// Returns `({P⁻¹·A_k·P}, P)` where `P`'s columns are the pivot's unit
/// eigenvectors (larger eigenvalue first), so the pivot becomes diagonal.
pub fn canonicalize_via_eigenbasis(fam: &MatrixFamily, pivot: usize) -> Result<(MatrixFamily, Mat2)> {
    let tol = fam.tol();
    let e = fam.get(pivot)?.eigen(tol);
    let (v1, v2) = match (e.kind, e.vectors) {
        (EigenKind::RealDistinct, Some(v)) => v,
        _ => return Err(Error::NotDiagonalizable { member: pivot }),
    };
    let p = Mat2::from_cols(v1, v2);
    let pi = p.inverse(tol)?;
    let transformed = fam.map(|m| pi * *m * p)?;
    Ok((transformed, p))
}

/// Pattern detection after canonicalizing around `pivot`.
pub fn pattern_in_eigenbasis(fam: &MatrixFamily, pivot: usize) -> Result<PatternReport> {
    let (t, _) = canonicalize_via_eigenbasis(fam, pivot)?;
    Ok(detect_pattern(&t))
}

fn sym_from(v: [f64; 3]) -> Mat2 {
    Mat2::new(v[0], v[1], v[1], v[2])
}

fn unit_frobenius(s: Mat2) -> Mat2 {
    let f = s.frobenius();
    if f == 0.0 {
        s
    } else {
        s.scale(1.0 / f)
    }
}

/// Smallest eigenvalue of a symmetric matrix.
pub(crate) fn min_eig(s: &Mat2) -> f64 {
    let mid = 0.5 * (s.a + s.d);
    let rad = libm::hypot(0.5 * (s.a - s.d), s.b);
    mid - rad
}

/// Symmetric positive square root of a positive-definite `S`.
pub fn spd_sqrt(s: &Mat2) -> Mat2 {
    let rd = libm::sqrt(s.det());
    let t = libm::sqrt(s.trace() + 2.0 * rd);
    (*s + Mat2::diag(rd, rd)).scale(1.0 / t)
}

/// Maximize `λ_min(S(θ)) / ‖S(θ)‖_F` for `S(θ) = cos θ·U + sin θ·W` over a
/// uniform angular grid, then polish the best cell by golden-section search.
/// Ties on the grid resolve to the smaller angle.
fn best_on_circle(u: Mat2, w: Mat2, grid: usize) -> (Mat2, f64) {
    let grid = grid.max(8);
    let at = |theta: f64| unit_frobenius(u.scale(libm::cos(theta)) + w.scale(libm::sin(theta)));
    let f = |theta: f64| min_eig(&at(theta));
    let step = 2.0 * PI / grid as f64;

    let mut best = (0.0, f(0.0));
    for i in 1..grid {
        let theta = i as f64 * step;
        let v = f(theta);
        if v > best.1 {
            best = (theta, v);
        }
    }

    let (mut lo, mut hi) = (best.0 - step, best.0 + step);
    let g = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-14 {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    if fm > best.1 {
        best = (mid, fm);
    }
    (at(best.0), best.1)
}

fn dot3(x: [f64; 3], y: [f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

fn norm3(x: [f64; 3]) -> f64 {
    libm::hypot(libm::hypot(x[0], x[1]), x[2])
}

/// One-sided Jacobi SVD of an `m × 3` matrix given by rows. Returns the
/// singular values in descending order and `V` (columns = right singular
/// vectors, in the same order). Small singular values come out with absolute
/// accuracy relative to the largest one, which the nullspace threshold needs.
fn jacobi_svd(rows: &[[f64; 3]]) -> ([f64; 3], [[f64; 3]; 3]) {
    let mut cols: [Vec<f64>; 3] =
        [rows.iter().map(|r| r[0]).collect(), rows.iter().map(|r| r[1]).collect(), rows.iter().map(|r| r[2]).collect()];
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();

    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..2 {
            for j in i + 1..3 {
                let alpha = dot(&cols[i], &cols[i]);
                let beta = dot(&cols[j], &cols[j]);
                let gamma = dot(&cols[i], &cols[j]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta >= 0.0 { 1.0 } else { -1.0 } / (zeta.abs() + libm::hypot(1.0, zeta));
                let cs = 1.0 / libm::hypot(1.0, t);
                let sn = cs * t;
                for k in 0..cols[i].len() {
                    let (x, y) = (cols[i][k], cols[j][k]);
                    cols[i][k] = cs * x - sn * y;
                    cols[j][k] = sn * x + cs * y;
                }
                for row in v.iter_mut() {
                    let (x, y) = (row[i], row[j]);
                    row[i] = cs * x - sn * y;
                    row[j] = sn * x + cs * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma = [0, 1, 2].map(|i| libm::sqrt(dot(&cols[i], &cols[i])));
    let mut order = [0usize, 1, 2];
    order.sort_by(|&x, &y| sigma[y].total_cmp(&sigma[x]));
    let sorted = order.map(|i| sigma[i]);
    let vs = [0, 1, 2].map(|r| order.map(|i| v[r][i]));
    (sorted, vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tol;
    use alloc::vec;
    use proptest::prelude::*;

    fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    fn fam(members: Vec<Mat2>) -> MatrixFamily {
        MatrixFamily::with_default_tol(members).unwrap()
    }

    fn skew_pair() -> MatrixFamily {
        fam(vec![Mat2::new(-3.0, 3.5, -4.0, 4.5), Mat2::diag(0.5, 1.0)])
    }

    fn asym(m: &Mat2) -> f64 {
        (m.b - m.c).abs() / (1.0 + m.frobenius())
    }

    #[test]
    fn diagonal_symmetrizer_fixtures() {
        let tol = Tol::default();
        let f10 = fam(vec![Mat2::new(sqrt(3.0), 1.0, 2.0, 1.3), Mat2::new(sqrt(2.0), 10.0, 20.0, sqrt(7.0))]);
        let p = detect_pattern(&f10);
        let q = diagonal_symmetrizer(&p).unwrap();
        // Base (10, 20) is parallel to (1, 2): Q ∥ diag(√2, 1).
        assert!((q.a / q.d - sqrt(2.0)).abs() < 1e-15);
        assert_eq!((q.b, q.c), (0.0, 0.0));
        let a0 = crate::conjugate(&q, &f10.members()[0], &tol).unwrap();
        assert!((a0.a - sqrt(3.0)).abs() < 1e-15 && (a0.d - 1.3).abs() < 1e-15);
        assert!((a0.b - sqrt(2.0)).abs() < 1e-14 && (a0.c - sqrt(2.0)).abs() < 1e-14);

        let p = detect_pattern(&fam(vec![Mat2::new(1.0, 5.0, 5.0, 2.0)]));
        let q = diagonal_symmetrizer(&p).unwrap();
        assert_eq!(q.a, q.d);

        let m = Mat2::new(0.0, 4.0, 1.0, 0.0);
        let q = diagonal_symmetrizer(&detect_pattern(&fam(vec![m]))).unwrap();
        assert!((q.d / q.a - 2.0).abs() < 1e-15);
        let s = crate::conjugate(&q, &m, &tol).unwrap();
        assert_eq!(s, Mat2::new(0.0, 2.0, 2.0, 0.0));
        assert_eq!(s.spectral_radius(), 2.0);
    }

    #[test]
    fn diagonal_symmetrizer_preconditions() {
        let neg = detect_pattern(&skew_pair());
        assert!(matches!(diagonal_symmetrizer(&neg), Err(Error::PatternViolation(_))));
        let broken = detect_pattern(&fam(vec![Mat2::new(0.0, 1.0, 1.0, 0.0), Mat2::new(0.0, 1.0, -1.0, 0.0)]));
        assert!(matches!(diagonal_symmetrizer(&broken), Err(Error::PatternViolation(_))));
        let diag = detect_pattern(&fam(vec![Mat2::IDENTITY]));
        assert!(diagonal_symmetrizer(&diag).is_err());
    }

    /// Hand solution: diag(0.5, 1) forces s2 = 0; A0 then forces 3.5 s1 + 4 s3 = 0.
    #[test]
    fn skew_pair_is_not_symmetrizable() {
        let r = spd_feasibility(&skew_pair());
        assert!(!r.feasible());
        assert_eq!(r.subspace.dim(), 1);
        let v = r.subspace.basis[0];
        let oracle = [4.0 / sqrt(28.25), 0.0, -3.5 / sqrt(28.25)];
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        for i in 0..3 {
            assert!((sign * v[i] - oracle[i]).abs() < 1e-12);
        }
        assert_eq!(r.certificate().unwrap().reason, InfeasibilityReason::NoDefiniteElement);
    }

    #[test]
    fn conjugated_skew_pair_is_not_symmetrizable() {
        let r = spd_feasibility(&fam(vec![Mat2::new(1.0, 0.0, 2.0, 0.5), Mat2::new(0.5, 1.0, 0.0, 1.0)]));
        assert!(!r.feasible());
        // Hand solution: s1 = 2 s3, s2 = -4 s3, which is indefinite.
        assert!(r.subspace.distance([2.0, -4.0, 1.0]) < 1e-12);
    }

    #[test]
    fn symmetric_family_uses_identity() {
        let r = spd_feasibility(&fam(vec![Mat2::IDENTITY, Mat2::IDENTITY.scale(2.0)]));
        assert_eq!(r.subspace.dim(), 3);
        assert_eq!(r.q(), Some(&Mat2::IDENTITY));

        let r = spd_feasibility(&fam(vec![
            Mat2::new(1.0, 2.0, 2.0, 3.0),
            Mat2::new(-1.0, 0.5, 0.5, 0.0),
            Mat2::new(4.0, -1.0, -1.0, 1.0),
        ]));
        assert!(r.feasible());
        let q = r.q().unwrap();
        assert!((q.a - q.d).abs() < 1e-9 && q.b.abs() < 1e-9);
    }

    #[test]
    fn pattern_family_subspace_contains_diag_c_b() {
        let f = fam(vec![Mat2::new(1.0, 2.0, 3.0, -1.0), Mat2::new(0.5, -4.0, -6.0, 2.0)]);
        let r = spd_feasibility(&f);
        assert!(r.feasible());
        assert!(r.subspace.distance([3.0, 0.0, 2.0]) < 1e-12);
        if let Outcome::Feasible { conjugated, s, q } = &r.outcome {
            assert!(conjugated.iter().all(|m| asym(m) < 1e-12));
            assert!((s.b).abs() < 1e-12 && (s.a / s.d - 1.5).abs() < 1e-12);
            let qtq = q.transpose() * *q;
            assert!((qtq - *s).frobenius() < 1e-12);
        }
    }

    #[test]
    fn single_member_with_two_dimensional_subspace() {
        // Real distinct eigenvalues: symmetrizable.
        let r = spd_feasibility(&fam(vec![Mat2::new(1.0, 5.0, 0.1, 2.0)]));
        assert_eq!(r.subspace.dim(), 2);
        assert!(r.feasible());
        if let Outcome::Feasible { conjugated, .. } = &r.outcome {
            assert!(asym(&conjugated[0]) < 1e-9);
        }
        // Rotation: complex eigenvalues, never symmetrizable.
        let r = spd_feasibility(&fam(vec![Mat2::new(0.0, 1.0, -1.0, 0.0)]));
        assert_eq!(r.subspace.dim(), 2);
        assert!(!r.feasible());
        // Jordan block: only positive semidefinite solutions exist.
        let r = spd_feasibility(&fam(vec![Mat2::new(1.0, 1.0, 0.0, 1.0)]));
        assert!(!r.feasible());
        assert_eq!(r.certificate().unwrap().reason, InfeasibilityReason::Marginal);
    }

    #[test]
    fn three_generic_members_leave_trivial_subspace() {
        let r = spd_feasibility(&fam(vec![
            Mat2::new(1.0, 2.0, 3.0, 4.0),
            Mat2::new(0.0, 1.0, 0.0, 0.0),
            Mat2::new(0.0, 0.0, 1.0, 0.0),
        ]));
        assert!(!r.feasible());
        assert_eq!(r.certificate().unwrap().reason, InfeasibilityReason::TrivialSubspace);
    }

    #[test]
    fn eigenbasis_pair_canonicalization() {
        let s3 = sqrt(3.0);
        let f = fam(vec![Mat2::new(2.0, 1.0, 0.0, 1.0), Mat2::new(-2.5, (2.0 * s3 - 11.0) / 2.0, 1.0, 4.0)]);
        let (t, p) = canonicalize_via_eigenbasis(&f, 0).unwrap();
        let a = t.members()[0];
        assert!((a.a - 2.0).abs() < 1e-14 && (a.d - 1.0).abs() < 1e-14);
        assert!(a.b.abs() < 1e-14 && a.c.abs() < 1e-14);
        let b = t.members()[1];
        assert!((b.a + 1.5).abs() < 1e-12 && (b.d - 3.0).abs() < 1e-12);
        assert!((b.b * b.c - s3).abs() < 1e-12);
        assert_eq!(p.c, 0.0);
    }

    #[test]
    fn canonicalization_uses_eigenvector_basis() {
        let a = Mat2::new(0.95, 0.03, 0.05, 0.97);
        let (b, c) = (1.0, 2.0);
        let f = fam(vec![a, Mat2::new(0.0, b, c, 0.0)]);
        let (t, p) = canonicalize_via_eigenbasis(&f, 0).unwrap();
        // P ∥ [[3, 1], [5, -1]] column-wise.
        assert!((p.c / p.a - 5.0 / 3.0).abs() < 1e-13);
        assert!((p.d / p.b + 1.0).abs() < 1e-13);
        let d = t.members()[0];
        assert!((d.a - 1.0).abs() < 1e-13 && (d.d - 0.92).abs() < 1e-13);
        assert!(d.b.abs() < 1e-13 && d.c.abs() < 1e-13);
        // Direct oracle with the unnormalized P: P⁻¹BP = (1/8)[[5b+3c, c−b], [25b−9c, −5b−3c]].
        let tb = t.members()[1];
        let expected = (c - b) * (25.0 * b - 9.0 * c) / 64.0;
        assert!((tb.b * tb.c - expected).abs() < 1e-13);
    }

    #[test]
    fn canonicalize_errors() {
        let f = fam(vec![Mat2::IDENTITY, Mat2::new(0.0, 1.0, -1.0, 0.0)]);
        assert_eq!(canonicalize_via_eigenbasis(&f, 0).unwrap_err(), Error::NotDiagonalizable { member: 0 });
        assert_eq!(canonicalize_via_eigenbasis(&f, 1).unwrap_err(), Error::NotDiagonalizable { member: 1 });
        assert!(matches!(canonicalize_via_eigenbasis(&f, 5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn canonicalize_diagonal_pivot() {
        let f = fam(vec![Mat2::diag(1.0, 3.0), Mat2::new(1.0, 2.0, 3.0, 4.0)]);
        let (t, _) = canonicalize_via_eigenbasis(&f, 0).unwrap();
        // Eigenvalue order swaps the basis vectors.
        assert_eq!(t.members()[0], Mat2::diag(3.0, 1.0));
        assert_eq!(t.members()[1], Mat2::new(4.0, 3.0, 2.0, 1.0));
    }

    fn mat() -> impl Strategy<Value = Mat2> {
        (-5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0).prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
    }

    /// Margin of the feasibility decision for two-member families (dim-1 subspace).
    fn margin(f: &MatrixFamily) -> Option<f64> {
        let sub = constraint_subspace(f);
        match sub.basis.as_slice() {
            [v] => {
                let s = unit_frobenius(sym_from(*v));
                Some(min_eig(&s).max(min_eig(&-s)))
            }
            _ => None,
        }
    }

    proptest! {
        #[test]
        fn feasible_means_symmetric_conjugates(m0 in mat(), m1 in mat()) {
            let f = fam(vec![m0, m1]);
            let r = spd_feasibility(&f);
            if let Outcome::Feasible { conjugated, s, .. } = &r.outcome {
                prop_assert!(min_eig(s) > 0.0);
                for (c, m) in conjugated.iter().zip(f.members()) {
                    // Conditioning of Q enters the asymmetry; allow for it.
                    let q = r.q().unwrap();
                    let cond = q.spectral_norm() / min_eig(q);
                    prop_assert!((c.b - c.c).abs() <= 1e-12 * cond * cond * (1.0 + c.frobenius()));
                    let (rc, rm) = (c.spectral_radius(), m.spectral_radius());
                    prop_assert!((rc - rm).abs() <= 1e-9 * cond * cond * (1.0 + rm));
                }
            }
        }

        #[test]
        fn pattern_families_agree_with_diagonal_symmetrizer(
            b in 0.2f64..5.0, c in 0.2f64..5.0, flip in any::<bool>(),
            diag in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0, -2.0f64..2.0), 1..4),
        ) {
            let (b, c) = if flip { (-b, -c) } else { (b, c) };
            let mut members = vec![Mat2::new(1.0, b, c, -1.0)];
            members.extend(diag.iter().map(|&(a, d, r)| Mat2::new(a, r * b, r * c, d)));
            let f = fam(members);
            let r = spd_feasibility(&f);
            prop_assert!(r.feasible());
            let q = diagonal_symmetrizer(&detect_pattern(&f)).unwrap();
            let s = q.transpose() * q;
            prop_assert!(r.subspace.distance([s.a, s.b, s.d]) <= 1e-9);
        }

        #[test]
        fn feasibility_is_similarity_invariant(m0 in mat(), m1 in mat(), t in mat()) {
            let tol = Tol::default();
            let ti = match t.inverse(&tol) { Ok(ti) => ti, Err(_) => return Ok(()) };
            let cond = t.frobenius() * ti.frobenius();
            prop_assume!(cond <= 1e3);
            let f = fam(vec![m0, m1]);
            let g = fam(vec![ti * m0 * t, ti * m1 * t]);
            // Skip families sitting on the feasibility boundary.
            let mf = margin(&f);
            let mg = margin(&g);
            prop_assume!(mf.is_none_or(|x| x.abs() > 1e-3) && mg.is_none_or(|x| x.abs() > 1e-3));
            prop_assert_eq!(spd_feasibility(&f).feasible(), spd_feasibility(&g).feasible());
        }

        #[test]
        fn canonicalize_preserves_radii(m0 in mat(), m1 in mat()) {
            let f = fam(vec![m0, m1]);
            prop_assume!(m0.discriminant() > 1e-2);
            let (t, _) = canonicalize_via_eigenbasis(&f, 0).unwrap();
            let d = t.members()[0];
            prop_assert!(d.b.abs() <= 1e-9 * (1.0 + d.frobenius()) * 1e3);
            for (x, y) in t.members().iter().zip(f.members()) {
                prop_assume!(y.discriminant().abs() > 1e-4);
                let r = y.spectral_radius();
                prop_assert!((x.spectral_radius() - r).abs() <= 1e-7 * (1.0 + r));
            }
        }
    }
}
