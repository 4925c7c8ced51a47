//! Matrix families and the proportional off-diagonal pattern.

use alloc::vec::Vec;

use crate::{Error, Mat2, Result, Tol};

/// An ordered, non-empty family `{A_0, …, A_K}` with its tolerance context.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFamily {
    members: Vec<Mat2>,
    tol: Tol,
}

impl MatrixFamily {
    pub fn new(members: Vec<Mat2>, tol: Tol) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if !tol.is_valid() {
            return Err(Error::InvalidTolerance);
        }
        if let Some(k) = members.iter().position(|m| !m.is_finite()) {
            return Err(Error::NonFinite { member: Some(k) });
        }
        Ok(Self { members, tol })
    }

    pub fn with_default_tol(members: Vec<Mat2>) -> Result<Self> {
        Self::new(members, Tol::default())
    }

    pub fn members(&self) -> &[Mat2] {
        &self.members
    }

    pub fn tol(&self) -> &Tol {
        &self.tol
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: usize) -> Result<&Mat2> {
        self.members.get(index).ok_or(Error::IndexOutOfRange { index, len: self.len() })
    }

    /// Same members under a different tolerance context.
    pub fn with_tol(&self, tol: Tol) -> Result<Self> {
        Self::new(self.members.clone(), tol)
    }

    /// Apply `f` to every member, keeping the tolerance context.
    pub fn map(&self, f: impl FnMut(&Mat2) -> Mat2) -> Result<Self> {
        Self::new(self.members.iter().map(f).collect(), self.tol)
    }

    /// `{s · A_k}`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        self.map(|m| m.scale(s))
    }

    pub fn max_member_radius(&self) -> (usize, f64) {
        // Ties resolve to the smallest index.
        let mut best = (0, self.members[0].spectral_radius());
        for (k, m) in self.members.iter().enumerate().skip(1) {
            let r = m.spectral_radius();
            if r > best.1 {
                best = (k, r);
            }
        }
        best
    }
}

/// Sign of the product of the common off-diagonal direction `b·c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignClass {
    Positive,
    Zero,
    Negative,
}

impl SignClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignClass::Positive => "positive",
            SignClass::Zero => "zero",
            SignClass::Negative => "negative",
        }
    }

    /// `bc >= 0`, the case where the family has the finiteness property.
    pub fn is_nonnegative(&self) -> bool {
        !matches!(self, SignClass::Negative)
    }
}

/// Outcome of checking whether every member's off-diagonal pair `(b_k, c_k)`
/// is a multiple `r_k · (b, c)` of one common direction.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternReport {
    pub holds: bool,
    pub base_b: f64,
    pub base_c: f64,
    /// Index of the member supplying `(base_b, base_c)`; `None` when all are diagonal.
    pub base_member: Option<usize>,
    pub ratios: Vec<f64>,
    pub sign_class: SignClass,
    pub all_diagonal: bool,
}

/// Detect the proportional off-diagonal pattern.
///
/// Off-diagonal vectors are compared pairwise with the cross-product test
/// `|b_k c_j − b_j c_k| <= rtol · scale`, `scale = max_k (|b_k| + |c_k|)²`.
/// The base direction comes from the member with the largest off-diagonal
/// norm (smallest index on ties) and every ratio is the least-squares
/// coefficient onto it. Members whose off-diagonal norm is within `atol` of
/// zero get ratio 0.
pub fn detect_pattern(fam: &MatrixFamily) -> PatternReport {
    let tol = fam.tol();
    let members = fam.members();
    let offdiag_norm = |m: &Mat2| libm::hypot(m.b, m.c);

    let mut base: Option<(usize, f64)> = None;
    for (k, m) in members.iter().enumerate() {
        let n = offdiag_norm(m);
        if n > tol.atol && base.is_none_or(|(_, best)| n > best) {
            base = Some((k, n));
        }
    }

    let Some((base_k, _)) = base else {
        return PatternReport {
            holds: true,
            base_b: 0.0,
            base_c: 0.0,
            base_member: None,
            ratios: alloc::vec![0.0; members.len()],
            sign_class: SignClass::Zero,
            all_diagonal: true,
        };
    };

    let (bb, bc) = (members[base_k].b, members[base_k].c);
    let base_sq = bb * bb + bc * bc;
    let ratios = members
        .iter()
        .enumerate()
        .map(|(k, m)| {
            if k == base_k {
                1.0
            } else if offdiag_norm(m) <= tol.atol {
                0.0
            } else {
                (m.b * bb + m.c * bc) / base_sq
            }
        })
        .collect();

    let scale = members
        .iter()
        .map(|m| {
            let s = m.b.abs() + m.c.abs();
            s * s
        })
        .fold(0.0, f64::max);
    let limit = tol.rtol * scale;
    let holds = members
        .iter()
        .enumerate()
        .all(|(j, mj)| members[j + 1..].iter().all(|mk| (mk.b * mj.c - mj.b * mk.c).abs() <= limit));

    let prod = bb * bc;
    let sign_class = if prod.abs() <= tol.atol {
        SignClass::Zero
    } else if prod > 0.0 {
        SignClass::Positive
    } else {
        SignClass::Negative
    };

    PatternReport { holds, base_b: bb, base_c: bc, base_member: Some(base_k), ratios, sign_class, all_diagonal: false }
}
