use alloc::vec::Vec;

use crate::MatrixFamily;

/// Structural properties known to imply the finiteness property, reported
/// without computing a value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoFlags {
    /// Every member's transpose is (numerically) also a member.
    pub transpose_closed: bool,
    /// Indices of members of rank exactly one.
    pub rank_one_members: Vec<usize>,
}

impl InfoFlags {
    pub fn has_rank_one_member(&self) -> bool {
        !self.rank_one_members.is_empty()
    }
}

pub fn info_flags(fam: &MatrixFamily) -> InfoFlags {
    let tol = fam.tol();
    let members = fam.members();
    let transpose_closed = members.iter().all(|m| {
        let t = m.transpose();
        members.iter().any(|o| (t - *o).frobenius() <= tol.rtol * (1.0 + m.frobenius()))
    });
    let rank_one_members = members
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            let f = m.frobenius();
            f > tol.atol && m.det().abs() <= tol.rtol * f * f
        })
        .map(|(k, _)| k)
        .collect();
    InfoFlags { transpose_closed, rank_one_members }
}
