use alloc::vec::Vec;

use super::words::ScaledMat;
use crate::{Error, MatrixFamily, Result};

/// A switching law as blocks `(member, repeat count)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingSequence {
    blocks: Vec<(usize, u64)>,
}

impl SwitchingSequence {
    pub fn new(blocks: Vec<(usize, u64)>) -> Result<Self> {
        if let Some(block) = blocks.iter().position(|&(_, m)| m == 0) {
            return Err(Error::ZeroRepeat { block });
        }
        Ok(Self { blocks })
    }

    /// `(k, 1)` for each index.
    pub fn from_word(word: &[usize]) -> Self {
        Self { blocks: word.iter().map(|&k| (k, 1)).collect() }
    }

    pub fn blocks(&self) -> &[(usize, u64)] {
        &self.blocks
    }
}

/// Norm of the running product after one block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSample {
    /// 1-based block counter.
    pub step: usize,
    pub member: usize,
    pub repeat: u64,
    /// `log10 ‖P‖₂`; `-inf` once the product is exactly zero.
    pub log10_norm: f64,
}

impl NormSample {
    /// May overflow to `inf` or underflow to 0 where `log10_norm` does not.
    pub fn norm(&self) -> f64 {
        libm::pow(10.0, self.log10_norm)
    }
}

/// Spectral norms of `A_{k_1}^{m_1} ⋯ A_{k_j}^{m_j}` for `j = 1, 2, …`,
/// multiplied left to right.
pub fn simulate_norm_decay(fam: &MatrixFamily, seq: &SwitchingSequence) -> Result<Vec<NormSample>> {
    let len = fam.len();
    if let Some(&(index, _)) = seq.blocks.iter().find(|&&(k, _)| k >= len) {
        return Err(Error::IndexOutOfRange { index, len });
    }
    let members: Vec<ScaledMat> = fam.members().iter().map(ScaledMat::from_mat).collect();
    let mut product = ScaledMat::IDENTITY;
    let log10_2 = core::f64::consts::LOG10_2;
    Ok(seq
        .blocks
        .iter()
        .enumerate()
        .map(|(i, &(k, m))| {
            product = product.mul(&members[k].pow(m));
            NormSample { step: i + 1, member: k, repeat: m, log10_norm: product.log2_norm() * log10_2 }
        })
        .collect())
}
