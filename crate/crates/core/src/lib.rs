//! Simultaneous symmetrization and generalized (joint) spectral radius for
//! finite families of real 2×2 matrices.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values; file formats, the command-line front end
//! and the thread-pool driver for word enumeration live in the `jsr2` crate.
//!
//! Layout:
//!
//! * [`mat2`]: closed-form 2×2 linear algebra (spectral radius, spectral norm,
//!   eigen-decomposition, similarity conjugation).
//! * [`family`]: matrix families and detection of the proportional
//!   off-diagonal pattern.
//! * [`symmetrizer`]: the diagonal symmetrizer, the general positive-definite
//!   feasibility decision, and eigenbasis canonicalization.
//! * [`jsr`]: exact fast paths, word-enumeration bounds, the stability
//!   verdict and the switched-product simulator.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod family;
pub mod jsr;
pub mod mat2;
pub mod symmetrizer;
pub mod tol;

pub use error::{BudgetExceeded, Error};
pub use family::{detect_pattern, MatrixFamily, PatternReport, SignClass};
pub use jsr::{
    decide_stability, exact_fast_path, info_flags, lower_bound, simulate_norm_decay, upper_bound, InfoFlags, JsrReport,
    Method, StabilityOptions, StabilityVerdict, SwitchingSequence, Verdict,
};
pub use mat2::{conjugate, conjugate_inverse, EigenKind, EigenPair, Mat2};
pub use symmetrizer::{canonicalize_via_eigenbasis, diagonal_symmetrizer, spd_feasibility, SymmetrizationResult};
pub use tol::Tol;

pub type Result<T, E = Error> = core::result::Result<T, E>;
