use alloc::vec::Vec;
use core::fmt;

/// Errors raised by the core operations.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A matrix entry is NaN or infinite.
    NonFinite {
        member: Option<usize>,
    },
    /// A family needs at least one member.
    EmptyFamily,
    /// Tolerances must be finite and non-negative.
    InvalidTolerance,
    /// `|det Q|` is below the scale-aware singularity threshold.
    SingularTransform {
        det: f64,
    },
    /// The pivot member has no pair of distinct real eigenvalues.
    NotDiagonalizable {
        member: usize,
    },
    /// The proportional off-diagonal pattern does not satisfy a precondition.
    PatternViolation(&'static str),
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    /// Switching blocks need a repeat count of at least one.
    ZeroRepeat {
        block: usize,
    },
    /// Word-enumeration depth must be at least one.
    InvalidDepth,
    BudgetExceeded(BudgetExceeded),
}

/// Progress made before the product-evaluation budget ran out.
#[derive(Clone, Debug, PartialEq)]
pub struct BudgetExceeded {
    pub requested_depth: usize,
    /// Deepest level whose words were all examined (0 when none fit).
    pub completed_depth: usize,
    pub budget: u64,
    /// Best bound reached at `completed_depth` (lower or upper, depending on the call).
    pub best_so_far: f64,
    /// Witness word for a lower bound; empty for upper bounds.
    pub witness: Vec<usize>,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { member: Some(k) } => write!(f, "member {k} has a non-finite entry"),
            Error::NonFinite { member: None } => f.write_str("matrix has a non-finite entry"),
            Error::EmptyFamily => f.write_str("a matrix family needs at least one member"),
            Error::InvalidTolerance => f.write_str("tolerances must be finite and non-negative"),
            Error::SingularTransform { det } => {
                write!(f, "transform is numerically singular (det = {det:e})")
            }
            Error::NotDiagonalizable { member } => {
                write!(f, "member {member} has no distinct real eigenvalues")
            }
            Error::PatternViolation(why) => write!(f, "pattern precondition violated: {why}"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "member index {index} out of range for a family of {len}")
            }
            Error::ZeroRepeat { block } => write!(f, "block {block} has a zero repeat count"),
            Error::InvalidDepth => f.write_str("enumeration depth must be at least 1"),
            Error::BudgetExceeded(b) => write!(
                f,
                "budget of {} products exceeded: depth {} requested, {} completed",
                b.budget, b.requested_depth, b.completed_depth
            ),
        }
    }
}

impl core::error::Error for Error {}
