/// Numeric tolerance context shared by every operation on a family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol {
    /// Relative tolerance.
    pub rtol: f64,
    /// Absolute tolerance.
    pub atol: f64,
}

impl Tol {
    pub const DEFAULT_RTOL: f64 = 1e-9;
    pub const DEFAULT_ATOL: f64 = 1e-12;

    pub const fn new(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol }
    }

    /// `|x - y| <= rtol * (1 + scale)`.
    pub fn close(&self, x: f64, y: f64, scale: f64) -> bool {
        (x - y).abs() <= self.rtol * (1.0 + scale)
    }

    pub fn is_valid(&self) -> bool {
        self.rtol.is_finite() && self.atol.is_finite() && self.rtol >= 0.0 && self.atol >= 0.0
    }
}

impl Default for Tol {
    fn default() -> Self {
        Self::new(Self::DEFAULT_RTOL, Self::DEFAULT_ATOL)
    }
}
