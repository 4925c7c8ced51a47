//! Closed-form linear algebra for real 2×2 matrices.

use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result, Tol};

/// A real 2×2 matrix `[[a, b], [c, d]]`, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Which branch of the characteristic polynomial a matrix falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EigenKind {
    RealDistinct,
    RealRepeated,
    ComplexConjugate,
}

/// Eigenvalues (and, for distinct real eigenvalues, unit eigenvectors).
///
/// For real eigenvalues `lambda1 >= lambda2`. For a complex pair both hold the
/// common real part and `imag` the imaginary magnitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenPair {
    pub kind: EigenKind,
    pub lambda1: f64,
    pub lambda2: f64,
    pub imag: f64,
    /// `(v1, v2)` matching `(lambda1, lambda2)`; only for [`EigenKind::RealDistinct`].
    pub vectors: Option<([f64; 2], [f64; 2])>,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// Like [`Mat2::new`] but rejects NaN and infinite entries.
    pub fn try_new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = Self::new(a, b, c, d);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite { member: None })
        }
    }

    pub const fn from_rows(rows: [[f64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub const fn from_cols(c0: [f64; 2], c1: [f64; 2]) -> Self {
        Self::new(c0[0], c1[0], c0[1], c1[1])
    }

    pub const fn diag(x: f64, y: f64) -> Self {
        Self::new(x, 0.0, 0.0, y)
    }

    pub const fn rows(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.a, s * self.b, s * self.c, s * self.d)
    }

    pub fn frobenius(&self) -> f64 {
        libm::hypot(libm::hypot(self.a, self.b), libm::hypot(self.c, self.d))
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// Whether `|det| <= atol * max(1, ‖M‖_F²)`.
    pub fn is_singular(&self, tol: &Tol) -> bool {
        let f = self.frobenius();
        self.det().abs() <= tol.atol * (f * f).max(1.0)
    }

    pub fn inverse(&self, tol: &Tol) -> Result<Self> {
        let det = self.det();
        if self.is_singular(tol) {
            return Err(Error::SingularTransform { det });
        }
        Ok(Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det))
    }

    /// `|b - c| <= rtol * (1 + ‖M‖_F)`.
    pub fn is_symmetric(&self, tol: &Tol) -> bool {
        tol.close(self.b, self.c, self.frobenius())
    }

    pub fn is_diagonal(&self, tol: &Tol) -> bool {
        let f = self.frobenius();
        tol.close(self.b, 0.0, f) && tol.close(self.c, 0.0, f)
    }

    pub fn is_antidiagonal(&self, tol: &Tol) -> bool {
        let f = self.frobenius();
        tol.close(self.a, 0.0, f) && tol.close(self.d, 0.0, f)
    }

    /// Discriminant of the characteristic polynomial, `(a - d)² + 4bc`.
    pub fn discriminant(&self) -> f64 {
        let h = self.a - self.d;
        h * h + 4.0 * self.b * self.c
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_radius(&self) -> f64 {
        let (m, e) = pow2_normalized(self);
        if e == 0 {
            radius_unscaled(&m)
        } else {
            libm::scalbn(radius_unscaled(&m), e)
        }
    }

    /// Largest singular value (norm induced by the Euclidean vector norm).
    pub fn spectral_norm(&self) -> f64 {
        let (m, e) = pow2_normalized(self);
        if e == 0 {
            norm_unscaled(&m)
        } else {
            libm::scalbn(norm_unscaled(&m), e)
        }
    }

    pub fn eigen(&self, tol: &Tol) -> EigenPair {
        let t = self.trace();
        let disc = self.discriminant();
        if disc < -tol.atol {
            let re = 0.5 * t;
            return EigenPair {
                kind: EigenKind::ComplexConjugate,
                lambda1: re,
                lambda2: re,
                imag: 0.5 * libm::sqrt(-disc),
                vectors: None,
            };
        }
        if disc <= tol.atol {
            let re = 0.5 * t;
            return EigenPair { kind: EigenKind::RealRepeated, lambda1: re, lambda2: re, imag: 0.0, vectors: None };
        }
        let root = libm::sqrt(disc);
        // Avoid cancellation: take the larger-magnitude root directly and
        // recover the other from the determinant.
        let big = 0.5 * (t + if t >= 0.0 { root } else { -root });
        let small = self.det() / big;
        let (l1, l2) = if big >= small { (big, small) } else { (small, big) };
        EigenPair {
            kind: EigenKind::RealDistinct,
            lambda1: l1,
            lambda2: l2,
            imag: 0.0,
            vectors: Some((self.eigenvector(l1), self.eigenvector(l2))),
        }
    }

    /// Unit eigenvector for a simple real eigenvalue, sign fixed so that the
    /// largest-magnitude component is positive (first component on ties).
    fn eigenvector(&self, lambda: f64) -> [f64; 2] {
        let from_row0 = [self.b, lambda - self.a];
        let from_row1 = [lambda - self.d, self.c];
        let n0 = libm::hypot(from_row0[0], from_row0[1]);
        let n1 = libm::hypot(from_row1[0], from_row1[1]);
        let (v, n) = if n0 >= n1 { (from_row0, n0) } else { (from_row1, n1) };
        let mut v = [v[0] / n, v[1] / n];
        // Near-ties count as ties so that (1, -1)-type vectors are reproducible.
        let lead = if v[0].abs() >= v[1].abs() - 1e-12 { v[0] } else { v[1] };
        if lead < 0.0 {
            v = [-v[0], -v[1]];
        }
        v
    }
}

/// `Q·M·Q⁻¹`.
pub fn conjugate(q: &Mat2, m: &Mat2, tol: &Tol) -> Result<Mat2> {
    let qi = q.inverse(tol)?;
    Ok(*q * *m * qi)
}

/// `Q⁻¹·M·Q`.
pub fn conjugate_inverse(q: &Mat2, m: &Mat2, tol: &Tol) -> Result<Mat2> {
    let qi = q.inverse(tol)?;
    Ok(qi * *m * *q)
}

fn radius_unscaled(m: &Mat2) -> f64 {
    // Triangular: the eigenvalues are the diagonal entries, exactly.
    if m.b == 0.0 || m.c == 0.0 {
        return m.a.abs().max(m.d.abs());
    }
    let disc = m.discriminant();
    if disc >= 0.0 {
        0.5 * (m.trace().abs() + libm::sqrt(disc))
    } else {
        libm::sqrt(m.det().abs())
    }
}

// σ_max = (√((a+d)² + (b−c)²) + √((a−d)² + (b+c)²)) / 2, algebraically equal to
// √((E + √(E² − 4 det²)) / 2) with E = ‖M‖_F² but free of cancellation.
fn norm_unscaled(m: &Mat2) -> f64 {
    0.5 * (libm::hypot(m.a + m.d, m.b - m.c) + libm::hypot(m.a - m.d, m.b + m.c))
}

const SAFE_HI: f64 = 1.0e150;
const SAFE_LO: f64 = 1.0e-150;

/// Power-of-two rescaling into a range where squaring cannot overflow or
/// underflow. Returns `(m', e)` with `m = m' · 2^e`; `e == 0` when no
/// rescaling was needed.
pub(crate) fn pow2_normalized(m: &Mat2) -> (Mat2, i32) {
    let s = m.max_abs();
    if s == 0.0 || (SAFE_LO..=SAFE_HI).contains(&s) {
        return (*m, 0);
    }
    let (_, e) = libm::frexp(s);
    let scaled = Mat2::new(libm::scalbn(m.a, -e), libm::scalbn(m.b, -e), libm::scalbn(m.c, -e), libm::scalbn(m.d, -e));
    (scaled, e)
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<[f64; 2]> for Mat2 {
    type Output = [f64; 2];
    fn mul(self, v: [f64; 2]) -> [f64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}
