//! Coquaternion (split-quaternion) arithmetic.
//!
//! The basis `{1, i, j, k}` obeys `i² = -1`, `j² = k² = +1`, `ij = -ji = k`,
//! `jk = -kj = -i` and `ki = -ik = j`. The conjugate-norm
//! `q̄q = q0² + q1² - q2² - q3²` is indefinite, so nonzero elements can be
//! non-invertible (null).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Relative scale of the null tolerance, see [`Coquaternion::null_tolerance`].
pub const NULL_TOLERANCE_SCALE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Coquaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Coquaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    #[inline]
    pub const fn real(q0: f64) -> Self {
        Self::new(q0, 0.0, 0.0, 0.0)
    }

    /// Pure imaginary element `i a + j b + k c`.
    #[inline]
    pub const fn imaginary(a: f64, b: f64, c: f64) -> Self {
        Self::new(0.0, a, b, c)
    }

    #[inline]
    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    /// Squared modulus `q̄q = q0² + q1² - q2² - q3²`. May be negative or zero.
    #[inline]
    pub fn mod2(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 - self.q2 * self.q2 - self.q3 * self.q3
    }

    /// Discriminant of the imaginary part, `q1² - q2² - q3²`.
    ///
    /// Positive for a time-like imaginary part, negative for space-like and
    /// zero for null.
    #[inline]
    pub fn imag_norm2(self) -> f64 {
        self.q1 * self.q1 - self.q2 * self.q2 - self.q3 * self.q3
    }

    /// Ordinary Euclidean `q0² + q1² + q2² + q3²` of the components.
    #[inline]
    pub fn euclid_norm2(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    /// Scale-aware threshold below which `mod2` or `imag_norm2` count as zero.
    #[inline]
    pub fn null_tolerance(self) -> f64 {
        NULL_TOLERANCE_SCALE * (1.0 + self.euclid_norm2())
    }

    #[inline]
    pub fn imag(self) -> Self {
        Self::new(0.0, self.q1, self.q2, self.q3)
    }

    pub fn is_null(self) -> bool {
        self.mod2().abs() <= self.null_tolerance()
    }

    /// `q̄ / (q̄q)`. Fails for null elements.
    pub fn inverse(self) -> Result<Self> {
        let m = self.mod2();
        if m.abs() <= self.null_tolerance() {
            return Err(Error::NullCoquaternion { mod2: m });
        }
        Ok(self.conj() / m)
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.q0.abs().max(d.q1.abs()).max(d.q2.abs()).max(d.q3.abs())
    }

    pub fn polar(self) -> Result<PolarForm> {
        polar_decompose(self)
    }
}

impl fmt::Display for Coquaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}i {:+}j {:+}k",
            self.q0, self.q1, self.q2, self.q3
        )
    }
}

impl From<f64> for Coquaternion {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl Add for Coquaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(
            self.q0 + r.q0,
            self.q1 + r.q1,
            self.q2 + r.q2,
            self.q3 + r.q3,
        )
    }
}

impl Sub for Coquaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(
            self.q0 - r.q0,
            self.q1 - r.q1,
            self.q2 - r.q2,
            self.q3 - r.q3,
        )
    }
}

impl Neg for Coquaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

impl Mul for Coquaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        let (a0, a1, a2, a3) = (self.q0, self.q1, self.q2, self.q3);
        let (b0, b1, b2, b3) = (r.q0, r.q1, r.q2, r.q3);
        Self::new(
            a0 * b0 - a1 * b1 + a2 * b2 + a3 * b3,
            a0 * b1 + a1 * b0 - a2 * b3 + a3 * b2,
            a0 * b2 + a2 * b0 - a1 * b3 + a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
        )
    }
}

impl Mul<f64> for Coquaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }
}

impl Mul<Coquaternion> for f64 {
    type Output = Coquaternion;
    #[inline]
    fn mul(self, q: Coquaternion) -> Coquaternion {
        q * self
    }
}

impl Div<f64> for Coquaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.q0 / s, self.q1 / s, self.q2 / s, self.q3 / s)
    }
}

impl AddAssign for Coquaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl SubAssign for Coquaternion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl MulAssign for Coquaternion {
    #[inline]
    fn mul_assign(&mut self, r: Self) {
        *self = *self * r;
    }
}

impl MulAssign<f64> for Coquaternion {
    #[inline]
    fn mul_assign(&mut self, s: f64) {
        *self = *self * s;
    }
}

/// Which of the four polar representations applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolarBranch {
    /// `q̄q > 0`, time-like imaginary part: `|q|(cos θ + 𝒊 sin θ)`.
    Circular,
    /// `q̄q > 0`, space-like imaginary part: `±|q|(cosh θ + 𝒊 sinh θ)`.
    HyperbolicCosh,
    /// `q̄q > 0`, null imaginary part: `q0(1 + 𝒊)`.
    Null,
    /// `q̄q < 0`: `|q|(sinh θ + 𝒊 cosh θ)`.
    HyperbolicSinh,
}

/// Polar decomposition of a coquaternion.
///
/// `axis` is a pure imaginary unit with `axis² = -1` (circular), `+1`
/// (both hyperbolic branches) or `0` (null). `sign` is the sign of the scalar
/// part for the branches whose modulus hides it (`HyperbolicCosh`, `Null`) and
/// `+1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub branch: PolarBranch,
    pub modulus: f64,
    pub axis: Coquaternion,
    pub angle: Option<f64>,
    pub sign: f64,
}

impl PolarForm {
    pub fn reconstruct(&self) -> Coquaternion {
        let r = self.modulus;
        let a = self.axis;
        match (self.branch, self.angle) {
            (PolarBranch::Circular, Some(t)) => Coquaternion::real(r * t.cos()) + a * (r * t.sin()),
            (PolarBranch::HyperbolicCosh, Some(t)) => {
                (Coquaternion::real(t.cosh()) + a * t.sinh()) * (self.sign * r)
            }
            (PolarBranch::HyperbolicSinh, Some(t)) => {
                Coquaternion::real(r * t.sinh()) + a * (r * t.cosh())
            }
            (PolarBranch::Null, _) => (Coquaternion::ONE + a) * (self.sign * r),
            (branch, None) => unreachable!("{branch:?} polar form without an angle"),
        }
    }
}

/// Splits `q` into modulus, imaginary unit and angle.
///
/// Branches are selected by the signs of `mod2` and `imag_norm2`, each
/// compared against [`Coquaternion::null_tolerance`]. Elements on the light
/// cone (`mod2 ≈ 0`) have no polar form.
pub fn polar_decompose(q: Coquaternion) -> Result<PolarForm> {
    if q == Coquaternion::ZERO {
        return Err(Error::ZeroCoquaternion);
    }
    let tol = q.null_tolerance();
    let m = q.mod2();
    let d = q.imag_norm2();
    let im = q.imag();

    if m < -tol {
        // |q0| < s here, so the hyperbolic tangent argument lies in (-1, 1).
        let s = (-d).sqrt();
        let modulus = (-m).sqrt();
        return Ok(PolarForm {
            branch: PolarBranch::HyperbolicSinh,
            modulus,
            axis: im / s,
            angle: Some((q.q0 / s).atanh()),
            sign: 1.0,
        });
    }
    if m <= tol {
        return Err(Error::DegeneratePolar(q.to_string()));
    }

    let modulus = m.sqrt();
    if d > tol {
        let s = d.sqrt();
        Ok(PolarForm {
            branch: PolarBranch::Circular,
            modulus,
            axis: im / s,
            angle: Some(s.atan2(q.q0)),
            sign: 1.0,
        })
    } else if d < -tol {
        let s = (-d).sqrt();
        let sign = q.q0.signum();
        Ok(PolarForm {
            branch: PolarBranch::HyperbolicCosh,
            modulus,
            axis: im * (sign / s),
            angle: Some((s / q.q0.abs()).atanh()),
            sign,
        })
    } else {
        // mod2 > 0 with a null imaginary part forces q0 != 0.
        Ok(PolarForm {
            branch: PolarBranch::Null,
            modulus,
            axis: im / q.q0,
            angle: None,
            sign: q.q0.signum(),
        })
    }
}
