//! Quaternion arithmetic and the slice decomposition `q = α + Iβ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which the vector part of a quaternion counts as zero.
pub const REAL_TOL: f64 = 1e-12;

/// An element `w + xi + yj + zk` of the real quaternion algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Quaternion::real(r)
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared Euclidean norm, `q q^c`.
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    pub fn vector(self) -> Self {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn vector_norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            None
        } else {
            Some(self.conj().scale(1.0 / n))
        }
    }

    pub fn is_real(self) -> bool {
        self.vector_norm() <= REAL_TOL * self.norm().max(1.0)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Splits `q` into its real part and its (purely imaginary) vector part.
    pub fn split(self) -> (f64, Quaternion) {
        (self.w, self.vector())
    }

    /// Writes `q = α + Iβ` with `β ≥ 0` and `I ∈ 𝕊`. Real inputs get `β = 0, I = i`.
    pub fn slice_decompose(self) -> SlicePoint {
        let beta = self.vector_norm();
        if self.is_real() {
            SlicePoint { alpha: self.w, beta: 0.0, axis: Quaternion::I }
        } else {
            SlicePoint { alpha: self.w, beta, axis: self.vector().scale(1.0 / beta) }
        }
    }

    /// Componentwise maximum absolute difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        (self.w - other.w)
            .abs()
            .max((self.x - other.x).abs())
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// The function `𝒥(q) = q_v / |q_v|`, defined off the real axis.
pub fn jfun(q: Quaternion) -> Result<Quaternion> {
    if q.is_real() {
        return Err(Error::Domain(format!("𝒥 is undefined at the real point {q}")));
    }
    Ok(q.vector().scale(1.0 / q.vector_norm()))
}

/// A quaternion written as `α + Iβ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicePoint {
    pub alpha: f64,
    pub beta: f64,
    pub axis: Quaternion,
}

impl SlicePoint {
    pub fn recompose(&self) -> Quaternion {
        Quaternion::real(self.alpha) + self.axis.scale(self.beta)
    }

    /// Maps a complex number `a + ib` onto the slice `ℂ_I` of this point.
    pub fn lift(&self, a: f64, b: f64) -> Quaternion {
        Quaternion::real(a) + self.axis.scale(b)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_num(self.w))?;
        for (v, unit) in [(self.x, 'i'), (self.y, 'j'), (self.z, 'k')] {
            if v.is_sign_negative() {
                write!(f, "-{}{unit}", fmt_num(-v))?;
            } else {
                write!(f, "+{}{unit}", fmt_num(v))?;
            }
        }
        Ok(())
    }
}

fn fmt_num(v: f64) -> String {
    // shortest round-trip representation, minus the redundant ".0"
    let s = format!("{v:?}");
    s.strip_suffix(".0").map(str::to_owned).unwrap_or(s)
}

impl FromStr for Quaternion {
    type Err = Error;

    /// Parses literals like `1-0.5j`, `i`, `-2k`, `3 + 4i - 1e-3k`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty quaternion literal".into()));
        }
        let bad = || Error::Parse(format!("malformed quaternion literal {s:?}"));
        let bytes = text.as_bytes();
        let mut q = Quaternion::ZERO;
        let mut pos = 0;
        while pos < bytes.len() {
            let start = pos;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                pos += 1;
            }
            // mantissa and optional exponent
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
                pos += 1;
            }
            if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') && pos > start {
                pos += 1;
                if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
            }
            let num = &text[start..pos];
            let unit = bytes.get(pos).copied();
            let coeff = match num {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => num.parse::<f64>().map_err(|_| bad())?,
            };
            match unit {
                Some(b'i') => q.x += coeff,
                Some(b'j') => q.y += coeff,
                Some(b'k') => q.z += coeff,
                None | Some(b'+') | Some(b'-') => {
                    if matches!(num, "" | "+" | "-") {
                        return Err(bad());
                    }
                    q.w += coeff;
                    continue;
                }
                _ => return Err(bad()),
            }
            pos += 1;
        }
        Ok(q)
    }
}
