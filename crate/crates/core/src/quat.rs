//! Quaternion scalars and similarity spheres.
//!
//! A quaternion is written `q = x0 + x1·i + x2·j + x3·k` with the sign table
//! `i² = j² = k² = −1`, `ij = −ji = k`, `jk = −kj = i`, `ki = −ik = j`.
//! Conjugation flips the imaginary part, `|q|² = q·conj(q) = conj(q)·q`, and
//! `conj(pq) = conj(q)·conj(p)`. Real quaternions commute with everything;
//! nothing else does.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Scalar of the quaternion division algebra, stored as four `f64` components.
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Quaternion { x0, x1, x2, x3 }
    }

    pub const fn from_real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }

    /// Builds `a + b·j` from the complex pair `(a, b)`, the symplectic
    /// splitting used by the complex embedding.
    pub fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        Quaternion::new(a.re, a.im, b.re, b.im)
    }

    /// Splits `q = a + b·j` into the complex pair `(a, b)`.
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.x0, self.x1),
            Complex64::new(self.x2, self.x3),
        )
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real part `Re(q) = x0`.
    pub fn re(self) -> f64 {
        self.x0
    }

    /// Modulus of the imaginary part, `|Im(q)|`.
    pub fn im_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj() / n2)
    }

    pub fn is_real_within(self, tol: f64) -> bool {
        self.x1.abs() <= tol && self.x2.abs() <= tol && self.x3.abs() <= tol
    }

    /// Componentwise comparison with absolute tolerance.
    pub fn approx_eq(self, other: Quaternion, tol: f64) -> bool {
        (self.x0 - other.x0).abs() <= tol
            && (self.x1 - other.x1).abs() <= tol
            && (self.x2 - other.x2).abs() <= tol
            && (self.x3 - other.x3).abs() <= tol
    }

    /// Largest componentwise deviation from `other`.
    pub fn max_dev(self, other: Quaternion) -> f64 {
        (self.x0 - other.x0)
            .abs()
            .max((self.x1 - other.x1).abs())
            .max((self.x2 - other.x2).abs())
            .max((self.x3 - other.x3).abs())
    }

    /// The similarity sphere of this quaternion.
    pub fn sphere(self) -> SphereRep {
        SphereRep::of(self)
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Quaternion::from_real(r)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

/// Hamilton product with `ij = −ji = k`, `jk = −kj = i`, `ki = −ik = j`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a0, a1, a2, a3) = (self.x0, self.x1, self.x2, self.x3);
        let (b0, b1, b2, b3) = (o.x0, o.x1, o.x2, o.x3);
        Quaternion::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: f64) -> Quaternion {
        Quaternion::new(self.x0 * r, self.x1 * r, self.x2 * r, self.x3 * r)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, r: f64) -> Quaternion {
        Quaternion::new(self.x0 / r, self.x1 / r, self.x2 / r, self.x3 / r)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{:+}i{:+}j{:+}k",
            self.x0, self.x1, self.x2, self.x3
        )
    }
}

// Wire format: always the 4-array [x0, x1, x2, x3].
impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(4)?;
        t.serialize_element(&self.x0)?;
        t.serialize_element(&self.x1)?;
        t.serialize_element(&self.x2)?;
        t.serialize_element(&self.x3)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;
        impl<'de> Visitor<'de> for QVisitor {
            type Value = Quaternion;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a 4-element real array [x0, x1, x2, x3]")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Quaternion, A::Error> {
                let x0 = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let x1 = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let x2 = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(2, &self))?;
                let x3 = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(3, &self))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(5, &self));
                }
                Ok(Quaternion::new(x0, x1, x2, x3))
            }
        }
        d.deserialize_tuple(4, QVisitor)
    }
}

/// Similarity class `[λ] = {h λ h⁻¹ : h ≠ 0}`, parameterized by the pair
/// `(Re λ, |Im λ|)`. The canonical representative is the complex point
/// `a + b·i` with `b ≥ 0`; `b = 0` exactly when the class is one real point.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SphereRep {
    pub a: f64,
    pub b: f64,
}

impl SphereRep {
    pub fn new(a: f64, b: f64) -> Self {
        SphereRep { a, b: b.abs() }
    }

    /// Sphere of the similarity orbit through `q`.
    pub fn of(q: Quaternion) -> Self {
        SphereRep {
            a: q.re(),
            b: q.im_norm(),
        }
    }

    /// Canonical member `a + b·i` of the class.
    pub fn representative(self) -> Quaternion {
        Quaternion::new(self.a, self.b, 0.0, 0.0)
    }

    /// Modulus shared by every member of the class.
    pub fn radius(self) -> f64 {
        self.a.hypot(self.b)
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.b <= tol
    }

    pub fn approx_eq(self, other: SphereRep, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol && (self.b - other.b).abs() <= tol
    }

    /// Lexicographic order on `(a, b)`, the sort used for deduplication.
    pub fn cmp_key(&self, other: &SphereRep) -> std::cmp::Ordering {
        self.a
            .total_cmp(&other.a)
            .then(self.b.total_cmp(&other.b))
    }

    /// Distance of an arbitrary quaternion to this sphere, measured in the
    /// `(Re, |Im|)` half-plane.
    pub fn dist(self, q: Quaternion) -> f64 {
        (q.re() - self.a).hypot(q.im_norm() - self.b)
    }
}

impl fmt::Display for SphereRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}
