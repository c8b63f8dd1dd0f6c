//! Quaternion arithmetic and the embeddings S³ ⊂ ℍ and S² ⊂ Im ℍ.
//!
//! A quaternion is stored as `w + x𝕚 + y𝕛 + z𝕜`. The complex circle
//! subgroup `{cos θ + 𝕚 sin θ}` is the structure group of the Hopf bundle,
//! so [`arg_circle`] is how fiber phases are read back out.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::vector::Vec3;

/// Default tolerance (relative to |q|) on the 𝕛/𝕜 components accepted by
/// [`arg_circle`].
pub const OFF_FIBER_TOL: f64 = 1e-9;

/// Below this |v| the exponential map uses its Taylor expansion.
const EXP_SERIES_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Pure imaginary quaternion `v.x𝕚 + v.y𝕛 + v.z𝕜`.
    pub const fn pure(v: Vec3) -> Self {
        Self::new(0.0, v.x, v.y, v.z)
    }

    pub fn from_parts(w: f64, v: Vec3) -> Self {
        Self::new(w, v.x, v.y, v.z)
    }

    pub fn real(self) -> f64 {
        self.w
    }

    pub fn imag(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_squared(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Euclidean inner product on ℍ ≅ ℝ⁴.
    pub fn dot(self, o: Quaternion) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Hamilton product.
#[inline]
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        quat_mul(self, rhs)
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
        self.scale(-1.0)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

/// A point of S³. Construction renormalizes inputs with norm in [0.5, 2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion(Quaternion::ONE);

    pub fn new(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if !(0.5..=2.0).contains(&n) {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(Self(q.scale(1.0 / n)))
    }

    /// Wraps `q` without checking; callers guarantee |q| = 1 up to rounding.
    pub(crate) fn new_unchecked(q: Quaternion) -> Self {
        Self(q)
    }

    /// Renormalizes a product of unit quaternions, which only drifts by rounding.
    pub(crate) fn renormalized(q: Quaternion) -> Self {
        Self(q.scale(1.0 / q.norm()))
    }

    pub fn quaternion(self) -> Quaternion {
        self.0
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    /// Fiber action `q ↦ q·e^{−𝕚θ}`.
    pub fn fiber_shift(self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::renormalized(self.0 * Quaternion::new(c, -s, 0.0, 0.0))
    }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;
    fn mul(self, rhs: UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion::renormalized(self.0 * rhs.0)
    }
}

impl From<UnitQuaternion> for Quaternion {
    fn from(q: UnitQuaternion) -> Quaternion {
        q.0
    }
}

/// A unit vector of ℝ³, identified with the imaginary quaternion `x𝕚 + y𝕛 + z𝕜`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(Vec3);

impl SpherePoint {
    /// 𝕚 = (1, 0, 0)
    pub const I: SpherePoint = SpherePoint(Vec3::X);
    /// 𝕛 = (0, 1, 0)
    pub const J: SpherePoint = SpherePoint(Vec3::Y);
    /// 𝕜 = (0, 0, 1)
    pub const K: SpherePoint = SpherePoint(Vec3::Z);

    /// Normalizes `(x, y, z)`; fails on zero or non-finite input.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, z))
    }

    pub fn from_vec(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::ZeroVector { x: v.x, y: v.y, z: v.z });
        }
        Ok(Self(v / n))
    }

    /// Wraps an already-unit vector.
    pub(crate) fn new_unchecked(v: Vec3) -> Self {
        Self(v)
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn dot(self, o: SpherePoint) -> f64 {
        self.0.dot(o.0)
    }

    pub fn cross(self, o: SpherePoint) -> Vec3 {
        self.0.cross(o.0)
    }

    pub fn antipode(self) -> SpherePoint {
        SpherePoint(-self.0)
    }

    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::pure(self.0)
    }

    pub fn to_array(self) -> [f64; 3] {
        self.0.to_array()
    }
}

impl From<SpherePoint> for Vec3 {
    fn from(p: SpherePoint) -> Vec3 {
        p.0
    }
}

/// `r p r̄`, the rotation of `p` by the unit quaternion `r`.
pub fn rotate_vector(r: UnitQuaternion, p: SpherePoint) -> SpherePoint {
    let q = r.0 * p.to_quaternion() * r.0.conj();
    let v = q.imag();
    SpherePoint(v / v.norm())
}

/// Exponential map on imaginary quaternions: `cos|v| + (v/|v|) sin|v|`.
pub fn exp_im(v: Vec3) -> UnitQuaternion {
    let theta_sq = v.norm_squared();
    let theta = theta_sq.sqrt();
    let (c, sinc) = if theta < EXP_SERIES_THRESHOLD {
        (1.0 - 0.5 * theta_sq, 1.0 - theta_sq / 6.0)
    } else {
        (theta.cos(), theta.sin() / theta)
    };
    UnitQuaternion::renormalized(Quaternion::from_parts(c, v * sinc))
}

/// Phase of a quaternion in the circle subgroup, `atan2(x, w)` in (−π, π].
pub fn arg_circle(q: Quaternion) -> Result<f64> {
    arg_circle_with_tol(q, OFF_FIBER_TOL)
}

/// [`arg_circle`] with an explicit off-fiber tolerance (relative to |q|).
pub fn arg_circle_with_tol(q: Quaternion, tol: f64) -> Result<f64> {
    let n = q.norm();
    if !(0.5..=2.0).contains(&n) {
        return Err(Error::NotUnit { norm: n });
    }
    if q.y.abs() > tol * n || q.z.abs() > tol * n {
        return Err(Error::OffFiber { y: q.y.abs(), z: q.z.abs() });
    }
    let a = q.x.atan2(q.w);
    // atan2 returns −π for (−0, negative); fold it onto π
    Ok(if a == -std::f64::consts::PI { std::f64::consts::PI } else { a })
}
