//! Independent checks for the area formulas.
//!
//! Nothing here goes through the dihedral/lift machinery used by the main
//! formulas: triangle areas come from the signed-excess `atan2` identity,
//! line integrals of α are plain Riemann sums along sampled paths, and the
//! classical formula is rebuilt from orthonormal frames in SO(3) using
//! rotation matrices.

use std::f64::consts::TAU;

use crate::angle::AngleMod4Pi;
use crate::error::{Error, Result};
use crate::hopf::FiberPoint;
use crate::polygon::{SphericalPolygon, DEGENERATE_TOL};
use crate::quat::{arg_circle, exp_im, Quaternion, SpherePoint, UnitQuaternion};
use crate::summation::CompensatedSum;
use crate::vector::Vec3;

/// Vertices closer than this (in chord length) to ±pole are rejected by
/// [`area_fan_oracle`].
pub const ORACLE_POLE_TOL: f64 = 1e-9;

const TRIANGLE_DEGENERACY: f64 = 1e-14;

/// Signed solid angle of the triangle `(a, b, c)`:
/// `2 atan2(det(a, b, c), 1 + a·b + b·c + c·a)`.
pub fn solid_angle_triangle(a: SpherePoint, b: SpherePoint, c: SpherePoint) -> Result<f64> {
    solid_angle_indexed(a, b, c, 0)
}

fn solid_angle_indexed(a: SpherePoint, b: SpherePoint, c: SpherePoint, index: usize) -> Result<f64> {
    let (a, b, c) = (a.vec(), b.vec(), c.vec());
    let det = Vec3::triple(a, b, c);
    let denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    if det.abs() < TRIANGLE_DEGENERACY && denom.abs() < TRIANGLE_DEGENERACY {
        return Err(Error::DegenerateTriangle { index });
    }
    Ok(2.0 * det.atan2(denom))
}

/// Sum of signed solid angles of the fan `(p_i, p_{i+1}, pole)`.
pub fn area_fan_oracle(poly: &SphericalPolygon, pole: SpherePoint) -> Result<AngleMod4Pi> {
    for (i, p) in poly.vertices().iter().enumerate() {
        if (p.vec() - pole.vec()).norm() < ORACLE_POLE_TOL || (p.vec() + pole.vec()).norm() < ORACLE_POLE_TOL {
            return Err(Error::DegenerateTriangle { index: i });
        }
    }
    let mut sum = CompensatedSum::new();
    for (i, (p, p2)) in poly.edges().enumerate() {
        sum.add(solid_angle_indexed(p, p2, pole, i)?);
    }
    Ok(AngleMod4Pi::new(sum.value()))
}

/// Riemann sum of α = 2 Re(𝕚 q̄ dq) along `path(t)`, `t ∈ [0, 1]`.
///
/// Each step uses the chord `q_{k+1} − q_k` and the normalized chord
/// midpoint as the base point.
pub fn alpha_path_integral(path: impl Fn(f64) -> Quaternion, subdivisions: usize) -> f64 {
    let steps = subdivisions.max(1);
    let mut sum = CompensatedSum::new();
    let mut prev = path(0.0);
    for k in 1..=steps {
        let next = path(k as f64 / steps as f64);
        let mid = prev + next;
        let mid = mid.scale(1.0 / mid.norm());
        let h = mid.conj() * (next - prev);
        sum.add(-2.0 * h.x);
        prev = next;
    }
    sum.value()
}

/// Numeric ∮α through a sequence of lift points.
///
/// Consecutive points are joined by the horizontal great-circle lift
/// `exp(vt/2)·q` (axis from the cross product of the base points),
/// followed by a rotation along the fiber onto the next point. Each leg is
/// sampled with `subdivisions` steps.
pub fn alpha_line_integral_numeric(lift_path: &[FiberPoint], subdivisions: usize) -> f64 {
    let mut sum = CompensatedSum::new();
    for w in lift_path.windows(2) {
        let (a, b) = (w[0], w[1]);
        let axis = geodesic_axis(a.base().vec(), b.base().vec());
        let qa = a.q().quaternion();
        sum.add(alpha_path_integral(|t| (exp_im(axis * (0.5 * t)).quaternion()) * qa, subdivisions));

        let end = exp_im(axis * 0.5).quaternion() * qa;
        let end = UnitQuaternion::new(end).expect("product of unit quaternions");
        // b = end · e^{−𝕚θ}
        let theta = arg_circle(b.q().quaternion().conj() * end.quaternion()).unwrap_or(0.0);
        sum.add(alpha_path_integral(|t| end.fiber_shift(theta * t).quaternion(), subdivisions));
    }
    sum.value()
}

/// Rotation vector (axis × angle) carrying `a` to `b` along the short arc.
fn geodesic_axis(a: Vec3, b: Vec3) -> Vec3 {
    let c = a.cross(b);
    let s = c.norm();
    if s == 0.0 {
        return Vec3::ZERO;
    }
    c * (s.atan2(a.dot(b)) / s)
}

/// An element of SO(3) stored by columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix {
    cols: [Vec3; 3],
}

impl RotationMatrix {
    pub const IDENTITY: RotationMatrix = RotationMatrix { cols: [Vec3::X, Vec3::Y, Vec3::Z] };

    /// Accepts columns orthonormal with determinant +1 to within 1e-10.
    pub fn from_columns(cols: [Vec3; 3]) -> Option<Self> {
        let m = Self { cols };
        (m.orthonormality_error() <= 1e-10 && (m.determinant() - 1.0).abs() <= 1e-10).then_some(m)
    }

    /// Rotation by `angle` about the unit vector `axis` (Rodrigues).
    pub fn about_axis(axis: Vec3, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let rot = |v: Vec3| v * c + axis.cross(v) * s + axis * (axis.dot(v) * (1.0 - c));
        Self { cols: [rot(Vec3::X), rot(Vec3::Y), rot(Vec3::Z)] }
    }

    pub fn column(&self, i: usize) -> Vec3 {
        self.cols[i]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.cols[col][row]
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        self.cols[0] * v.x + self.cols[1] * v.y + self.cols[2] * v.z
    }

    /// `self · other`
    pub fn compose(&self, other: &RotationMatrix) -> RotationMatrix {
        RotationMatrix { cols: other.cols.map(|c| self.apply(c)) }
    }

    pub fn transpose(&self) -> RotationMatrix {
        let r = |i: usize| Vec3::new(self.get(i, 0), self.get(i, 1), self.get(i, 2));
        RotationMatrix { cols: [r(0), r(1), r(2)] }
    }

    pub fn determinant(&self) -> f64 {
        Vec3::triple(self.cols[0], self.cols[1], self.cols[2])
    }

    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.cols[i].dot(self.cols[j]) - target).abs());
            }
        }
        worst
    }

    /// Projection SO(3) → S², the first column.
    pub fn base_point(&self) -> Vec3 {
        self.cols[0]
    }
}

/// Per-vertex frames `(p_i, v̂_i, p_i × v̂_i)` with `v̂_i` the unit forward
/// velocity toward `p_{i+1}`.
pub fn so3_frame_lift(poly: &SphericalPolygon) -> Result<Vec<RotationMatrix>> {
    poly.edges()
        .enumerate()
        .map(|(i, (p, p2))| {
            let n = p.cross(p2);
            if !(n.norm() > DEGENERATE_TOL) {
                return Err(Error::DegenerateVertex { index: i });
            }
            let v = -p.vec().cross(n);
            let t = v / v.norm();
            Ok(RotationMatrix { cols: [p.vec(), t, p.vec().cross(t)] })
        })
        .collect()
}

/// Classical area rebuilt from the SO(3) frame lift.
///
/// Frames are carried along each edge by the rotation about the edge's
/// great-circle normal, which is horizontal for the SO(3) connection. At each
/// vertex the carried frame and the vertex's own frame differ by a rotation
/// about the first column by the signed exterior angle ϑ_i; the area is
/// `2π − Σ ϑ_i`.
pub fn classical_from_frames(poly: &SphericalPolygon) -> Result<AngleMod4Pi> {
    let frames = so3_frame_lift(poly)?;
    let n = frames.len();
    let mut sum = CompensatedSum::new();
    for i in 0..n {
        let prev = (i + n - 1) % n;
        let (a, b) = (poly.vertex(prev).vec(), poly.vertex(i).vec());
        let normal = a.cross(b);
        let axis = normal / normal.norm();
        let angle = normal.norm().atan2(a.dot(b));
        let carried = RotationMatrix::about_axis(axis, angle).compose(&frames[prev]);
        let jump = carried.transpose().compose(&frames[i]);
        sum.add(jump.get(2, 1).atan2(jump.get(1, 1)));
    }
    Ok(AngleMod4Pi::new(TAU - sum.value()))
}
