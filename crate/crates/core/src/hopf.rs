//! The Hopf fibration `π(q) = q𝕚q̄`, its connection form
//! `α = 2 Re(𝕚 q̄ dq)`, and closed-form line integrals of α along lifted
//! great-circle arcs.
//!
//! Fibers are the circles `q·e^{−𝕚θ}`; `α/2` evaluates to 1 on the
//! generator of that action, and `dα` is the pull-back of the sphere's area
//! form. Integrating α along a lifted boundary therefore measures enclosed
//! area.

use crate::error::{Error, Result};
use crate::quat::{arg_circle, Quaternion, SpherePoint, UnitQuaternion};

/// Pairs with `1 + ⟨p, p′⟩ ≤ ANTIPODAL_TOL` are rejected by [`dihedral`].
pub const ANTIPODAL_TOL: f64 = 1e-9;

/// Tolerance on Re(q̄·q̇) accepted by [`alpha_eval`].
pub const TANGENT_TOL: f64 = 1e-8;

/// Tolerance on `π(q) − base` when a fiber point is built from both parts.
pub const LIFT_TOL: f64 = 1e-10;

/// A point of S³ together with its (cached) image on S².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberPoint {
    q: UnitQuaternion,
    base: SpherePoint,
}

impl FiberPoint {
    pub fn new(q: UnitQuaternion) -> Self {
        Self { q, base: hopf_project(q) }
    }

    /// Builds a fiber point from a quaternion and the base point it is
    /// claimed to lie over, checking the claim to [`LIFT_TOL`].
    pub fn with_base(q: UnitQuaternion, base: SpherePoint) -> Result<Self> {
        let err = (hopf_project(q).vec() - base.vec()).norm();
        if err > LIFT_TOL {
            return Err(Error::InvalidLift { index: 0, error: err });
        }
        Ok(Self { q, base })
    }

    pub(crate) fn from_parts(q: UnitQuaternion, base: SpherePoint) -> Self {
        Self { q, base }
    }

    pub fn q(&self) -> UnitQuaternion {
        self.q
    }

    pub fn base(&self) -> SpherePoint {
        self.base
    }

    /// Moves along the fiber: `q ↦ q·e^{−𝕚θ}`. The base point is unchanged.
    pub fn shifted(&self, theta: f64) -> Self {
        Self { q: self.q.fiber_shift(theta), base: self.base }
    }
}

/// Hopf projection `q𝕚q̄`.
pub fn hopf_project(q: UnitQuaternion) -> SpherePoint {
    let q = q.quaternion();
    // q𝕚q̄ expanded; the first column of the rotation matrix of q
    let v = crate::vector::Vec3::new(
        q.w * q.w + q.x * q.x - q.y * q.y - q.z * q.z,
        2.0 * (q.x * q.y + q.w * q.z),
        2.0 * (q.x * q.z - q.w * q.y),
    );
    SpherePoint::new_unchecked(v / v.norm())
}

/// The connection form `α = 2 Re(𝕚 q̄ q̇)` evaluated on a tangent vector at `q`.
pub fn alpha_eval(q: UnitQuaternion, qdot: Quaternion) -> Result<f64> {
    let h = q.quaternion().conj() * qdot;
    if h.w.abs() > TANGENT_TOL * qdot.norm().max(1.0) {
        return Err(Error::NotTangent { residual: h.w });
    }
    // Re(𝕚 h) = −h.x
    Ok(-2.0 * h.x)
}

/// Minimal rotation carrying `p` to `p2`, as a unit quaternion.
pub fn dihedral(p: SpherePoint, p2: SpherePoint) -> Result<UnitQuaternion> {
    dihedral_with_tol(p, p2, ANTIPODAL_TOL)
}

pub fn dihedral_with_tol(p: SpherePoint, p2: SpherePoint, antipodal_tol: f64) -> Result<UnitQuaternion> {
    let d = p.dot(p2);
    if !(1.0 + d > antipodal_tol) {
        return Err(Error::AntipodalPair { dot: d });
    }
    Ok(dihedral_unchecked(p, p2))
}

#[inline]
pub(crate) fn dihedral_unchecked(p: SpherePoint, p2: SpherePoint) -> UnitQuaternion {
    let d = p.dot(p2);
    let w = ((1.0 + d) * 0.5).sqrt();
    let v = p.cross(p2) / (2.0 + 2.0 * d).sqrt();
    UnitQuaternion::renormalized(Quaternion::from_parts(w, v))
}

/// Globally defined lift of a sphere point, branching on the sign of ⟨p, 𝕚⟩
/// so the dihedral is never evaluated near an antipodal pair.
pub fn canonical_lift(p: SpherePoint) -> FiberPoint {
    let q = if p.x() >= 0.0 {
        dihedral_unchecked(SpherePoint::I, p)
    } else {
        let r = dihedral_unchecked(SpherePoint::I.antipode(), p);
        UnitQuaternion::new_unchecked(r.quaternion() * Quaternion::J)
    };
    FiberPoint::from_parts(q, p)
}

/// Endpoint of the horizontal lift of the great-circle arc from `q.base()`
/// to `p2`, starting at `q`.
pub fn horizontal_transport(q: &FiberPoint, p2: SpherePoint) -> Result<FiberPoint> {
    let r = dihedral(q.base, p2)?;
    Ok(FiberPoint::from_parts(r * q.q, p2))
}

/// ∫α along any lift of the arc `q.base() → q2.base()` that starts at `q`
/// and ends at `q2`: `2 arg(q̄₂ · Dihedral(p, p₂) · q)`, in (−2π, 2π].
pub fn edge_term(q: &FiberPoint, q2: &FiberPoint) -> Result<f64> {
    let r = dihedral(q.base, q2.base)?;
    edge_term_with(q.q, r, q2.q)
}

#[inline]
pub(crate) fn edge_term_with(q: UnitQuaternion, r: UnitQuaternion, q2: UnitQuaternion) -> Result<f64> {
    let h = q2.quaternion().conj() * r.quaternion() * q.quaternion();
    Ok(2.0 * arg_circle(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::AngleMod4Pi;
    use crate::quat::{exp_im, rotate_vector};
    use crate::vector::Vec3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn rand_sphere(rng: &mut impl Rng) -> SpherePoint {
        loop {
            let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let n = v.norm();
            if n > 0.1 && n <= 1.0 {
                return SpherePoint::from_vec(v).unwrap();
            }
        }
    }

    fn rand_unit(rng: &mut impl Rng) -> UnitQuaternion {
        loop {
            let q = Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let n = q.norm();
            if n > 0.1 && n <= 1.0 {
                return UnitQuaternion::renormalized(q);
            }
        }
    }

    fn qclose(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn uq(w: f64, x: f64, y: f64, z: f64) -> UnitQuaternion {
        UnitQuaternion::new(Quaternion::new(w, x, y, z)).unwrap()
    }

    #[test]
    fn projection_examples() {
        assert_eq!(hopf_project(UnitQuaternion::IDENTITY).vec(), Vec3::X);
        for th in [0.1, 1.7, 3.0] {
            let p = hopf_project(UnitQuaternion::IDENTITY.fiber_shift(th));
            assert!((p.vec() - Vec3::X).norm() < 1e-15);
        }
        let p = hopf_project(uq(1.0, 0.0, 1.0, 0.0));
        assert!((p.vec() - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn projection_matches_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..1000 {
            let q = rand_unit(&mut rng);
            let direct = (q.quaternion() * Quaternion::I * q.quaternion().conj()).imag();
            let p = hopf_project(q);
            assert!((p.vec() - direct).norm() < 1e-14);
            assert!((p.vec().norm() - 1.0).abs() < 1e-12);
            let shifted = hopf_project(q.fiber_shift(rng.gen_range(-PI..PI)));
            assert!((shifted.vec() - p.vec()).norm() < 1e-14);
        }
    }

    #[test]
    fn alpha_on_fiber_generator() {
        // d/dθ (q e^{−𝕚θ}) at θ = 0 is −q𝕚, and α/2 of it is 1
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let q = rand_unit(&mut rng);
            let gen = -(q.quaternion() * Quaternion::I);
            assert!((alpha_eval(q, gen).unwrap() - 2.0).abs() < 1e-14);
            assert!((alpha_eval(q, -gen).unwrap() + 2.0).abs() < 1e-14);
        }
        assert_eq!(alpha_eval(UnitQuaternion::IDENTITY, Quaternion::J).unwrap(), 0.0);
    }

    #[test]
    fn alpha_rejects_non_tangent() {
        let r = alpha_eval(UnitQuaternion::IDENTITY, Quaternion::ONE);
        assert!(matches!(r, Err(Error::NotTangent { .. })));
    }

    #[test]
    fn alpha_vanishes_on_horizontal_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let q = rand_unit(&mut rng);
            let base = hopf_project(q);
            let w = rand_sphere(&mut rng).vec();
            let v = (w - base.vec() * w.dot(base.vec())) * rng.gen_range(0.1..2.0);
            let t = rng.gen_range(0.0..1.0);
            let h = 1e-4;
            let path = |s: f64| (exp_im(v * (s * 0.5)) * q).quaternion();
            let qt = UnitQuaternion::renormalized(path(t));
            let exact = Quaternion::pure(v * 0.5) * qt.quaternion();
            assert!(alpha_eval(qt, exact).unwrap().abs() < 1e-14);
            // five-point stencil as an independent check on the derivative
            let fd = (path(t - 2.0 * h) - path(t + 2.0 * h) + (path(t + h) - path(t - h)).scale(8.0)).scale(1.0 / (12.0 * h));
            assert!((fd - exact).norm() < 1e-9);
            assert!(alpha_eval(qt, fd).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn dihedral_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let p = rand_sphere(&mut rng);
            assert!(qclose(dihedral(p, p).unwrap().quaternion(), Quaternion::ONE, 1e-15));
        }
        let d = dihedral(SpherePoint::I, SpherePoint::J).unwrap();
        assert!(qclose(d.quaternion(), Quaternion::new(FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2), 1e-15));
        let near = SpherePoint::new(-1.0, 1e-12, 0.0).unwrap();
        assert!(matches!(dihedral(SpherePoint::I, near), Err(Error::AntipodalPair { .. })));
    }

    #[test]
    fn dihedral_rotates_p_to_p2() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..10_000 {
            let (p, p2) = (rand_sphere(&mut rng), rand_sphere(&mut rng));
            if p.dot(p2) < -0.999 {
                continue;
            }
            let r = dihedral(p, p2).unwrap();
            assert!((rotate_vector(r, p).vec() - p2.vec()).norm() < 1e-10);
        }
    }

    #[test]
    fn canonical_lift_examples() {
        assert_eq!(canonical_lift(SpherePoint::I).q().quaternion(), Quaternion::ONE);
        let q = canonical_lift(SpherePoint::I.antipode()).q().quaternion();
        assert!(qclose(q, Quaternion::J, 1e-15));
        let q = canonical_lift(SpherePoint::K).q().quaternion();
        assert!(qclose(q, Quaternion::new(FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2, 0.0), 1e-15));
        assert!((hopf_project(canonical_lift(SpherePoint::K).q()).vec() - Vec3::Z).norm() < 1e-15);
    }

    #[test]
    fn canonical_lift_projects_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let mut worst = 0.0f64;
        for _ in 0..100_000 {
            let p = rand_sphere(&mut rng);
            let fp = canonical_lift(p);
            worst = worst.max((hopf_project(fp.q()).vec() - p.vec()).norm());
        }
        assert!(worst < 1e-10, "worst lift error {worst}");
    }

    #[test]
    fn with_base_validates() {
        assert!(FiberPoint::with_base(UnitQuaternion::IDENTITY, SpherePoint::I).is_ok());
        assert!(FiberPoint::with_base(UnitQuaternion::IDENTITY, SpherePoint::J).is_err());
    }

    #[test]
    fn transport_examples() {
        let q = canonical_lift(SpherePoint::new(0.2, 0.3, -0.9).unwrap());
        let same = horizontal_transport(&q, q.base()).unwrap();
        assert!(qclose(same.q().quaternion(), q.q().quaternion(), 1e-15));

        // octant i → j → k → i starting at 1 ends at e^{𝕚π/4}
        let mut fp = canonical_lift(SpherePoint::I);
        for p in [SpherePoint::J, SpherePoint::K, SpherePoint::I] {
            fp = horizontal_transport(&fp, p).unwrap();
        }
        let expected = Quaternion::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0);
        assert!(qclose(fp.q().quaternion(), expected, 1e-15));

        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..1000 {
            let q = FiberPoint::new(rand_unit(&mut rng));
            let p2 = rand_sphere(&mut rng);
            if q.base().dot(p2) < -0.999 {
                continue;
            }
            let out = horizontal_transport(&q, p2).unwrap();
            assert!((hopf_project(out.q()).vec() - p2.vec()).norm() < 1e-10);
        }
    }

    #[test]
    fn edge_term_examples() {
        let q = canonical_lift(SpherePoint::new(1.0, 2.0, 3.0).unwrap());
        assert_eq!(edge_term(&q, &q).unwrap(), 0.0);
        let a = canonical_lift(SpherePoint::I);
        let b = canonical_lift(SpherePoint::J);
        assert!(edge_term(&a, &b).unwrap().abs() < 1e-15);
    }

    #[test]
    fn edge_term_is_phase_covariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let q = canonical_lift(rand_sphere(&mut rng));
            let q2 = canonical_lift(rand_sphere(&mut rng));
            if q.base().dot(q2.base()) < -0.99 {
                continue;
            }
            let (a, b) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let base = edge_term(&q, &q2).unwrap();
            let moved = edge_term(&q.shifted(a), &q2.shifted(b)).unwrap();
            let expect = AngleMod4Pi::new(base + 2.0 * b - 2.0 * a);
            assert!(AngleMod4Pi::new(moved).approx_eq(expect, 1e-10));
            let only_end = edge_term(&q, &q2.shifted(a)).unwrap();
            assert!(AngleMod4Pi::new(only_end).approx_eq(AngleMod4Pi::new(base + 2.0 * a), 1e-10));
        }
    }
}
