//! Seeded random geometry shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use hopf_area::{Quaternion, SpacePolygon, SpherePoint, SphericalPolygon, UnitQuaternion, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on S² by rejection from the cube.
pub fn sphere_point(rng: &mut impl Rng) -> SpherePoint {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return SpherePoint::from_vec(v).unwrap();
        }
    }
}

/// Uniform on S³ (Haar measure on rotations) by rejection from the 4-cube.
pub fn unit_quaternion(rng: &mut impl Rng) -> UnitQuaternion {
    loop {
        let q = Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = q.norm();
        if n > 1e-3 && n <= 1.0 {
            return UnitQuaternion::new(q.scale(1.0 / n)).unwrap();
        }
    }
}

/// Orthonormal tangent basis at `c`.
fn tangent_basis(c: Vec3) -> (Vec3, Vec3) {
    let helper = if c.x.abs() < 0.9 { Vec3::X } else { Vec3::Y };
    let e1 = c.cross(helper);
    let e1 = e1 / e1.norm();
    (e1, c.cross(e1))
}

/// A simple polygon: star-shaped in the gnomonic chart around a random
/// centre, so its edges never cross. Every vertex lies within
/// `max_radius` radians of the centre (keep it below π/2). Exterior angles
/// stay well away from 0 and π, so the angle-based formulas keep full
/// precision. Orientation is random.
pub fn simple_polygon(rng: &mut impl Rng, n: usize, max_radius: f64) -> SphericalPolygon {
    let c = sphere_point(rng).vec();
    let (e1, e2) = tangent_basis(c);
    let gaps: Vec<f64> = (0..n).map(|_| rng.gen_range(0.6..1.4)).collect();
    let total: f64 = gaps.iter().sum();
    let start = rng.gen_range(0.0..TAU);
    let mut phi = start;
    let mut verts = Vec::with_capacity(n);
    for g in gaps {
        let r = rng.gen_range(0.35..1.0) * max_radius.tan();
        verts.push(SpherePoint::from_vec(c + e1 * (r * phi.cos()) + e2 * (r * phi.sin())).unwrap());
        phi += TAU * g / total;
    }
    let poly = SphericalPolygon::new(verts);
    if rng.gen_bool(0.5) {
        poly.reversed()
    } else {
        poly
    }
}

/// Random vertices with consecutive dots above `min_dot`; generally
/// self-intersecting.
pub fn random_polygon(rng: &mut impl Rng, n: usize, min_dot: f64) -> SphericalPolygon {
    loop {
        let verts: Vec<SpherePoint> = (0..n).map(|_| sphere_point(rng)).collect();
        let ok = (0..n).all(|i| verts[i].dot(verts[(i + 1) % n]) > min_dot);
        if ok {
            return SphericalPolygon::new(verts);
        }
    }
}

/// Smooth random closed space curve (a few Fourier modes) sampled at `n` points.
pub fn random_space_curve(rng: &mut impl Rng, n: usize) -> SpacePolygon {
    let modes: Vec<[f64; 6]> = (1..=3)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
        .collect();
    (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            let mut v = Vec3::ZERO;
            for (k, m) in modes.iter().enumerate() {
                let f = (k + 1) as f64;
                let (s, c) = (f * t).sin_cos();
                v += Vec3::new(m[0] * c + m[1] * s, m[2] * c + m[3] * s, m[4] * c + m[5] * s);
            }
            v
        })
        .collect()
}

/// Rotates every vertex by the 3×3 matrix of `r`.
pub fn rotate_space(curve: &SpacePolygon, r: UnitQuaternion, shift: Vec3) -> SpacePolygon {
    curve.map(|v| {
        let q = r.quaternion() * Quaternion::pure(v) * r.quaternion().conj();
        q.imag() + shift
    })
}
