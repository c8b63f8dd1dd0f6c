//! Test curves, sampled uniformly at `t_i = 2πi/n`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polygon::SphericalPolygon;
use crate::quat::SpherePoint;
use crate::torsion::SpacePolygon;
use crate::vector::Vec3;

/// Beyond this |t′| the non-Frenet curve is replaced by its analytic limit.
pub const NON_FRENET_T_MAX: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curve {
    /// Stereographic image of the planar cardioid (spherical).
    Cardioid,
    FigureEight,
    Trefoil,
    /// Smooth space curve whose Frenet frame spirals infinitely.
    NonFrenet,
}

impl Curve {
    pub const ALL: [Curve; 4] = [Curve::Cardioid, Curve::FigureEight, Curve::Trefoil, Curve::NonFrenet];

    pub fn name(self) -> &'static str {
        match self {
            Curve::Cardioid => "cardioid",
            Curve::FigureEight => "figure-eight",
            Curve::Trefoil => "trefoil",
            Curve::NonFrenet => "non-frenet",
        }
    }

    /// Spherical curves are measured by area, space curves by total torsion.
    pub fn is_spherical(self) -> bool {
        matches!(self, Curve::Cardioid)
    }

    /// Samples the curve; spherical curves come back as points of S².
    pub fn sample(self, n: usize) -> Result<Sampled> {
        Ok(match self {
            Curve::Cardioid => Sampled::Sphere(cardioid_sphere(n)?),
            Curve::FigureEight => Sampled::Space(figure_eight(n)?),
            Curve::Trefoil => Sampled::Space(trefoil(n)?),
            Curve::NonFrenet => Sampled::Space(non_frenet(n)?),
        })
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Curve {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Curve::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown curve `{s}` (expected cardioid, figure-eight, trefoil or non-frenet)"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sampled {
    Sphere(SphericalPolygon),
    Space(SpacePolygon),
}

impl Sampled {
    pub fn points(&self) -> Vec<Vec3> {
        match self {
            Sampled::Sphere(p) => p.vertices().iter().map(|v| v.vec()).collect(),
            Sampled::Space(p) => p.vertices().to_vec(),
        }
    }
}

/// Sampling parameter for the i-th of n points.
#[inline]
pub fn parameter(i: usize, n: usize) -> f64 {
    TAU * i as f64 / n as f64
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewSamples { n });
    }
    Ok(())
}

/// Samples an arbitrary closed space curve on `[0, 2π)`.
pub fn sample_space_curve(n: usize, f: impl Fn(f64) -> Vec3) -> Result<SpacePolygon> {
    check_n(n)?;
    Ok((0..n).map(|i| f(parameter(i, n))).collect())
}

/// Samples an arbitrary closed curve on the sphere; values are normalized.
pub fn sample_sphere_curve(n: usize, f: impl Fn(f64) -> Vec3) -> Result<SphericalPolygon> {
    check_n(n)?;
    SphericalPolygon::from_vectors((0..n).map(|i| f(parameter(i, n))))
}

/// Inverse stereographic projection from the plane onto S² (origin ↦ south pole).
pub fn stereographic(x: f64, y: f64) -> SpherePoint {
    let r2 = x * x + y * y;
    let d = r2 + 1.0;
    let v = Vec3::new(2.0 * x / d, 2.0 * y / d, (r2 - 1.0) / d);
    // already unit up to rounding; renormalize so the invariant is exact-ish
    SpherePoint::from_vec(v).expect("stereographic image is never zero")
}

pub fn cardioid_plane(t: f64) -> (f64, f64) {
    let r = 2.0 * (1.0 - t.cos());
    (r * t.cos(), r * t.sin())
}

/// Stereographic image of the cardioid `2(1 − cos t)(cos t, sin t)`.
/// Vertex 0 is the cusp at the south pole.
pub fn cardioid_sphere(n: usize) -> Result<SphericalPolygon> {
    check_n(n)?;
    Ok((0..n)
        .map(|i| {
            let (x, y) = cardioid_plane(parameter(i, n));
            stereographic(x, y)
        })
        .collect())
}

pub fn figure_eight_at(t: f64) -> Vec3 {
    let r = 2.0 + (2.0 * t).cos();
    Vec3::new(r * (3.0 * t).cos(), r * (3.0 * t).sin(), (4.0 * t).sin())
}

pub fn trefoil_at(t: f64) -> Vec3 {
    Vec3::new(t.sin() + 2.0 * (2.0 * t).sin(), t.cos() - 2.0 * (2.0 * t).cos(), -(3.0 * t).sin())
}

pub fn figure_eight(n: usize) -> Result<SpacePolygon> {
    sample_space_curve(n, figure_eight_at)
}

pub fn trefoil(n: usize) -> Result<SpacePolygon> {
    sample_space_curve(n, trefoil_at)
}

/// The non-Frenet curve in its own parameter `s = tan((t − π)/2)`:
/// `(e^{−s²} cos(eˢ), e^{−s²} sin(eˢ), s) / (e^{−2s²} + s²)`.
pub fn non_frenet_at_reparam(s: f64) -> Vec3 {
    if !(s.abs() <= NON_FRENET_T_MAX) {
        // the envelope is below e^{-625}; only the axial part survives
        return Vec3::new(0.0, 0.0, 1.0 / s);
    }
    let envelope = (-s * s).exp();
    let denom = (-2.0 * s * s).exp() + s * s;
    let phase = s.exp();
    Vec3::new(envelope * phase.cos() / denom, envelope * phase.sin() / denom, s / denom)
}

pub fn non_frenet_at(t: f64) -> Vec3 {
    non_frenet_at_reparam(((t - PI) / 2.0).tan())
}

pub fn non_frenet(n: usize) -> Result<SpacePolygon> {
    sample_space_curve(n, non_frenet_at)
}
