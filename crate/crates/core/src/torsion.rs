//! Total torsion of closed space polygons, `2π − Area(tangent indicatrix)`.

use std::f64::consts::TAU;

use crate::angle::AngleMod4Pi;
use crate::error::{Error, Result};
use crate::polygon::{signed_area, AreaMethod, SphericalPolygon};
use crate::quat::SpherePoint;
use crate::vector::Vec3;

/// Space edges no longer than this are dropped before normalization.
pub const EDGE_DROP_TOL: f64 = 1e-13;

/// Closed polygonal curve in ℝ³.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpacePolygon {
    vertices: Vec<Vec3>,
}

impl SpacePolygon {
    pub fn new(vertices: Vec<Vec3>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn map(&self, f: impl Fn(Vec3) -> Vec3) -> Self {
        Self { vertices: self.vertices.iter().copied().map(f).collect() }
    }
}

impl FromIterator<Vec3> for SpacePolygon {
    fn from_iter<I: IntoIterator<Item = Vec3>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Normalized edge vectors `(γ_{i+1} − γ_i)/|γ_{i+1} − γ_i|`, skipping
/// zero-length edges.
pub fn unit_velocity_polygon(curve: &SpacePolygon) -> Result<SphericalPolygon> {
    let v = &curve.vertices;
    let n = v.len();
    let tangents: Vec<SpherePoint> = (0..n)
        .filter_map(|i| {
            let e = v[(i + 1) % n] - v[i];
            let len = e.norm();
            (len > EDGE_DROP_TOL && len.is_finite()).then(|| SpherePoint::new_unchecked(e / len))
        })
        .collect();
    if tangents.len() < 3 {
        return Err(Error::TooFewEdges { found: tangents.len() });
    }
    Ok(SphericalPolygon::new(tangents))
}

/// `2π − Area(γ′)` modulo 4π, with the area computed by `method`.
pub fn total_torsion(curve: &SpacePolygon, method: AreaMethod) -> Result<AngleMod4Pi> {
    let tangent = unit_velocity_polygon(curve)?;
    let area = signed_area(&tangent, method, None)?;
    Ok(AngleMod4Pi::new(TAU - area.area.radians()))
}
