//! Signed area of spherical polygons.
//!
//! Four formulas are provided:
//!
//! * [`area_hopf`]: sum of closed-form α line integrals over lifted edges,
//!   with an arbitrary lift (canonical by default). Only ever looks at two
//!   vertices at a time, so zero-length and folded-back edges are harmless.
//! * [`area_horizontal`]: the same with the horizontal lift, which collapses
//!   to a single holonomy phase.
//! * [`area_gauss_bonnet`]: `2π − Σ exterior angles`.
//! * [`area_pole_fan`]: signed sum of triangle excesses against a pole.
//!
//! All results live in ℝ/4πℤ.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angle::AngleMod4Pi;
use crate::error::{Error, Result};
use crate::hopf::{canonical_lift, dihedral, edge_term_with, FiberPoint};
use crate::quat::{arg_circle, SpherePoint};
use crate::summation::CompensatedSum;
use crate::vector::Vec3;

/// Edges with `⟨p, p′⟩ ≤ −1 + ANTIPODAL_MARGIN` get a midpoint inserted.
pub const ANTIPODAL_MARGIN: f64 = 1e-6;

/// Below this `|p + p′|` the midpoint of an edge is ambiguous.
pub const EXACT_ANTIPODAL_TOL: f64 = 1e-7;

/// Minimum `|p × p′|` for exterior angles and fan triangles to be defined.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Tolerance on `π(q_i) − p_i` for user-supplied lifts.
pub const SUPPLIED_LIFT_TOL: f64 = 1e-8;

/// Cyclic list of points on the unit sphere joined by shortest arcs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SphericalPolygon {
    vertices: Vec<SpherePoint>,
}

impl SphericalPolygon {
    pub fn new(vertices: Vec<SpherePoint>) -> Self {
        Self { vertices }
    }

    /// Normalizes each vector onto the sphere.
    pub fn from_vectors<I, V>(vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec3>,
    {
        let vertices = vectors
            .into_iter()
            .map(|v| SpherePoint::from_vec(v.into()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[SpherePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> SpherePoint {
        self.vertices[i % self.vertices.len()]
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    /// `(p_i, p_{i+1})` for every edge, including the closing one.
    pub fn edges(&self) -> impl Iterator<Item = (SpherePoint, SpherePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn map(&self, f: impl Fn(SpherePoint) -> SpherePoint) -> Self {
        Self { vertices: self.vertices.iter().copied().map(f).collect() }
    }
}

impl FromIterator<SpherePoint> for SphericalPolygon {
    fn from_iter<I: IntoIterator<Item = SpherePoint>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Which area formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AreaMethod {
    Hopf,
    Horizontal,
    GaussBonnet,
    PoleFan,
    Oracle,
}

impl AreaMethod {
    pub const ALL: [AreaMethod; 5] = [
        AreaMethod::Hopf,
        AreaMethod::Horizontal,
        AreaMethod::GaussBonnet,
        AreaMethod::PoleFan,
        AreaMethod::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AreaMethod::Hopf => "hopf",
            AreaMethod::Horizontal => "horizontal",
            AreaMethod::GaussBonnet => "gauss-bonnet",
            AreaMethod::PoleFan => "pole-fan",
            AreaMethod::Oracle => "oracle",
        }
    }
}

impl fmt::Display for AreaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMethod(pub String);

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown method `{}` (expected hopf, horizontal, gauss-bonnet, pole-fan or oracle)", self.0)
    }
}

impl std::error::Error for UnknownMethod {}

impl FromStr for AreaMethod {
    type Err = UnknownMethod;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        AreaMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMethod(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreaResult {
    pub area: AngleMod4Pi,
    pub method: AreaMethod,
    pub n_edges: usize,
    /// Per-edge contributions, when requested.
    pub edge_terms: Option<Vec<f64>>,
}

impl AreaResult {
    fn new(sum: f64, method: AreaMethod, n_edges: usize) -> Self {
        Self { area: AngleMod4Pi::new(sum), method, n_edges, edge_terms: None }
    }

    pub fn radians(&self) -> f64 {
        self.area.radians()
    }
}

/// Inserts geodesic midpoints into every edge whose endpoints are within
/// [`ANTIPODAL_MARGIN`] of antipodal, until none remain. The curve traced
/// is unchanged.
pub fn preprocess_antipodal(poly: &SphericalPolygon) -> Result<SphericalPolygon> {
    preprocess_antipodal_with_margin(poly, ANTIPODAL_MARGIN)
}

pub fn preprocess_antipodal_with_margin(poly: &SphericalPolygon, margin: f64) -> Result<SphericalPolygon> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n);
    for (i, (p, p2)) in poly.edges().enumerate() {
        out.push(p);
        subdivide(p, p2, margin, i, &mut out)?;
    }
    Ok(SphericalPolygon::new(out))
}

// Pushes the interior points of the arc p → p2 (not p itself).
fn subdivide(p: SpherePoint, p2: SpherePoint, margin: f64, edge: usize, out: &mut Vec<SpherePoint>) -> Result<()> {
    if p.dot(p2) > -1.0 + margin {
        return Ok(());
    }
    let sum = p.vec() + p2.vec();
    let len = sum.norm();
    if !(len >= EXACT_ANTIPODAL_TOL) {
        return Err(Error::ExactlyAntipodal { index: edge });
    }
    let mid = SpherePoint::new_unchecked(sum / len);
    subdivide(p, mid, margin, edge, out)?;
    out.push(mid);
    subdivide(mid, p2, margin, edge, out)
}

/// Area from an arbitrary lift: `2 Σ arg(q̄_{i+1} Dihedral(p_i, p_{i+1}) q_i)`.
///
/// With `lift = None` the canonical lift of every vertex is used. The value
/// does not depend on the lift modulo 4π.
pub fn area_hopf(poly: &SphericalPolygon, lift: Option<&[FiberPoint]>) -> Result<AreaResult> {
    hopf_sum(poly, lift, false)
}

/// [`area_hopf`] that also records each edge's contribution.
pub fn area_hopf_detailed(poly: &SphericalPolygon, lift: Option<&[FiberPoint]>) -> Result<AreaResult> {
    hopf_sum(poly, lift, true)
}

fn hopf_sum(poly: &SphericalPolygon, lift: Option<&[FiberPoint]>, keep_terms: bool) -> Result<AreaResult> {
    let n = poly.len();
    if let Some(lift) = lift {
        if lift.len() != n {
            return Err(Error::LiftLength { expected: n, got: lift.len() });
        }
        for (i, (fp, p)) in lift.iter().zip(poly.vertices()).enumerate() {
            let err = (crate::hopf::hopf_project(fp.q()).vec() - p.vec()).norm();
            if !(err <= SUPPLIED_LIFT_TOL) {
                return Err(Error::InvalidLift { index: i, error: err });
            }
        }
    }
    let lift_at = |i: usize| match lift {
        Some(l) => l[i].q(),
        None => canonical_lift(poly.vertices[i]).q(),
    };

    let mut sum = CompensatedSum::new();
    let mut terms = keep_terms.then(|| Vec::with_capacity(n));
    if n > 0 {
        let first = lift_at(0);
        let mut q = first;
        for i in 0..n {
            let j = (i + 1) % n;
            let q2 = if j == 0 { first } else { lift_at(j) };
            let r = dihedral(poly.vertices[i], poly.vertices[j])?;
            let term = edge_term_with(q, r, q2)?;
            sum.add(term);
            if let Some(t) = terms.as_mut() {
                t.push(term);
            }
            q = q2;
        }
    }
    let mut res = AreaResult::new(sum.value(), AreaMethod::Hopf, n);
    res.edge_terms = terms;
    Ok(res)
}

/// Area from the horizontal lift: transport `q₀` around the polygon by
/// dihedrals and read off `2 arg(q̄₀ q_n)`.
pub fn area_horizontal(poly: &SphericalPolygon) -> Result<AreaResult> {
    let n = poly.len();
    if n == 0 {
        return Ok(AreaResult::new(0.0, AreaMethod::Horizontal, 0));
    }
    let q0 = canonical_lift(poly.vertices[0]).q();
    let mut q = q0;
    for (p, p2) in poly.edges() {
        q = dihedral(p, p2)? * q;
    }
    let phase = arg_circle(q0.quaternion().conj() * q.quaternion())?;
    Ok(AreaResult::new(2.0 * phase, AreaMethod::Horizontal, n))
}

/// Signed exterior angle at `b` for the path `a → b → c`.
fn exterior_angle(a: SpherePoint, b: SpherePoint, c: SpherePoint, index: usize, tol: f64) -> Result<f64> {
    let n1 = a.cross(b);
    let n2 = b.cross(c);
    let (l1, l2) = (n1.norm(), n2.norm());
    if !(l1 > tol && l2 > tol) {
        return Err(Error::DegenerateVertex { index });
    }
    let det = Vec3::triple(a.vec(), b.vec(), c.vec());
    let cos = (n1.dot(n2) / (l1 * l2)).clamp(-1.0, 1.0);
    if !det.is_finite() {
        return Err(Error::DegenerateVertex { index });
    }
    if det == 0.0 {
        // coplanar triple: going straight on turns by zero whatever the sign,
        // folding back turns by ±π and the sign is genuinely undefined
        return if cos > 0.0 { Ok(0.0) } else { Err(Error::DegenerateVertex { index }) };
    }
    Ok(det.signum() * cos.acos())
}

/// Classical formula `2π − Σ_i ϑ_i` with signed exterior angles ϑ_i.
///
/// Fails with [`Error::DegenerateVertex`] wherever an exterior angle is
/// undefined: a zero-length adjacent edge, or a fold-back where the path
/// reverses along one great circle. Only meaningful for polygons bounding a disk traversed once.
pub fn area_gauss_bonnet(poly: &SphericalPolygon) -> Result<AreaResult> {
    area_gauss_bonnet_with_tol(poly, DEGENERATE_TOL)
}

pub fn area_gauss_bonnet_with_tol(poly: &SphericalPolygon, tol: f64) -> Result<AreaResult> {
    let n = poly.len();
    let mut sum = CompensatedSum::new();
    for i in 0..n {
        let prev = poly.vertices[(i + n - 1) % n];
        let next = poly.vertices[(i + 1) % n];
        sum.add(exterior_angle(prev, poly.vertices[i], next, i, tol)?);
    }
    Ok(AreaResult::new(TAU - sum.value(), AreaMethod::GaussBonnet, n))
}

/// Spherical excess of the triangle `(x0, x1, x2)` from its interior angles.
/// Callers must ensure all three edges are non-degenerate.
fn unsigned_triangle_area(x: [SpherePoint; 3]) -> f64 {
    let normal = |a: SpherePoint, b: SpherePoint| {
        let c = a.cross(b);
        c / c.norm()
    };
    let mut excess = -PI;
    for i in 0..3 {
        let a = x[(i + 2) % 3];
        let b = x[i];
        let c = x[(i + 1) % 3];
        // interior angle at b is the angle between b×a and b×c
        let cos = (-normal(a, b).dot(normal(b, c))).clamp(-1.0, 1.0);
        excess += cos.acos();
    }
    excess
}

/// Fan formula: `Σ_i sign det(p_i, p_{i+1}, Z) · UnsignedArea(p_i, p_{i+1}, Z)`.
pub fn area_pole_fan(poly: &SphericalPolygon, pole: SpherePoint) -> Result<AreaResult> {
    area_pole_fan_with_tol(poly, pole, DEGENERATE_TOL)
}

pub fn area_pole_fan_with_tol(poly: &SphericalPolygon, pole: SpherePoint, tol: f64) -> Result<AreaResult> {
    let n = poly.len();
    for (i, p) in poly.vertices.iter().enumerate() {
        if !(p.cross(pole).norm() > tol) {
            return Err(Error::PoleTooClose { index: i });
        }
    }
    let mut sum = CompensatedSum::new();
    for (i, (p, p2)) in poly.edges().enumerate() {
        if !(p.cross(p2).norm() > tol) {
            return Err(Error::DegenerateVertex { index: i });
        }
        let det = Vec3::triple(p.vec(), p2.vec(), pole.vec());
        // a triangle with det = 0 has area 0 or a hemisphere, and ±2π agree mod 4π
        let sign = if det < 0.0 { -1.0 } else { 1.0 };
        sum.add(sign * unsigned_triangle_area([p, p2, pole]));
    }
    Ok(AreaResult::new(sum.value(), AreaMethod::PoleFan, n))
}

/// Unit vectors toward the vertices of a regular icosahedron, in a fixed order.
pub fn icosahedron_vertices() -> [SpherePoint; 12] {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [0.0, 1.0, phi],
        [0.0, -1.0, phi],
        [0.0, 1.0, -phi],
        [0.0, -1.0, -phi],
        [1.0, phi, 0.0],
        [-1.0, phi, 0.0],
        [1.0, -phi, 0.0],
        [-1.0, -phi, 0.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, 1.0],
        [phi, 0.0, -1.0],
        [-phi, 0.0, -1.0],
    ];
    raw.map(|v| SpherePoint::from_vec(Vec3::from(v)).expect("nonzero"))
}

/// Is `pole` usable for a fan decomposition of `poly` at tolerance `tol`?
pub fn pole_is_valid(poly: &SphericalPolygon, pole: SpherePoint, tol: f64) -> bool {
    poly.vertices.iter().all(|p| p.cross(pole).norm() > tol)
}

/// Deterministic pole choice: the normalized vertex sum if usable, else the
/// first usable icosahedron vertex.
pub fn default_pole(poly: &SphericalPolygon) -> Result<SpherePoint> {
    // a pole too close to a vertex makes the fan triangles ill-conditioned,
    // so ask for more clearance than the hard failure threshold
    const CLEARANCE: f64 = 1e-3;
    let sum = poly.vertices.iter().fold(Vec3::ZERO, |acc, p| acc + p.vec());
    let candidates = SpherePoint::from_vec(sum).into_iter().chain(icosahedron_vertices());
    for z in candidates {
        if pole_is_valid(poly, z, CLEARANCE) {
            return Ok(z);
        }
    }
    Err(Error::NoValidPole)
}

/// Preprocesses near-antipodal edges, then evaluates `method`.
///
/// `pole` is used by the pole-fan and oracle methods; when absent,
/// [`default_pole`] picks one.
pub fn signed_area(poly: &SphericalPolygon, method: AreaMethod, pole: Option<SpherePoint>) -> Result<AreaResult> {
    let poly = preprocess_antipodal(poly)?;
    let pole = match (method, pole) {
        (AreaMethod::PoleFan | AreaMethod::Oracle, None) => Some(default_pole(&poly)?),
        (_, p) => p,
    };
    match method {
        AreaMethod::Hopf => area_hopf(&poly, None),
        AreaMethod::Horizontal => area_horizontal(&poly),
        AreaMethod::GaussBonnet => area_gauss_bonnet(&poly),
        AreaMethod::PoleFan => area_pole_fan(&poly, pole.expect("pole chosen above")),
        AreaMethod::Oracle => {
            let n = poly.len();
            crate::oracle::area_fan_oracle(&poly, pole.expect("pole chosen above")).map(|area| AreaResult {
                area,
                method: AreaMethod::Oracle,
                n_edges: n,
                edge_terms: None,
            })
        }
    }
}
