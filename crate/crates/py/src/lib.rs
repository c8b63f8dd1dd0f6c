//! Python module `hopf_area`.
//!
//! Points are passed as `(x, y, z)` tuples and quaternions as the
//! [`PyQuaternion`] class. Numerical failures raise `hopf_area.GeometryError`
//! (a `ValueError`) whose message starts with the same token the CLI prints.

use hopf_area::curves::{Curve, Sampled};
use hopf_area::oracle;
use hopf_area::polygon::{self, AreaMethod};
use hopf_area::{hopf, Error, FiberPoint, Quaternion, SpacePolygon, SpherePoint, SphericalPolygon, UnitQuaternion, Vec3};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(hopf_area, GeometryError, PyValueError, "A geometric computation hit a degenerate configuration.");

type Point = (f64, f64, f64);

fn geometry_err(e: Error) -> PyErr {
    let msg = match e.index() {
        Some(i) => format!("{} index={i}: {e}", e.token()),
        None => format!("{}: {e}", e.token()),
    };
    GeometryError::new_err(msg)
}

fn sphere_point((x, y, z): Point) -> PyResult<SpherePoint> {
    SpherePoint::new(x, y, z).map_err(geometry_err)
}

fn point(v: Vec3) -> Point {
    (v.x, v.y, v.z)
}

fn parse_method(name: &str) -> PyResult<AreaMethod> {
    name.parse().map_err(|e: polygon::UnknownMethod| PyValueError::new_err(e.to_string()))
}

fn to_polygon(vertices: Vec<Point>) -> PyResult<SphericalPolygon> {
    vertices.into_iter().map(sphere_point).collect::<PyResult<Vec<_>>>().map(SphericalPolygon::new)
}

/// A quaternion `w + x i + y j + z k`.
#[pyclass(name = "Quaternion", module = "hopf_area", frozen, eq, from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub struct PyQuaternion(pub Quaternion);

#[pymethods]
impl PyQuaternion {
    #[new]
    fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self(Quaternion::new(w, x, y, z))
    }

    #[getter]
    fn w(&self) -> f64 {
        self.0.w
    }

    #[getter]
    fn x(&self) -> f64 {
        self.0.x
    }

    #[getter]
    fn y(&self) -> f64 {
        self.0.y
    }

    #[getter]
    fn z(&self) -> f64 {
        self.0.z
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    #[allow(clippy::wrong_self_convention)]
    fn to_tuple(&self) -> (f64, f64, f64, f64) {
        (self.0.w, self.0.x, self.0.y, self.0.z)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    fn __repr__(&self) -> String {
        format!("Quaternion({}, {}, {}, {})", self.0.w, self.0.x, self.0.y, self.0.z)
    }
}

impl PyQuaternion {
    fn unit(&self) -> PyResult<UnitQuaternion> {
        UnitQuaternion::new(self.0).map_err(geometry_err)
    }
}

/// A closed polygon on the unit sphere.
#[pyclass(name = "SphericalPolygon", module = "hopf_area", frozen)]
pub struct PySphericalPolygon(SphericalPolygon);

#[pymethods]
impl PySphericalPolygon {
    /// Vertices are normalized onto the sphere.
    #[new]
    fn new(vertices: Vec<Point>) -> PyResult<Self> {
        to_polygon(vertices).map(Self)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn vertices(&self) -> Vec<Point> {
        self.0.vertices().iter().map(|p| point(p.vec())).collect()
    }

    fn reversed(&self) -> Self {
        Self(self.0.reversed())
    }

    /// Signed area in (-2π, 2π].
    #[pyo3(signature = (method = "hopf", pole = None))]
    fn area(&self, method: &str, pole: Option<Point>) -> PyResult<f64> {
        area_of(&self.0, method, pole)
    }

    /// Per-edge terms of the Hopf formula.
    fn edge_terms(&self) -> PyResult<Vec<f64>> {
        let r = polygon::area_hopf_detailed(&self.0, None).map_err(geometry_err)?;
        Ok(r.edge_terms.unwrap_or_default())
    }

    fn __repr__(&self) -> String {
        format!("SphericalPolygon(<{} vertices>)", self.0.len())
    }
}

fn area_of(poly: &SphericalPolygon, method: &str, pole: Option<Point>) -> PyResult<f64> {
    let pole = pole.map(sphere_point).transpose()?;
    let r = polygon::signed_area(poly, parse_method(method)?, pole).map_err(geometry_err)?;
    Ok(r.radians())
}

/// Signed area of the polygon through `vertices`, in (-2π, 2π].
#[pyfunction]
#[pyo3(signature = (vertices, method = "hopf", pole = None))]
fn signed_area(vertices: Vec<Point>, method: &str, pole: Option<Point>) -> PyResult<f64> {
    area_of(&to_polygon(vertices)?, method, pole)
}

/// Total torsion `2π − Area(tangent indicatrix)` of a closed space polygon.
#[pyfunction]
#[pyo3(signature = (points, method = "hopf"))]
fn total_torsion(points: Vec<Point>, method: &str) -> PyResult<f64> {
    let curve: SpacePolygon = points.into_iter().map(|(x, y, z)| Vec3::new(x, y, z)).collect();
    let t = hopf_area::total_torsion(&curve, parse_method(method)?).map_err(geometry_err)?;
    Ok(t.radians())
}

/// Minimal rotation carrying `p` to `p2`.
#[pyfunction]
fn dihedral(p: Point, p2: Point) -> PyResult<PyQuaternion> {
    let d = hopf::dihedral(sphere_point(p)?, sphere_point(p2)?).map_err(geometry_err)?;
    Ok(PyQuaternion(d.quaternion()))
}

/// `q i q̄`, the base point of `q`.
#[pyfunction]
fn hopf_project(q: PyQuaternion) -> PyResult<Point> {
    Ok(point(hopf::hopf_project(q.unit()?).vec()))
}

#[pyfunction]
fn canonical_lift(p: Point) -> PyResult<PyQuaternion> {
    Ok(PyQuaternion(hopf::canonical_lift(sphere_point(p)?).q().quaternion()))
}

/// `2 arg(q̄2 · Dihedral(π(q), π(q2)) · q)`.
#[pyfunction]
fn edge_term(q: PyQuaternion, q2: PyQuaternion) -> PyResult<f64> {
    let (a, b) = (FiberPoint::new(q.unit()?), FiberPoint::new(q2.unit()?));
    hopf::edge_term(&a, &b).map_err(geometry_err)
}

/// Signed solid angle of the spherical triangle `(a, b, c)`.
#[pyfunction]
fn solid_angle_triangle(a: Point, b: Point, c: Point) -> PyResult<f64> {
    oracle::solid_angle_triangle(sphere_point(a)?, sphere_point(b)?, sphere_point(c)?).map_err(geometry_err)
}

/// Samples of `cardioid`, `figure-eight`, `trefoil` or `non-frenet`.
#[pyfunction]
fn sample_curve(name: &str, n: usize) -> PyResult<Vec<Point>> {
    let curve: Curve = name.parse().map_err(PyValueError::new_err)?;
    let sampled: Sampled = curve.sample(n).map_err(geometry_err)?;
    Ok(sampled.points().into_iter().map(point).collect())
}

#[pymodule]
#[pyo3(name = "hopf_area")]
pub fn hopf_area_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GeometryError", m.py().get_type::<GeometryError>())?;
    m.add("METHODS", AreaMethod::ALL.map(AreaMethod::name).to_vec())?;
    m.add_class::<PyQuaternion>()?;
    m.add_class::<PySphericalPolygon>()?;
    m.add_function(wrap_pyfunction!(signed_area, m)?)?;
    m.add_function(wrap_pyfunction!(total_torsion, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral, m)?)?;
    m.add_function(wrap_pyfunction!(hopf_project, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_lift, m)?)?;
    m.add_function(wrap_pyfunction!(edge_term, m)?)?;
    m.add_function(wrap_pyfunction!(solid_angle_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(sample_curve, m)?)?;
    Ok(())
}
