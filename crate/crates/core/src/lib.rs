//! Signed areas of spherical polygons from the Hopf fibration.
//!
//! The area enclosed by a closed curve on S² is the integral of the
//! connection form α over any lift of the curve to S³. Along a lifted
//! great-circle arc that integral has a closed form, so the area of a
//! polygon is a sum of per-edge terms that never look at vertex angles.
//! This makes it robust for zero-length edges, fold-backs, cusps and
//! curves whose tangent spins without bound, where the classical
//! exterior-angle formula breaks down.
//!
//! ```
//! use hopf_area::{area_hopf, SphericalPolygon, SpherePoint};
//!
//! let octant = SphericalPolygon::new(vec![SpherePoint::I, SpherePoint::J, SpherePoint::K]);
//! let area = area_hopf(&octant, None).unwrap().area;
//! assert!((area.radians() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
//! ```

// `!(x > tol)` is used on purpose so that NaN lands in the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angle;
pub mod cli;
pub mod curves;
pub mod error;
pub mod hopf;
pub mod io;
pub mod oracle;
pub mod polygon;
pub mod quat;
pub mod summation;
pub mod torsion;
pub mod vector;

pub use angle::AngleMod4Pi;
pub use error::{Error, Result};
pub use hopf::{alpha_eval, canonical_lift, dihedral, edge_term, hopf_project, horizontal_transport, FiberPoint};
pub use polygon::{
    area_gauss_bonnet, area_hopf, area_horizontal, area_pole_fan, preprocess_antipodal, signed_area, AreaMethod,
    AreaResult, SphericalPolygon,
};
pub use quat::{arg_circle, exp_im, quat_mul, rotate_vector, Quaternion, SpherePoint, UnitQuaternion};
pub use torsion::{total_torsion, unit_velocity_polygon, SpacePolygon};
pub use vector::Vec3;
