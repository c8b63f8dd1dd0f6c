//! Vertex files and convergence-study tables.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! sampled curve written to disk parses back to bit-identical doubles.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{Curve, Sampled};
use crate::polygon::{signed_area, AreaMethod, SphericalPolygon};
use crate::quat::SpherePoint;
use crate::torsion::{total_torsion, SpacePolygon};
use crate::vector::Vec3;

/// Spherical inputs whose norm is further than this from 1 are rejected.
pub const UNIT_INPUT_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("vertex {index} has norm {norm}, expected a unit vector")]
    NotUnit { index: usize, norm: f64 },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl InputError {
    pub fn token(&self) -> &'static str {
        match self {
            InputError::Parse { .. } => "ParseError",
            InputError::NotUnit { .. } => "NotUnit",
            InputError::Io(_) => "IoError",
        }
    }

    fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        InputError::Parse { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexFormat {
    #[default]
    Csv,
    Json,
}

impl VertexFormat {
    /// `json` for `*.json` paths, otherwise `csv`.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => VertexFormat::Json,
            _ => VertexFormat::Csv,
        }
    }
}

impl FromStr for VertexFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(VertexFormat::Csv),
            "json" => Ok(VertexFormat::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VertexFile {
    vertices: Vec<[f64; 3]>,
}

/// Reads raw `x,y,z` triples.
pub fn parse_points(input: &str, format: VertexFormat) -> Result<Vec<Vec3>, InputError> {
    match format {
        VertexFormat::Csv => parse_csv(input),
        VertexFormat::Json => parse_json(input),
    }
}

fn parse_csv(input: &str) -> Result<Vec<Vec3>, InputError> {
    let mut points = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("").trim_end_matches('\r');
        if body.trim().is_empty() {
            continue;
        }
        let mut coords = [0.0; 3];
        let mut count = 0;
        let mut offset = 0;
        for field in body.split(',') {
            let column = offset + 1 + (field.len() - field.trim_start().len());
            offset += field.len() + 1;
            if count == 3 {
                return Err(InputError::parse(line, column, "expected 3 fields, found more"));
            }
            let text = field.trim();
            let value: f64 = text
                .parse()
                .map_err(|_| InputError::parse(line, column, format!("`{text}` is not a number")))?;
            if !value.is_finite() {
                return Err(InputError::parse(line, column, format!("`{text}` is not finite")));
            }
            coords[count] = value;
            count += 1;
        }
        if count != 3 {
            return Err(InputError::parse(line, body.len() + 1, format!("expected 3 fields, found {count}")));
        }
        points.push(Vec3::from(coords));
    }
    Ok(points)
}

fn parse_json(input: &str) -> Result<Vec<Vec3>, InputError> {
    let file: VertexFile =
        serde_json::from_str(input).map_err(|e| InputError::parse(e.line(), e.column(), e.to_string()))?;
    file.vertices
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            if v.iter().all(|c| c.is_finite()) {
                Ok(Vec3::from(v))
            } else {
                Err(InputError::parse(0, 0, format!("vertex {i} is not finite")))
            }
        })
        .collect()
}

/// Parses a spherical polygon, renormalizing vertices that are unit to
/// within [`UNIT_INPUT_TOL`].
pub fn parse_spherical(input: &str, format: VertexFormat) -> Result<SphericalPolygon, InputError> {
    parse_points(input, format)?
        .into_iter()
        .enumerate()
        .map(|(index, v)| {
            let norm = v.norm();
            if (norm - 1.0).abs() > UNIT_INPUT_TOL {
                return Err(InputError::NotUnit { index, norm });
            }
            Ok(SpherePoint::from_vec(v).expect("norm is close to one"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(SphericalPolygon::new)
}

pub fn parse_space(input: &str, format: VertexFormat) -> Result<SpacePolygon, InputError> {
    parse_points(input, format).map(SpacePolygon::new)
}

pub fn read_to_string(mut r: impl Read) -> Result<String, InputError> {
    let mut s = String::new();
    r.read_to_string(&mut s)?;
    Ok(s)
}

pub fn write_points(mut w: impl Write, points: &[Vec3], format: VertexFormat) -> io::Result<()> {
    match format {
        VertexFormat::Csv => {
            for p in points {
                writeln!(w, "{},{},{}", p.x, p.y, p.z)?;
            }
        }
        VertexFormat::Json => {
            let file = VertexFile { vertices: points.iter().map(|p| p.to_array()).collect() };
            serde_json::to_writer(&mut w, &file)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

/// Positional decimal with `digits` significant digits, e.g. `0.50000000000000000`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", digits.saturating_sub(1), x);
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let (sign, mantissa) = mantissa.strip_prefix('-').map_or(("", mantissa), |m| ("-", m));
    let figures: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::from(sign);
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&figures);
    } else {
        let int_len = exp as usize + 1;
        if int_len >= figures.len() {
            out.push_str(&figures);
            out.extend(std::iter::repeat_n('0', int_len - figures.len()));
        } else {
            let _ = write!(out, "{}.{}", &figures[..int_len], &figures[int_len..]);
        }
    }
    out
}

/// One `(n, method)` measurement of a convergence sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub method: AreaMethod,
    /// Area for spherical curves, total torsion for space curves; NaN on failure.
    pub value: f64,
    pub runtime_ns: u64,
    /// Error token when the method failed at this `n`.
    pub error: Option<&'static str>,
}

/// Geometric progression `n_min, n_min·factor, …` capped at `n_max`.
/// Rounding never repeats a size.
pub fn sweep_sizes(n_min: usize, n_max: usize, factor: f64) -> Vec<usize> {
    assert!(factor > 1.0, "sweep factor must exceed 1");
    let mut sizes = Vec::new();
    let mut n = n_min;
    while n <= n_max {
        sizes.push(n);
        n = ((n as f64 * factor).round() as usize).max(n + 1);
    }
    sizes
}

/// Area or torsion of `sampled` by `method`.
pub fn measure(sampled: &Sampled, method: AreaMethod) -> crate::Result<f64> {
    match sampled {
        Sampled::Sphere(poly) => signed_area(poly, method, None).map(|r| r.radians()),
        Sampled::Space(curve) => total_torsion(curve, method).map(|t| t.radians()),
    }
}

/// Samples `curve` at every size and evaluates every method. Failures are
/// recorded in the row and do not stop the sweep.
pub fn convergence_sweep(curve: Curve, methods: &[AreaMethod], sizes: &[usize]) -> Vec<ConvergenceRow> {
    let mut rows = Vec::with_capacity(sizes.len() * methods.len());
    for &n in sizes {
        let sampled = curve.sample(n);
        for &method in methods {
            let start = Instant::now();
            let result = sampled.as_ref().map_err(Clone::clone).and_then(|s| measure(s, method));
            let runtime_ns = start.elapsed().as_nanos().try_into().unwrap_or(u64::MAX);
            let (value, error) = match result {
                Ok(v) => (v, None),
                Err(e) => (f64::NAN, Some(e.token())),
            };
            rows.push(ConvergenceRow { n, method, value, runtime_ns, error });
        }
    }
    rows
}

/// Header `n,method,value,runtime_ns`, plus an `error` column when any row failed.
pub fn write_convergence_csv(mut w: impl Write, rows: &[ConvergenceRow]) -> io::Result<()> {
    let with_errors = rows.iter().any(|r| r.error.is_some());
    write!(w, "n,method,value,runtime_ns")?;
    if with_errors {
        write!(w, ",error")?;
    }
    writeln!(w)?;
    for r in rows {
        let value = if r.value.is_nan() { "nan".to_string() } else { r.value.to_string() };
        write!(w, "{},{},{},{}", r.n, r.method.name(), value, r.runtime_ns)?;
        if with_errors {
            write!(w, ",{}", r.error.unwrap_or(""))?;
        }
        writeln!(w)?;
    }
    Ok(())
}
