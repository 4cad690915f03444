//! Distance-ratio metric `j`, quasihyperbolic distance `k` and sample
//! records pairing the two.

mod grid;
mod sector;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::domains::Domain;
use crate::error::{Error, Result};

pub use grid::{k_grid, k_grid_path, polyline_cost, segment_cost, GridPath, GridSolverConfig};
pub use sector::{half_plane_strip_distance, sector_strip_distance, strip_coordinates};

/// How the `k` value of a sample was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KMethod {
    Exact,
    Grid,
    /// A certified lower bound for `k`, not `k` itself.
    Bound,
}

/// Requested evaluation route for `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QhMethod {
    /// Exact formula when one applies, grid solver otherwise.
    #[default]
    Auto,
    Exact,
    Grid,
}

impl std::str::FromStr for QhMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(QhMethod::Auto),
            "exact" => Ok(QhMethod::Exact),
            "grid" => Ok(QhMethod::Grid),
            other => Err(Error::Config(format!("unknown method {other:?}; expected auto, exact or grid"))),
        }
    }
}

/// A point pair with its `j` and `k` values.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MetricSample {
    pub x: Complex64,
    pub y: Complex64,
    pub j: f64,
    pub k: f64,
    pub k_method: KMethod,
    /// `k / j`, absent when `j = 0`.
    pub ratio: Option<f64>,
}

impl MetricSample {
    pub fn new(x: Complex64, y: Complex64, j: f64, k: f64, k_method: KMethod) -> Self {
        let ratio = (j > 0.0).then(|| k / j);
        MetricSample { x, y, j, k, k_method, ratio }
    }
}

fn check_inside(domain: &Domain, z: Complex64) -> Result<()> {
    if domain.contains(z) {
        Ok(())
    } else {
        Err(Error::OutsideDomain(z.re, z.im))
    }
}

/// `j_D(x, y) = log(1 + |x − y| / min(d(x), d(y)))`.
pub fn j_metric(domain: &Domain, x: Complex64, y: Complex64) -> Result<f64> {
    check_inside(domain, x)?;
    check_inside(domain, y)?;
    if x == y {
        return Ok(0.0);
    }
    let d = domain.dist_to_boundary(x)?.min(domain.dist_to_boundary(y)?);
    Ok(((x - y).norm() / d).ln_1p())
}

/// Distance between points of a line along which the boundary distance is
/// `d(s) = (h − |s|)·w` for signed coordinate `s`, `|s| < h`.
fn axis_distance(s1: f64, s2: f64, h: f64, w: f64) -> f64 {
    let g = |s: f64| s.signum() * (h / (h - s.abs())).ln() / w;
    (g(s1) - g(s2)).abs()
}

/// Signed coordinate of `z` along the line through `c` with unit direction
/// `u`, if `z` lies on that line.
fn on_line(z: Complex64, c: Complex64, u: Complex64, scale: f64) -> Option<f64> {
    let rel = (z - c) / u;
    (rel.im.abs() <= 1e-12 * scale).then_some(rel.re)
}

/// Exact `k_D(x, y)` when the pair falls into a case with a closed form or
/// a one-dimensional reduction; `None` otherwise.
///
/// Covered cases: any pair in the punctured plane and the half-plane; any
/// pair in a sector of opening at most π; pairs on a symmetry axis of a
/// disk, ellipse or rhombus, where the axis segment is the geodesic; the
/// symmetric pairs `±ti` of the twice-punctured plane.
pub fn k_exact(domain: &Domain, x: Complex64, y: Complex64) -> Result<Option<f64>> {
    check_inside(domain, x)?;
    check_inside(domain, y)?;
    if x == y {
        return Ok(Some(0.0));
    }
    Ok(match domain {
        Domain::PuncturedPlane => {
            let angle = (y / x).arg().abs();
            let log = (x.norm() / y.norm()).ln();
            Some(angle.hypot(log))
        }
        Domain::HalfPlane => Some(half_plane_k(x, y)),
        Domain::Sector { alpha } if *alpha < PI => {
            let (r1, u1, b1) = strip_coordinates(*alpha, x);
            let (r2, u2, b2) = strip_coordinates(*alpha, y);
            Some(sector_strip_distance(*alpha, (r1 - r2).abs(), u1, u2, b1 == b2))
        }
        Domain::Sector { alpha } if *alpha == PI => Some(half_plane_k(x, y)),
        Domain::TwicePuncturedPlane => {
            let symmetric = x.re == 0.0 && y.re == 0.0 && x.im == -y.im;
            symmetric.then(|| {
                let t = x.im.abs();
                2.0 * t.asinh().min(PI - t.atan())
            })
        }
        Domain::Disk { center, radius } => {
            let dir = if x != *center { (x - center) / (x - center).norm() } else { (y - center) / (y - center).norm() };
            match (on_line(x, *center, dir, *radius), on_line(y, *center, dir, *radius)) {
                (Some(s1), Some(s2)) => Some(axis_distance(s1, s2, *radius, 1.0)),
                _ => None,
            }
        }
        Domain::Ellipse(e) => {
            let (a, b) = (e.semi_major(), e.semi_minor());
            if x.im == 0.0 && y.im == 0.0 {
                Some((ellipse_major_antiderivative(a, b, x.re) - ellipse_major_antiderivative(a, b, y.re)).abs())
            } else if x.re == 0.0 && y.re == 0.0 {
                Some(axis_distance(x.im, y.im, b, 1.0))
            } else {
                None
            }
        }
        Domain::Parallelogram { polygon, .. } if domain.is_rhombus() => {
            let v = polygon.vertices();
            let angles = polygon.angles();
            let center = (v[0] + v[2]) * 0.5;
            let scale = (v[0] - v[2]).norm();
            let mut found = None;
            for i in 0..2 {
                let half = (v[i] - center).norm();
                let dir = (v[i] - center) / half;
                if let (Some(s1), Some(s2)) = (on_line(x, center, dir, scale), on_line(y, center, dir, scale)) {
                    found = Some(axis_distance(s1, s2, half, (angles[i] / 2.0).sin()));
                    break;
                }
            }
            found
        }
        _ => None,
    })
}

/// `k` in the upper half-plane, `2 arsinh(|x − y| / (2 √(Im x · Im y)))`.
fn half_plane_k(x: Complex64, y: Complex64) -> f64 {
    2.0 * ((x - y).norm() / (2.0 * (x.im * y.im).sqrt())).asinh()
}

/// Antiderivative of `1/d` along the major axis of the ellipse with
/// semi-axes `a > b`: the nearest boundary point leaves the minor-axis
/// family at `|t| = (a² − b²)/a`, after which `d = a − |t|`.
fn ellipse_major_antiderivative(a: f64, b: f64, t: f64) -> f64 {
    if a == b {
        return t.signum() * (a / (a - t.abs())).ln();
    }
    let c = (a * a - b * b).sqrt();
    let t0 = c * c / a;
    let s = t.abs();
    let v = if s <= t0 {
        (c / b) * (s / c).asin()
    } else {
        (c / b) * (c / a).asin() + ((a - t0) / (a - s)).ln()
    };
    t.signum() * v
}

/// Evaluates `k` by the requested route.
pub fn k_value(domain: &Domain, x: Complex64, y: Complex64, method: QhMethod, cfg: &GridSolverConfig) -> Result<(f64, KMethod)> {
    match method {
        QhMethod::Exact => k_exact(domain, x, y)?.map(|k| (k, KMethod::Exact)).ok_or(Error::ExactUnavailable),
        QhMethod::Grid => k_grid(domain, x, y, cfg).map(|k| (k, KMethod::Grid)),
        QhMethod::Auto => match k_exact(domain, x, y)? {
            Some(k) => Ok((k, KMethod::Exact)),
            None => k_grid(domain, x, y, cfg).map(|k| (k, KMethod::Grid)),
        },
    }
}

/// `j`, `k` and their ratio for one pair.
pub fn metric_sample(domain: &Domain, x: Complex64, y: Complex64, method: QhMethod, cfg: &GridSolverConfig) -> Result<MetricSample> {
    let j = j_metric(domain, x, y)?;
    let (k, how) = k_value(domain, x, y, method, cfg)?;
    Ok(MetricSample::new(x, y, j, k, how))
}

/// `metric_sample` over many pairs in parallel, in input order.
pub fn metric_samples(
    domain: &Domain,
    pairs: &[(Complex64, Complex64)],
    method: QhMethod,
    cfg: &GridSolverConfig,
) -> Vec<Result<MetricSample>> {
    pairs.par_iter().map(|&(x, y)| metric_sample(domain, x, y, method, cfg)).collect()
}

/// Lower bound `|log(|x|/|y|)| / sin(α/2)` for `k` in the sector `S_α`.
pub fn k_lower_sector(alpha: f64, x: Complex64, y: Complex64) -> f64 {
    (x.norm() / y.norm()).ln().abs() / (alpha / 2.0).sin()
}

/// Radius `sin(α/2) sin(β/2) / (sin(α/2) + sin(β/2))` of the circular arc
/// tangent to the angle bisectors at `0` and `1` in the triangle with base
/// `[0, 1]` and base angles `α`, `β`.
pub fn triangle_geodesic_radius(alpha: f64, beta: f64) -> f64 {
    let (sa, sb) = ((alpha / 2.0).sin(), (beta / 2.0).sin());
    sa * sb / (sa + sb)
}
