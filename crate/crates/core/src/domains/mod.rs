//! Catalog of plane domains: construction, boundary charts, boundary
//! distance and membership.

mod ellipse;
mod polygon;
mod spec;

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{arg_2pi, ExtComplex, COINCIDENCE_EPS};

pub use ellipse::EllipseShape;
pub use polygon::ConvexPolygon;
pub(crate) use polygon::{ray_distance, segment_distance};
pub use spec::parse_domain_spec;

/// A plane domain from the catalog. Build with the validating constructors.
#[derive(Debug, Clone)]
pub enum Domain {
    /// `{ r e^{it} : r > 0, 0 < t < alpha }`.
    Sector { alpha: f64 },
    /// Intersection of the sector of opening `alpha` at 0 and the sector of
    /// opening `beta` at 1, both above the segment `[0, 1]`.
    DoubleSector { alpha: f64, beta: f64 },
    Triangle(ConvexPolygon),
    /// Vertices `origin`, `origin + r e^{iρ}`, `origin + r e^{iρ} + s e^{i(ρ+α)}`,
    /// `origin + s e^{i(ρ+α)}` with `ρ = rotation`.
    Parallelogram {
        origin: Complex64,
        r: f64,
        s: f64,
        alpha: f64,
        rotation: f64,
        polygon: ConvexPolygon,
    },
    Ellipse(Arc<EllipseShape>),
    Disk { center: Complex64, radius: f64 },
    /// Upper half-plane.
    HalfPlane,
    /// The plane minus the arc `{ e^{it} : a ≤ t ≤ 2π }`.
    ArcSlit { a: f64 },
    PuncturedPlane,
    /// The plane minus `{−1, 1}`.
    TwicePuncturedPlane,
    /// The complement of the closed unit disk.
    DiskExterior,
}

fn check_angle(name: &str, value: f64, lo: f64, hi: f64, hi_closed: bool) -> Result<()> {
    let ok = value.is_finite() && value > lo && (value < hi || (hi_closed && value <= hi));
    if ok {
        Ok(())
    } else {
        let close = if hi_closed { ']' } else { ')' };
        Err(Error::InvalidDomain(format!(
            "{name} = {value} must lie in ({lo}, {hi}{close}"
        )))
    }
}

impl Domain {
    pub fn sector(alpha: f64) -> Result<Self> {
        check_angle("alpha", alpha, 0.0, 2.0 * PI, false)?;
        Ok(Domain::Sector { alpha })
    }

    pub fn double_sector(alpha: f64, beta: f64) -> Result<Self> {
        check_angle("alpha", alpha, 0.0, PI, false)?;
        check_angle("beta", beta, 0.0, PI, false)?;
        if alpha + beta < PI {
            return Err(Error::InvalidDomain(format!(
                "double sector needs alpha + beta >= pi, got {}",
                alpha + beta
            )));
        }
        Ok(Domain::DoubleSector { alpha, beta })
    }

    pub fn triangle(v1: Complex64, v2: Complex64, v3: Complex64) -> Result<Self> {
        Ok(Domain::Triangle(ConvexPolygon::new(vec![v1, v2, v3])?))
    }

    /// Triangle with vertices 0 and 1 and angles `alpha` at 0, `beta` at 1.
    pub fn triangle_from_angles(alpha: f64, beta: f64) -> Result<Self> {
        check_angle("alpha", alpha, 0.0, PI, false)?;
        check_angle("beta", beta, 0.0, PI, false)?;
        if alpha + beta >= PI {
            return Err(Error::InvalidDomain("triangle angles must sum below pi".into()));
        }
        let apex = Complex64::from_polar(beta.sin() / (alpha + beta).sin(), alpha);
        Self::triangle(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), apex)
    }

    pub fn parallelogram(r: f64, s: f64, alpha: f64) -> Result<Self> {
        Self::parallelogram_placed(Complex64::new(0.0, 0.0), r, s, alpha, 0.0)
    }

    pub fn parallelogram_placed(origin: Complex64, r: f64, s: f64, alpha: f64, rotation: f64) -> Result<Self> {
        if !(r.is_finite() && s.is_finite() && r > 0.0 && s > 0.0) {
            return Err(Error::InvalidDomain(format!("side lengths must be positive, got {r}, {s}")));
        }
        check_angle("alpha", alpha, 0.0, FRAC_PI_2, true)?;
        if !(origin.re.is_finite() && origin.im.is_finite() && rotation.is_finite()) {
            return Err(Error::InvalidDomain("non-finite placement".into()));
        }
        let e_r = Complex64::from_polar(r, rotation);
        let e_s = Complex64::from_polar(s, rotation + alpha);
        let polygon = ConvexPolygon::new(vec![origin, origin + e_r, origin + e_r + e_s, origin + e_s])?;
        Ok(Domain::Parallelogram { origin, r, s, alpha, rotation, polygon })
    }

    /// Rhombus of smallest angle `alpha` whose long diagonal is `[−1, 1]`.
    pub fn rhombus(alpha: f64) -> Result<Self> {
        check_angle("alpha", alpha, 0.0, FRAC_PI_2, true)?;
        let side = 1.0 / (alpha / 2.0).cos();
        Self::parallelogram_placed(Complex64::new(-1.0, 0.0), side, side, alpha, -alpha / 2.0)
    }

    pub fn rectangle(width: f64, height: f64) -> Result<Self> {
        Self::parallelogram(width, height, FRAC_PI_2)
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Ok(Domain::Ellipse(Arc::new(EllipseShape::new(a, b)?)))
    }

    pub fn disk(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0 && center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidDomain(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Domain::Disk { center, radius })
    }

    pub fn unit_disk() -> Self {
        Domain::Disk { center: Complex64::new(0.0, 0.0), radius: 1.0 }
    }

    pub fn arc_slit(a: f64) -> Result<Self> {
        check_angle("a", a, 0.0, FRAC_PI_2, false)?;
        Ok(Domain::ArcSlit { a })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Domain::Sector { .. } => "sector",
            Domain::DoubleSector { .. } => "double_sector",
            Domain::Triangle(_) => "triangle",
            Domain::Parallelogram { .. } => "parallelogram",
            Domain::Ellipse(_) => "ellipse",
            Domain::Disk { .. } => "disk",
            Domain::HalfPlane => "half_plane",
            Domain::ArcSlit { .. } => "arc_slit",
            Domain::PuncturedPlane => "punctured_plane",
            Domain::TwicePuncturedPlane => "twice_punctured_plane",
            Domain::DiskExterior => "disk_exterior",
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(
            self,
            Domain::Triangle(_) | Domain::Parallelogram { .. } | Domain::Ellipse(_) | Domain::Disk { .. }
        )
    }

    /// True when the boundary is a Jordan curve of the extended plane.
    pub fn is_jordan(&self) -> bool {
        self.is_bounded() || matches!(self, Domain::Sector { .. } | Domain::DoubleSector { .. } | Domain::HalfPlane)
    }

    /// True for a parallelogram with equal sides.
    pub fn is_rhombus(&self) -> bool {
        matches!(self, Domain::Parallelogram { r, s, .. } if (r - s).abs() <= 1e-12 * r.max(*s))
    }

    /// Convex polygon view of triangles and parallelograms.
    pub fn polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            Domain::Triangle(p) => Some(p),
            Domain::Parallelogram { polygon, .. } => Some(polygon),
            _ => None,
        }
    }

    pub fn perimeter(&self) -> Option<f64> {
        match self {
            Domain::Triangle(p) => Some(p.perimeter()),
            Domain::Parallelogram { polygon, .. } => Some(polygon.perimeter()),
            Domain::Ellipse(e) => Some(e.perimeter()),
            Domain::Disk { radius, .. } => Some(2.0 * PI * radius),
            _ => None,
        }
    }

    /// Axis-aligned bounding box `(min, max)` of a bounded domain.
    pub fn bounding_box(&self) -> Option<(Complex64, Complex64)> {
        match self {
            Domain::Triangle(p) | Domain::Parallelogram { polygon: p, .. } => {
                let v = p.vertices();
                let lo = v.iter().fold(Complex64::new(f64::INFINITY, f64::INFINITY), |m, z| {
                    Complex64::new(m.re.min(z.re), m.im.min(z.im))
                });
                let hi = v.iter().fold(Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |m, z| {
                    Complex64::new(m.re.max(z.re), m.im.max(z.im))
                });
                Some((lo, hi))
            }
            Domain::Ellipse(e) => {
                let c = Complex64::new(e.semi_major(), e.semi_minor());
                Some((-c, c))
            }
            Domain::Disk { center, radius } => {
                let c = Complex64::new(*radius, *radius);
                Some((center - c, center + c))
            }
            _ => None,
        }
    }

    /// Diameter of a bounded domain.
    pub fn diameter(&self) -> Option<f64> {
        match self {
            Domain::Triangle(p) | Domain::Parallelogram { polygon: p, .. } => {
                let v = p.vertices();
                Some(
                    v.iter()
                        .flat_map(|a| v.iter().map(move |b| (a - b).norm()))
                        .fold(0.0, f64::max),
                )
            }
            Domain::Ellipse(e) => Some(2.0 * e.semi_major()),
            Domain::Disk { radius, .. } => Some(2.0 * radius),
            _ => None,
        }
    }

    /// A box covering the geometrically interesting part of the domain, used
    /// for random pair sampling. Equals the bounding box for bounded domains.
    pub fn sample_box(&self) -> (Complex64, Complex64) {
        if let Some(b) = self.bounding_box() {
            return b;
        }
        let c = |x: f64, y: f64| Complex64::new(x, y);
        match self {
            Domain::Sector { .. } => (c(-2.0, -2.0), c(2.0, 2.0)),
            Domain::DoubleSector { .. } => (c(-1.5, 0.0), c(2.5, 3.0)),
            Domain::HalfPlane => (c(-2.0, 0.0), c(2.0, 4.0)),
            Domain::ArcSlit { .. } => (c(-2.0, -2.0), c(2.0, 2.0)),
            Domain::PuncturedPlane => (c(-3.0, -3.0), c(3.0, 3.0)),
            Domain::TwicePuncturedPlane => (c(-3.0, -3.0), c(3.0, 3.0)),
            _ => (c(-4.0, -4.0), c(4.0, 4.0)),
        }
    }

    /// Point on the boundary at normalized arc length `s` (taken modulo 1)
    /// from the anchor, in positive orientation.
    ///
    /// Anchors: the first vertex for polygons, the rightmost point for the
    /// disk and the ellipse.
    pub fn boundary_point(&self, s: f64) -> Result<Complex64> {
        match self {
            Domain::Triangle(p) | Domain::Parallelogram { polygon: p, .. } => Ok(p.point_at_fraction(s)),
            Domain::Ellipse(e) => Ok(e.point(e.angle_at_fraction(s))),
            Domain::Disk { center, radius } => {
                Ok(center + Complex64::from_polar(*radius, 2.0 * PI * s.rem_euclid(1.0)))
            }
            other => Err(Error::UnboundedDomain(other.name().into())),
        }
    }

    /// Point on boundary leg `leg` at chart parameter `t`; `t = +∞` is the
    /// point at infinity.
    ///
    /// - Sector: leg 0 is the positive real axis, leg 1 the ray at angle
    ///   `alpha`, both with `t ≥ 0` the distance from the vertex.
    /// - DoubleSector: leg 0 the segment `[0, 1]` with `t ∈ [0, 1]`, leg 1 the
    ///   ray from 0 at angle `alpha`, leg 2 the ray from 1 at angle `π − beta`.
    /// - HalfPlane: leg 0 the real axis, any real `t`.
    /// - ArcSlit: leg 0 the arc, `t ∈ [a, 2π]` the angle.
    pub fn boundary_point_unbounded(&self, leg: usize, t: f64) -> Result<ExtComplex> {
        let bad_chart = || Error::BadChart { domain: self.name().into(), leg };
        let bad_t = || Error::DegenerateInput(format!("chart parameter {t} outside leg {leg}"));
        if t.is_nan() {
            return Err(bad_t());
        }
        let ray = |origin: Complex64, angle: f64| -> Result<ExtComplex> {
            if t < 0.0 {
                Err(bad_t())
            } else if t == f64::INFINITY {
                Ok(ExtComplex::Infinity)
            } else {
                Ok(ExtComplex::Finite(origin + Complex64::from_polar(t, angle)))
            }
        };
        let zero = Complex64::new(0.0, 0.0);
        match (self, leg) {
            (Domain::Sector { .. }, 0) => ray(zero, 0.0),
            (Domain::Sector { alpha }, 1) => ray(zero, *alpha),
            (Domain::DoubleSector { .. }, 0) => {
                if (0.0..=1.0).contains(&t) {
                    Ok(ExtComplex::new(t, 0.0))
                } else {
                    Err(bad_t())
                }
            }
            (Domain::DoubleSector { alpha, .. }, 1) => ray(zero, *alpha),
            (Domain::DoubleSector { beta, .. }, 2) => ray(Complex64::new(1.0, 0.0), PI - beta),
            (Domain::HalfPlane, 0) => {
                if t.is_infinite() {
                    Ok(ExtComplex::Infinity)
                } else {
                    Ok(ExtComplex::new(t, 0.0))
                }
            }
            (Domain::ArcSlit { a }, 0) => {
                if t >= *a && t <= 2.0 * PI {
                    Ok(ExtComplex::Finite(Complex64::from_polar(1.0, t)))
                } else {
                    Err(bad_t())
                }
            }
            _ => Err(bad_chart()),
        }
    }

    /// Cyclic chart `s ∈ [0, 1)` of a Jordan boundary in positive
    /// orientation. Bounded domains use normalized arc length; unbounded
    /// ones place infinity at `s = 0` and glue the legs as follows.
    ///
    /// - Sector: ray at `alpha` inward on `(0, ½]`, real axis outward on `[½, 1)`.
    /// - DoubleSector: ray at `alpha` inward on `(0, ⅓]`, segment on
    ///   `[⅓, ⅔]`, ray from 1 outward on `[⅔, 1)`.
    /// - HalfPlane: `x = tan(π(s − ½))`.
    pub fn chart_point(&self, s: f64) -> Result<ExtComplex> {
        let s = s.rem_euclid(1.0);
        let odds = |u: f64| if u <= 0.0 { f64::INFINITY } else { (1.0 - u) / u };
        match self {
            Domain::Sector { .. } => {
                if s == 0.0 {
                    Ok(ExtComplex::Infinity)
                } else if s <= 0.5 {
                    self.boundary_point_unbounded(1, odds(2.0 * s))
                } else {
                    self.boundary_point_unbounded(0, odds(2.0 * (1.0 - s)))
                }
            }
            Domain::DoubleSector { .. } => {
                if s == 0.0 {
                    Ok(ExtComplex::Infinity)
                } else if s <= 1.0 / 3.0 {
                    self.boundary_point_unbounded(1, odds(3.0 * s))
                } else if s <= 2.0 / 3.0 {
                    self.boundary_point_unbounded(0, (3.0 * s - 1.0).clamp(0.0, 1.0))
                } else {
                    self.boundary_point_unbounded(2, odds(3.0 * (1.0 - s)))
                }
            }
            Domain::HalfPlane => {
                if s == 0.0 {
                    Ok(ExtComplex::Infinity)
                } else {
                    Ok(ExtComplex::new((PI * (s - 0.5)).tan(), 0.0))
                }
            }
            d if d.is_bounded() => Ok(ExtComplex::Finite(d.boundary_point(s)?)),
            other => Err(Error::NotJordan(other.name().into())),
        }
    }

    /// Chart parameters of boundary corners, including a corner at infinity.
    pub fn chart_corners(&self) -> Vec<f64> {
        match self {
            Domain::Sector { .. } => vec![0.0, 0.5],
            Domain::DoubleSector { .. } => vec![0.0, 1.0 / 3.0, 2.0 / 3.0],
            Domain::Triangle(p) | Domain::Parallelogram { polygon: p, .. } => p.vertex_fractions(),
            _ => Vec::new(),
        }
    }

    /// Euclidean distance from `z` to the boundary.
    pub fn dist_to_boundary(&self, z: Complex64) -> Result<f64> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Ok(match self {
            Domain::Sector { alpha } => {
                ray_distance(z, zero, one).min(ray_distance(z, zero, Complex64::from_polar(1.0, *alpha)))
            }
            Domain::DoubleSector { alpha, beta } => segment_distance(z, zero, one)
                .min(ray_distance(z, zero, Complex64::from_polar(1.0, *alpha)))
                .min(ray_distance(z, one, Complex64::from_polar(1.0, PI - beta))),
            Domain::Triangle(p) | Domain::Parallelogram { polygon: p, .. } => p.distance(z),
            Domain::Ellipse(e) => e.distance(z)?,
            Domain::Disk { center, radius } => ((z - center).norm() - radius).abs(),
            Domain::HalfPlane => z.im.abs(),
            Domain::ArcSlit { a } => {
                let r = z.norm();
                if r > 0.0 && arg_2pi(z) >= *a {
                    (r - 1.0).abs()
                } else {
                    (z - one).norm().min((z - Complex64::from_polar(1.0, *a)).norm())
                }
            }
            Domain::PuncturedPlane => z.norm(),
            Domain::TwicePuncturedPlane => (z - one).norm().min((z + one).norm()),
            Domain::DiskExterior => (z.norm() - 1.0).abs(),
        })
    }

    /// Strict interior membership.
    pub fn contains(&self, z: Complex64) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        match self {
            Domain::Sector { alpha } => {
                let t = arg_2pi(z);
                z.norm() > 0.0 && t > 0.0 && t < *alpha
            }
            Domain::DoubleSector { alpha, beta } => {
                z.im > 0.0 && z.arg() < *alpha && (z - 1.0).arg() > PI - beta
            }
            Domain::Triangle(p) | Domain::Parallelogram { polygon: p, .. } => p.contains(z),
            Domain::Ellipse(e) => e.contains(z),
            Domain::Disk { center, radius } => (z - center).norm() < *radius,
            Domain::HalfPlane => z.im > 0.0,
            Domain::ArcSlit { .. } => self.dist_to_boundary(z).map_or(false, |d| d > COINCIDENCE_EPS),
            Domain::PuncturedPlane => z.norm() > COINCIDENCE_EPS,
            Domain::TwicePuncturedPlane => {
                (z - 1.0).norm() > COINCIDENCE_EPS && (z + 1.0).norm() > COINCIDENCE_EPS
            }
            Domain::DiskExterior => z.norm() > 1.0,
        }
    }

    /// Spec-file representation of the domain.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let pt = |z: Complex64| json!([z.re, z.im]);
        match self {
            Domain::Sector { alpha } => json!({"type": "sector", "alpha": alpha}),
            Domain::DoubleSector { alpha, beta } => json!({"type": "double_sector", "alpha": alpha, "beta": beta}),
            Domain::Triangle(p) => {
                json!({"type": "triangle", "vertices": p.vertices().iter().map(|&z| pt(z)).collect::<Vec<_>>()})
            }
            Domain::Parallelogram { origin, r, s, alpha, rotation, .. } => json!({
                "type": "parallelogram", "r": r, "s": s, "alpha": alpha,
                "origin": pt(*origin), "rotation": rotation
            }),
            Domain::Ellipse(e) => json!({"type": "ellipse", "a": e.semi_major(), "b": e.semi_minor()}),
            Domain::Disk { center, radius } => json!({"type": "disk", "center": pt(*center), "radius": radius}),
            Domain::ArcSlit { a } => json!({"type": "arc_slit", "a": a}),
            other => json!({"type": other.name()}),
        }
    }
}
