//! Closed-form lower bounds for the uniformity constant and the scalar
//! formulas behind them.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::optim::bisect;

/// A closed-form lower bound for `A_D` with the pair family realizing it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub name: &'static str,
    pub value: f64,
    pub family: String,
}

/// Known enclosure of `A_D`; `hi` is absent when no upper bound is known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedBounds {
    pub lo: f64,
    pub hi: Option<f64>,
}

/// `A_{S_α} = 1 + 1/sin(α/2)` for `α ∈ (0, π]`.
pub fn linden_sector(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= PI) {
        return Err(Error::InvalidDomain(format!("sector opening {alpha} must lie in (0, pi]")));
    }
    Ok(1.0 + 1.0 / (alpha / 2.0).sin())
}

/// Upper bound `L⁴·A` for the uniformity constant of an `L`-bilipschitz
/// image of a domain with constant `A`.
pub fn bilipschitz_transfer(a: f64, l: f64) -> Result<f64> {
    if !(a >= 1.0 && l >= 1.0) {
        return Err(Error::Config(format!("need A >= 1 and L >= 1, got A = {a}, L = {l}")));
    }
    Ok(l.powi(4) * a)
}

/// Root of `arsinh t + arctan t = π`, the parameter at which the symmetric
/// pairs `±ti` of the twice-punctured plane switch geodesic type.
pub fn solve_beta() -> f64 {
    // f is strictly increasing with f(1) < 0 < f(10)
    bisect(|t| t.asinh() + t.atan() - PI, 1.0, 10.0, 1e-13).expect("sign change on [1, 10]")
}

/// `k(ti, −ti)` in the twice-punctured plane.
pub fn twice_punctured_k(t: f64) -> f64 {
    2.0 * t.asinh().min(PI - t.atan())
}

/// `j(ti, −ti)` in the twice-punctured plane.
pub fn twice_punctured_j(t: f64) -> f64 {
    (2.0 * t / (1.0 + t * t).sqrt()).ln_1p()
}

/// `2 arsinh β / log(1 + 2β/√(1 + β²))`.
pub fn twice_punctured_certificate() -> f64 {
    let beta = solve_beta();
    twice_punctured_k(beta) / twice_punctured_j(beta)
}

/// Lower bound for the arc-slit domain from the pair `0, 2`.
pub fn arc_slit_certificate(a: f64) -> f64 {
    let half = a / 2.0;
    (((1.0 + half.cos()) / half.sin()).ln() + FRAC_PI_2 + half) / 3f64.ln()
}

/// `k/j` lower bound for antipodal pairs `±ρ` outside the unit disk.
pub fn disk_exterior_antipodal_ratio(rho: f64) -> f64 {
    PI / (2.0 * rho / (rho - 1.0)).ln_1p()
}

pub fn disk_exterior_bounds() -> ClosedBounds {
    let l3 = 3f64.ln();
    ClosedBounds { lo: PI / l3, hi: Some(4.0 * PI / l3) }
}

/// `2/sin(α/2)` for a rhombus with smallest angle `α`.
pub fn rhombus_certificate(alpha: f64) -> f64 {
    2.0 / (alpha / 2.0).sin()
}

/// `1/sin(α/2) + 1/sin(β/2)` for a triangle with two smallest angles
/// `α ≤ β`.
pub fn triangle_certificate(alpha: f64, beta: f64) -> f64 {
    1.0 / (alpha / 2.0).sin() + 1.0 / (beta / 2.0).sin()
}

/// Major-axis ratio `2√(c²−1) arcsin √(1−1/c²) / log(2c²−1)` for an ellipse
/// with axis ratio `c > 1`.
pub fn ellipse_major_axis_ratio(c: f64) -> f64 {
    2.0 * (c * c - 1.0).sqrt() * (1.0 - 1.0 / (c * c)).sqrt().asin() / (2.0 * c * c - 1.0).ln()
}

/// The two readings of the rectangle bound for sides `a ≥ b`: the stated
/// lower bound `2√2 (b/a)⁴` and the bilipschitz image bound `2√2 (a/b)⁴`
/// of the square, together with the vertex bound `1 + √2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectangleReadings {
    pub statement_lower: f64,
    pub transfer_upper: f64,
    pub vertex_lower: f64,
}

pub fn rectangle_readings(a: f64, b: f64) -> RectangleReadings {
    let (a, b) = (a.max(b), a.min(b));
    let square = rhombus_certificate(FRAC_PI_2);
    RectangleReadings {
        statement_lower: square * (b / a).powi(4),
        transfer_upper: square * (a / b).powi(4),
        vertex_lower: 1.0 + 2f64.sqrt(),
    }
}

/// The two smallest angles of a triangle, ascending.
pub(crate) fn two_smallest(angles: &[f64]) -> (f64, f64) {
    let mut a = angles.to_vec();
    a.sort_by(f64::total_cmp);
    (a[0], a[1])
}

/// Closed-form lower bound for `A_D` from the construction known for its
/// type.
pub fn certificate_lower_bound(domain: &Domain) -> Result<Certificate> {
    let none = || Error::NoCertificate(domain.name().into());
    Ok(match domain {
        Domain::Sector { alpha } if *alpha <= PI => Certificate {
            name: "sector",
            value: linden_sector(*alpha)?,
            family: "x on the bisector at |x| = 1, y at |y| = R with d(y) = 1, R -> inf".into(),
        },
        Domain::HalfPlane => Certificate {
            name: "sector",
            value: 2.0,
            family: "x = i, y = R + i, R -> inf".into(),
        },
        Domain::DoubleSector { alpha, beta } => {
            let m = alpha.min(*beta);
            Certificate {
                name: "vertex_angle",
                value: linden_sector(m)?,
                family: format!("sector pairs scaled into the vertex of angle {m}"),
            }
        }
        Domain::Triangle(p) => {
            let (a, b) = two_smallest(&p.angles());
            if b < FRAC_PI_2 {
                Certificate {
                    name: "triangle_medial_axis",
                    value: triangle_certificate(a, b),
                    family: "x, y on the bisectors of the two smallest angles at distance eps, eps -> 0".into(),
                }
            } else {
                Certificate {
                    name: "vertex_angle",
                    value: linden_sector(a)?,
                    family: format!("sector pairs scaled into the vertex of angle {a}"),
                }
            }
        }
        Domain::Parallelogram { polygon, .. } => {
            let a = polygon.angles().into_iter().fold(f64::INFINITY, f64::min);
            if domain.is_rhombus() {
                Certificate {
                    name: "rhombus_diagonal",
                    value: rhombus_certificate(a),
                    family: "+-x on the long diagonal, |x| -> vertex".into(),
                }
            } else {
                Certificate {
                    name: "vertex_angle",
                    value: linden_sector(a)?,
                    family: format!("sector pairs scaled into the vertex of angle {a}"),
                }
            }
        }
        Domain::Ellipse(e) => {
            let c = e.semi_major() / e.semi_minor();
            let major = if c > 1.0 { ellipse_major_axis_ratio(c) } else { 0.0 };
            Certificate {
                name: "ellipse_axes",
                value: major.max(2.0),
                family: "major-axis pair +-(a - b^2/a) and minor-axis pairs +-si, s -> b".into(),
            }
        }
        Domain::Disk { .. } => Certificate {
            name: "ellipse_axes",
            value: 2.0,
            family: "diameter pairs +-s, s -> radius".into(),
        },
        Domain::ArcSlit { a } => Certificate {
            name: "arc_slit",
            value: arc_slit_certificate(*a),
            family: "x = 0, y = 2".into(),
        },
        Domain::DiskExterior => Certificate {
            name: "disk_exterior",
            value: disk_exterior_bounds().lo,
            family: "antipodal pairs +-rho, rho -> inf".into(),
        },
        Domain::TwicePuncturedPlane => Certificate {
            name: "twice_punctured",
            value: twice_punctured_certificate(),
            family: "+-beta i with arsinh beta + arctan beta = pi".into(),
        },
        _ => return Err(none()),
    })
}

/// Known enclosure of `A_D`, when there is one.
pub fn closed_bounds(domain: &Domain) -> Option<ClosedBounds> {
    match domain {
        Domain::Sector { alpha } if *alpha <= PI => {
            let v = linden_sector(*alpha).ok()?;
            Some(ClosedBounds { lo: v, hi: Some(v) })
        }
        Domain::HalfPlane | Domain::Disk { .. } => Some(ClosedBounds { lo: 2.0, hi: Some(2.0) }),
        Domain::Ellipse(e) => {
            let c = e.semi_major() / e.semi_minor();
            let lo = certificate_lower_bound(domain).ok()?.value;
            Some(ClosedBounds { lo, hi: bilipschitz_transfer(2.0, c).ok() })
        }
        Domain::DiskExterior => Some(disk_exterior_bounds()),
        _ => certificate_lower_bound(domain).ok().map(|c| ClosedBounds { lo: c.value, hi: None }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

    #[test]
    fn linden_values() {
        assert!((linden_sector(PI).unwrap() - 2.0).abs() < 1e-15);
        assert!((linden_sector(FRAC_PI_3).unwrap() - 3.0).abs() < 1e-14);
        assert!((linden_sector(FRAC_PI_2).unwrap() - (1.0 + 2f64.sqrt())).abs() < 1e-14);
        assert!(linden_sector(4.0).is_err());
        assert!(linden_sector(0.0).is_err());
    }

    #[test]
    fn transfer_values() {
        assert_eq!(bilipschitz_transfer(2.0, 1.0).unwrap(), 2.0);
        assert_eq!(bilipschitz_transfer(2.0, 2.0).unwrap(), 32.0);
        assert!(bilipschitz_transfer(0.5, 2.0).is_err());
    }

    #[test]
    fn beta_by_newton() {
        let beta = solve_beta();
        assert!((beta.asinh() + beta.atan() - PI).abs() < 1e-10);
        let mut t = 3.0f64;
        for _ in 0..50 {
            let f = t.asinh() + t.atan() - PI;
            let df = 1.0 / (1.0 + t * t).sqrt() + 1.0 / (1.0 + t * t);
            t -= f / df;
        }
        assert!((t - beta).abs() < 1e-10);
    }

    #[test]
    fn catalog_certificates() {
        let sq = Domain::rhombus(FRAC_PI_2).unwrap();
        assert!((certificate_lower_bound(&sq).unwrap().value - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        let eq = Domain::triangle_from_angles(FRAC_PI_3, FRAC_PI_3).unwrap();
        assert!((certificate_lower_bound(&eq).unwrap().value - 4.0).abs() < 1e-12);
        // the middle angle of a triangle is always below a right angle
        let obtuse = Domain::triangle_from_angles(FRAC_PI_6, 0.55 * PI).unwrap();
        let c = certificate_lower_bound(&obtuse).unwrap();
        assert_eq!(c.name, "triangle_medial_axis");
        let gamma = PI - FRAC_PI_6 - 0.55 * PI;
        assert!((c.value - triangle_certificate(FRAC_PI_6, gamma)).abs() < 1e-12);
        assert!(matches!(certificate_lower_bound(&Domain::PuncturedPlane), Err(Error::NoCertificate(_))));
    }

    #[test]
    fn rectangle_readings_are_ordered() {
        let r = rectangle_readings(1.0, 2.0);
        assert!((r.statement_lower - 2.0 * 2f64.sqrt() / 16.0).abs() < 1e-14);
        assert!((r.transfer_upper - 32.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(r.statement_lower < r.vertex_lower);
    }
}
