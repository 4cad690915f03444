use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ensure_distinct;
use crate::error::Result;

/// Relative collinearity threshold for the circumcenter denominator.
const COLLINEAR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CircleOrLine {
    Circle { center: Complex64, radius: f64 },
    /// `direction` has unit modulus.
    Line { point: Complex64, direction: Complex64 },
}

impl CircleOrLine {
    /// Euclidean distance from `z` to the circle or line.
    pub fn distance(&self, z: Complex64) -> f64 {
        match *self {
            CircleOrLine::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            CircleOrLine::Line { point, direction } => ((z - point) * direction.conj()).im.abs(),
        }
    }
}

/// The circle (or line, for collinear input) through three distinct points.
///
/// The center is the circumcenter
/// `((b−c)|a|² + (c−a)|b|² + (a−b)|c|²) / ((b−c)ā + (c−a)b̄ + (a−b)c̄)`,
/// evaluated after translating `a` to the origin; the expression is
/// translation covariant and the translation removes cancellation for
/// clustered points far from 0.
pub fn circle_through(a: Complex64, b: Complex64, c: Complex64) -> Result<CircleOrLine> {
    ensure_distinct(&[a.into(), b.into(), c.into()])?;
    let (b1, c1) = (b - a, c - a);
    // With a = 0 the terms carrying |a|² and ā vanish.
    let num = c1 * b1.norm_sqr() - b1 * c1.norm_sqr();
    let den = c1 * b1.conj() - b1 * c1.conj();
    let scale = b1.norm().max(c1.norm()).max((b - c).norm());
    if den.norm() < COLLINEAR_EPS * scale * scale {
        let far = if c1.norm() >= b1.norm() { c1 } else { b1 };
        return Ok(CircleOrLine::Line {
            point: a,
            direction: far / far.norm(),
        });
    }
    let center = a + num / den;
    Ok(CircleOrLine::Circle {
        center,
        radius: (center - a).norm(),
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Circumcenter as the intersection of two perpendicular bisectors,
    /// solved as a 2×2 linear system.
    fn bisector_center(a: Complex64, b: Complex64, cc: Complex64) -> Complex64 {
        // |z − a|² = |z − b|²  ⇔  2(b − a)·z = |b|² − |a|²
        let (r1, s1) = (2.0 * (b - a), b.norm_sqr() - a.norm_sqr());
        let (r2, s2) = (2.0 * (cc - a), cc.norm_sqr() - a.norm_sqr());
        let det = r1.re * r2.im - r1.im * r2.re;
        let x = (s1 * r2.im - r1.im * s2) / det;
        let y = (r1.re * s2 - s1 * r2.re) / det;
        c(x, y)
    }

    #[test]
    fn roots_of_unity() {
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        match circle_through(c(1.0, 0.0), w, w * w).unwrap() {
            CircleOrLine::Circle { center, radius } => {
                assert!(center.norm() < 1e-14);
                assert!((radius - 1.0).abs() < 1e-14);
            }
            other => panic!("expected circle, got {other:?}"),
        }
    }

    #[test]
    fn right_angle_at_origin() {
        match circle_through(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)).unwrap() {
            CircleOrLine::Circle { center, radius } => {
                assert!((center - c(0.5, 0.5)).norm() < 1e-15);
                assert!((radius - SQRT_2 / 2.0).abs() < 1e-15);
            }
            other => panic!("expected circle, got {other:?}"),
        }
    }

    #[test]
    fn matches_bisector_oracle() {
        let (a, b, cc) = (c(0.0, 0.0), c(1.0, 0.0), c(2.0, 1.0));
        let oracle = bisector_center(a, b, cc);
        match circle_through(a, b, cc).unwrap() {
            CircleOrLine::Circle { center, .. } => assert!((center - oracle).norm() < 1e-10),
            other => panic!("expected circle, got {other:?}"),
        }
    }

    #[test]
    fn collinear_gives_line() {
        let l = circle_through(c(0.0, 0.0), c(1.0, 1.0), c(3.0, 3.0)).unwrap();
        assert!(matches!(l, CircleOrLine::Line { .. }));
        assert!(l.distance(c(1.0, 1.0)) < 1e-15);
        let far = circle_through(c(1e6, 1e6), c(1e6 + 1.0, 1e6 + 1.0), c(1e6 + 2.0, 1e6 + 2.0)).unwrap();
        assert!(matches!(far, CircleOrLine::Line { .. }));
    }

    #[test]
    fn coincident_rejected() {
        assert!(circle_through(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).is_err());
    }
}
