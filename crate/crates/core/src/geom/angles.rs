use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::arg_2pi;
use crate::error::{Error, Result};

/// Shoelace area; positive for counterclockwise vertex order.
pub fn signed_area(vertices: &[Complex64]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (p, q) = (vertices[i], vertices[(i + 1) % n]);
            p.re * q.im - q.re * p.im
        })
        .sum::<f64>()
        / 2.0
}

/// Interior angles of a simple, counterclockwise polygon, each in `(0, 2π)`.
pub fn interior_angles(vertices: &[Complex64]) -> Result<Vec<f64>> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::DegeneratePolygon(format!("{n} vertices")));
    }
    let scale = vertices.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..n {
        let edge = vertices[(i + 1) % n] - vertices[i];
        if !(edge.norm() > 1e-14 * scale) {
            return Err(Error::DegeneratePolygon(format!("edge {i} has zero length")));
        }
    }
    if !(signed_area(vertices) > 0.0) {
        return Err(Error::DegeneratePolygon(
            "vertices must be in positive (counterclockwise) order".into(),
        ));
    }
    Ok((0..n)
        .map(|i| {
            let v = vertices[i];
            let prev = vertices[(i + n - 1) % n];
            let next = vertices[(i + 1) % n];
            let t = arg_2pi((prev - v) / (next - v));
            if t == 0.0 {
                TAU
            } else {
                t
            }
        })
        .collect())
}

/// `min{α + γ, β + δ}` for a simple quadrilateral `(a, b, c, d)`.
pub fn quad_sector_angle(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<f64> {
    let ang = interior_angles(&[a, b, c, d])?;
    Ok((ang[0] + ang[2]).min(ang[1] + ang[3]))
}

/// Maximiser of the visual angle `|∠(x, z, y)|` over real `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisualAngle {
    pub point: f64,
    pub angle: f64,
}

fn visual_angle_at(x: Complex64, y: Complex64, z: f64) -> f64 {
    let z = Complex64::new(z, 0.0);
    ((x - z) / (y - z)).arg().abs()
}

/// For `x, y` in the upper half-plane, the real point seeing the segment
/// under the largest angle: the tangency point of a circle through `x`
/// and `y` touching the real axis.
///
/// When the line `xy` crosses the axis at `P`, the tangency points are
/// `P ± √(|P − x||P − y|)` (power of the point `P`); the larger of the two
/// angles wins, ties going to the smaller point.
pub fn max_visual_angle(x: Complex64, y: Complex64) -> Result<VisualAngle> {
    if !(x.im > 0.0 && y.im > 0.0) {
        return Err(Error::DegenerateInput("points must lie in the upper half-plane".into()));
    }
    if (x - y).norm() <= 1e-14 * x.norm().max(y.norm()) {
        return Err(Error::DegenerateInput("x and y coincide".into()));
    }
    let dy = y.im - x.im;
    if dy.abs() <= 1e-14 * x.im.max(y.im) {
        let z = 0.5 * (x.re + y.re);
        return Ok(VisualAngle {
            point: z,
            angle: visual_angle_at(x, y, z),
        });
    }
    let p = x.re - x.im * (y.re - x.re) / dy;
    let pc = Complex64::new(p, 0.0);
    let r = ((x - pc).norm() * (y - pc).norm()).sqrt();
    let (z1, z2) = (p - r, p + r);
    let (t1, t2) = (visual_angle_at(x, y, z1), visual_angle_at(x, y, z2));
    Ok(if t2 > t1 {
        VisualAngle { point: z2, angle: t2 }
    } else {
        VisualAngle { point: z1, angle: t1 }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct vector-angle computation at each vertex using `atan2` of the
    /// cross and dot products, corrected for reflex vertices by the turn sign.
    fn oracle_angles(v: &[Complex64]) -> Vec<f64> {
        let n = v.len();
        (0..n)
            .map(|i| {
                let u = v[(i + n - 1) % n] - v[i];
                let w = v[(i + 1) % n] - v[i];
                let cross = w.re * u.im - w.im * u.re;
                let dot = w.re * u.re + w.im * u.im;
                let t = cross.atan2(dot);
                if t < 0.0 {
                    t + 2.0 * PI
                } else {
                    t
                }
            })
            .collect()
    }

    #[test]
    fn square_and_triangle() {
        let sq = interior_angles(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap();
        for a in sq {
            assert!((a - PI / 2.0).abs() < 1e-15);
        }
        let w = Complex64::from_polar(1.0, PI / 3.0);
        let tri = interior_angles(&[c(0.0, 0.0), c(1.0, 0.0), w]).unwrap();
        for a in tri {
            assert!((a - PI / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn reflex_quadrilateral() {
        let q = [c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.2), c(0.0, 2.0)];
        let ang = interior_angles(&q).unwrap();
        let oracle = oracle_angles(&q);
        for (a, o) in ang.iter().zip(&oracle) {
            assert!((a - o).abs() < 1e-12);
        }
        assert!((ang.iter().sum::<f64>() - 2.0 * PI).abs() < 1e-12);
        assert_eq!(ang.iter().filter(|&&a| a > PI).count(), 1);
    }

    #[test]
    fn rejects_degenerate_and_clockwise() {
        assert!(interior_angles(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 1.0)]).is_err());
        assert!(interior_angles(&[c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn sector_angle_examples() {
        let sq = quad_sector_angle(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)).unwrap();
        assert!((sq - PI).abs() < 1e-14);
        let w = Complex64::from_polar(1.0, PI / 3.0);
        let par = quad_sector_angle(c(0.0, 0.0), c(2.0, 0.0), c(2.0, 0.0) + w, w).unwrap();
        assert!((par - 2.0 * PI / 3.0).abs() < 1e-13);
        let q = [c(0.0, 0.0), c(3.0, 0.0), c(3.0, 1.0), c(0.0, 2.0)];
        let o = oracle_angles(&q);
        let got = quad_sector_angle(q[0], q[1], q[2], q[3]).unwrap();
        assert!((got - (o[0] + o[2]).min(o[1] + o[3])).abs() < 1e-12);
    }

    fn scan(x: Complex64, y: Complex64) -> (f64, f64) {
        let mut best = (0.0, -1.0);
        let n = 1_000_000;
        for k in 0..=n {
            let z = -50.0 + 100.0 * k as f64 / n as f64;
            let t = visual_angle_at(x, y, z);
            if t > best.1 {
                best = (z, t);
            }
        }
        best
    }

    #[test]
    fn symmetric_pair() {
        let v = max_visual_angle(c(-1.0, 1.0), c(1.0, 1.0)).unwrap();
        assert!(v.point.abs() < 1e-15);
        assert!((v.angle - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn matches_scan_oracle() {
        for (x, y) in [(c(0.0, 1.0), c(2.0, 1.0)), (c(0.0, 1.0), c(0.0, 4.0)), (c(0.3, 0.5), c(2.0, 3.0))] {
            let v = max_visual_angle(x, y).unwrap();
            let (z, t) = scan(x, y);
            assert!((v.angle - t).abs() < 1e-8, "{x} {y}: {} vs {t}", v.angle);
            assert!(visual_angle_at(x, y, z) <= v.angle + 1e-12);
            // Mirror-symmetric maximisers are both acceptable.
            let mirrored = (x.re + y.re) - z;
            assert!(
                (v.point - z).abs() < 2e-4 || ((x.re - y.re).abs() < 1e-15 && (v.point - mirrored).abs() < 2e-4),
                "{} vs {z}",
                v.point
            );
        }
    }

    #[test]
    fn vertical_pair_touches_at_geometric_mean() {
        let v = max_visual_angle(c(0.0, 1.0), c(0.0, 4.0)).unwrap();
        assert!((v.point.abs() - 2.0).abs() < 1e-14);
    }
}
