//! Convex polygons stored counterclockwise with a cumulative perimeter.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::signed_area;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Complex64>,
    cumulative: Vec<f64>,
}

impl ConvexPolygon {
    /// Builds from vertices in either orientation; stores them counterclockwise.
    pub fn new(mut vertices: Vec<Complex64>) -> Result<Self> {
        let scale = vertices
            .iter()
            .flat_map(|a| vertices.iter().map(move |b| (a - b).norm()))
            .fold(0.0, f64::max);
        let area = signed_area(&vertices);
        if !(scale > 0.0) || area.abs() <= 1e-12 * scale * scale {
            return Err(Error::InvalidDomain("polygon vertices are collinear".into()));
        }
        if area < 0.0 {
            vertices[1..].reverse();
        }
        let n = vertices.len();
        for i in 0..n {
            let (u, v, w) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if ((v - u).conj() * (w - v)).im <= 0.0 {
                return Err(Error::InvalidDomain("polygon is not strictly convex".into()));
            }
        }
        let mut cumulative = vec![0.0];
        for i in 0..n {
            let len = (vertices[(i + 1) % n] - vertices[i]).norm();
            cumulative.push(cumulative[i] + len);
        }
        Ok(ConvexPolygon { vertices, cumulative })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn perimeter(&self) -> f64 {
        self.cumulative[self.vertices.len()]
    }

    /// Normalized arc-length positions of the vertices.
    pub fn vertex_fractions(&self) -> Vec<f64> {
        let p = self.perimeter();
        self.cumulative[..self.vertices.len()].iter().map(|c| c / p).collect()
    }

    pub fn point_at_fraction(&self, s: f64) -> Complex64 {
        let n = self.vertices.len();
        let target = s.rem_euclid(1.0) * self.perimeter();
        let i = (self.cumulative.partition_point(|&c| c <= target).max(1) - 1).min(n - 1);
        let len = self.cumulative[i + 1] - self.cumulative[i];
        let u = ((target - self.cumulative[i]) / len).clamp(0.0, 1.0);
        let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
        p + (q - p) * u
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            ((q - p).conj() * (z - p)).im > 0.0
        })
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| segment_distance(z, self.vertices[i], self.vertices[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Interior angles in vertex order.
    pub fn angles(&self) -> Vec<f64> {
        crate::geom::interior_angles(&self.vertices).unwrap_or_default()
    }
}

pub(crate) fn segment_distance(z: Complex64, p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let u = (((z - p) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (z - (p + d * u)).norm()
}

/// Distance from `z` to the ray `{origin + t·dir : t ≥ 0}` with `|dir| = 1`.
pub(crate) fn ray_distance(z: Complex64, origin: Complex64, dir: Complex64) -> f64 {
    let w = (z - origin) * dir.conj();
    if w.re > 0.0 {
        w.im.abs()
    } else {
        w.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_chart_and_distance() {
        let sq = ConvexPolygon::new(vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        // clockwise input is reversed
        assert_eq!(sq.vertices()[1], Complex64::new(1.0, 0.0));
        assert!((sq.point_at_fraction(0.5) - Complex64::new(1.0, 1.0)).norm() < 1e-15);
        assert!((sq.distance(Complex64::new(0.3, 0.5)) - 0.3).abs() < 1e-15);
        assert!(sq.contains(Complex64::new(0.5, 0.5)));
        assert!(!sq.contains(Complex64::new(1.5, 0.5)));
    }

    #[test]
    fn rejects_degenerate() {
        let line = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        assert!(ConvexPolygon::new(line).is_err());
    }

    #[test]
    fn ray_distance_behind_origin() {
        let d = ray_distance(Complex64::new(-3.0, 4.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        assert_eq!(d, 5.0);
    }
}
