//! Axis-aligned centred ellipse: arc-length chart and boundary distance.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{gl16, integrate_fixed};

const TABLE_SIZE: usize = 4096;
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;

/// Ellipse `x²/a² + y²/b² = 1` with an eagerly built arc-length table.
#[derive(Debug, Clone)]
pub struct EllipseShape {
    a: f64,
    b: f64,
    cumulative: Vec<f64>,
}

impl EllipseShape {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > 0.0 && a >= b) {
            return Err(Error::InvalidDomain(format!(
                "ellipse needs a >= b > 0, got a = {a}, b = {b}"
            )));
        }
        let mut shape = EllipseShape {
            a,
            b,
            cumulative: Vec::with_capacity(TABLE_SIZE + 1),
        };
        let h = 2.0 * PI / TABLE_SIZE as f64;
        let mut acc = 0.0;
        shape.cumulative.push(0.0);
        for k in 0..TABLE_SIZE {
            let t0 = k as f64 * h;
            acc += integrate_fixed(gl16(), t0, t0 + h, |t| shape.speed(t));
            shape.cumulative.push(acc);
        }
        Ok(shape)
    }

    pub fn semi_major(&self) -> f64 {
        self.a
    }

    pub fn semi_minor(&self) -> f64 {
        self.b
    }

    pub fn perimeter(&self) -> f64 {
        self.cumulative[TABLE_SIZE]
    }

    /// Point at parametric angle `t`.
    pub fn point(&self, t: f64) -> Complex64 {
        Complex64::new(self.a * t.cos(), self.b * t.sin())
    }

    fn speed(&self, t: f64) -> f64 {
        (self.a * t.sin()).hypot(self.b * t.cos())
    }

    /// Arc length from the anchor `(a, 0)` to parametric angle `t ∈ [0, 2π]`.
    pub fn arc_length(&self, t: f64) -> f64 {
        let h = 2.0 * PI / TABLE_SIZE as f64;
        let k = ((t / h).floor() as usize).min(TABLE_SIZE - 1);
        let t0 = k as f64 * h;
        self.cumulative[k] + integrate_fixed(gl16(), t0, t, |u| self.speed(u))
    }

    /// Parametric angle whose arc length from the anchor is `s · perimeter`.
    pub fn angle_at_fraction(&self, s: f64) -> f64 {
        let target = s.rem_euclid(1.0) * self.perimeter();
        let h = 2.0 * PI / TABLE_SIZE as f64;
        let k = self
            .cumulative
            .partition_point(|&c| c <= target)
            .clamp(1, TABLE_SIZE)
            - 1;
        let (c0, c1) = (self.cumulative[k], self.cumulative[k + 1]);
        let t0 = k as f64 * h;
        let mut t = t0 + h * (target - c0) / (c1 - c0);
        for _ in 0..8 {
            let f = self.cumulative[k] + integrate_fixed(gl16(), t0, t, |u| self.speed(u)) - target;
            let dt = f / self.speed(t);
            t = (t - dt).clamp(t0, t0 + h);
            if dt.abs() < 1e-15 {
                break;
            }
        }
        t
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z.re / self.a).powi(2) + (z.im / self.b).powi(2) < 1.0
    }

    /// Distance from an interior point on the major axis, `(t, 0)`.
    pub fn major_axis_distance(&self, t: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        let t = t.abs();
        if a > b && t <= a - b * b / a {
            b * (1.0 - t * t / (a * a - b * b)).sqrt()
        } else {
            (a - t).abs()
        }
    }

    /// Euclidean distance from `z` to the ellipse.
    ///
    /// Points on an axis use the closed forms. Elsewhere the foot point is
    /// found in the quadrant of `z` by Newton iteration on the tangency
    /// condition `(p − E(θ))·E′(θ) = 0`, safeguarded by bisection.
    pub fn distance(&self, z: Complex64) -> Result<f64> {
        let (px, py) = (z.re.abs(), z.im.abs());
        if py == 0.0 && self.contains(z) {
            return Ok(self.major_axis_distance(px));
        }
        if px == 0.0 {
            return Ok((self.b - py).abs());
        }
        let theta = self.foot_angle(px, py)?;
        Ok((Complex64::new(px, py) - self.point(theta)).norm())
    }

    /// Parametric angle in `[0, π/2]` of the closest boundary point to
    /// `(px, py)` with `px, py ≥ 0`.
    pub fn foot_angle(&self, px: f64, py: f64) -> Result<f64> {
        let (a, b) = (self.a, self.b);
        let c2 = a * a - b * b;
        let f = |t: f64| c2 * t.sin() * t.cos() - a * px * t.sin() + b * py * t.cos();
        let df = |t: f64| c2 * (2.0 * t).cos() - a * px * t.cos() - b * py * t.sin();
        // f(0) = b·py ≥ 0 and f(π/2) = −a·px ≤ 0 bracket the unique root.
        let (mut lo, mut hi) = (0.0, FRAC_PI_2);
        let mut t = if c2 > 0.0 && py < 1e-3 * b {
            (a * px / c2).min(1.0).acos()
        } else {
            (a * py).atan2(b * px)
        };
        for _ in 0..NEWTON_MAX_ITER {
            let ft = f(t);
            if ft > 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let d = df(t);
            let mut next = t - ft / d;
            if !next.is_finite() || next <= lo || next >= hi {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() < NEWTON_TOL * (1.0 + t.abs()) {
                return Ok(next);
            }
            t = next;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo < 1e-15 {
                return Ok(mid);
            }
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (hi - lo).is_finite() {
            Ok(0.5 * (lo + hi))
        } else {
            Err(Error::NewtonDivergence(px, py))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::simpson;

    #[test]
    fn perimeter_of_circle() {
        let e = EllipseShape::new(1.0, 1.0).unwrap();
        assert!((e.perimeter() - 2.0 * PI).abs() < 1e-12, "{}", e.perimeter() - 2.0 * PI);
    }

    #[test]
    fn quarter_point_matches_simpson_oracle() {
        let e = EllipseShape::new(2.0, 1.0).unwrap();
        let t = e.angle_at_fraction(0.25);
        let speed = |u: f64| (2.0 * u.sin()).hypot(u.cos());
        let quarter = simpson(0.0, t, 1_000_000, speed);
        let total = simpson(0.0, 2.0 * PI, 1_000_000, speed);
        assert!((quarter - total / 4.0).abs() < 1e-10, "{quarter} {total}");
        // symmetry puts the quarter point at the top vertex
        assert!((t - FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn axis_distances() {
        let e = EllipseShape::new(2.0, 1.0).unwrap();
        assert!((e.distance(Complex64::new(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        let expected = (2.0f64 / 3.0).sqrt();
        assert!((e.distance(Complex64::new(1.0, 0.0)).unwrap() - expected).abs() < 1e-14);
        assert!((e.distance(Complex64::new(1.9, 0.0)).unwrap() - 0.1).abs() < 1e-14);
        assert!((e.distance(Complex64::new(0.0, -0.25)).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn off_axis_distance_matches_boundary_scan() {
        let e = EllipseShape::new(2.0, 1.0).unwrap();
        let p = Complex64::new(0.7, 0.4);
        let n = 1_000_000;
        let scan = (0..n)
            .map(|k| (p - e.point(2.0 * PI * k as f64 / n as f64)).norm())
            .fold(f64::INFINITY, f64::min);
        let d = e.distance(p).unwrap();
        assert!(d <= scan + 1e-12);
        assert!(scan - d < 1e-10, "{d} {scan}");
    }

    #[test]
    fn newton_agrees_with_axis_formula_across_regime_switch() {
        let e = EllipseShape::new(2.0, 1.0).unwrap();
        let switch = 2.0 - 0.5;
        for k in 0..100 {
            let t = if k == 0 { switch } else { 1.99 * k as f64 / 100.0 };
            let th = e.foot_angle(t, 1e-13).unwrap();
            let newton = (Complex64::new(t, 1e-13) - e.point(th)).norm();
            assert!((newton - e.major_axis_distance(t)).abs() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn exterior_points() {
        let e = EllipseShape::new(3.0, 1.0).unwrap();
        assert!((e.distance(Complex64::new(0.0, 2.0)).unwrap() - 1.0).abs() < 1e-14);
        assert!((e.distance(Complex64::new(4.0, 0.0)).unwrap() - 1.0).abs() < 1e-14);
        let p = Complex64::new(2.5, 2.0);
        let th = e.foot_angle(p.re, p.im).unwrap();
        let foot = e.point(th);
        let tangent = Complex64::new(-3.0 * th.sin(), th.cos());
        assert!(((p - foot) * tangent.conj()).re.abs() < 1e-10);
    }
}
