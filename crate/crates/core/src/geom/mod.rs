//! Extended-plane arithmetic and the quadrilateral toolbox.

mod angles;
mod circle;
mod mobius;

pub use angles::{interior_angles, max_visual_angle, quad_sector_angle, signed_area, VisualAngle};
pub use circle::{circle_through, CircleOrLine};
pub use mobius::{cross_ratio, mobius_three_point, MobiusMap};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used to decide that two points coincide.
pub(crate) const COINCIDENCE_EPS: f64 = 1e-14;

/// A point of the extended plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    /// Builds a finite point, rejecting NaN and infinite coordinates.
    pub fn finite(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(ExtComplex::Finite(z))
        } else {
            Err(Error::DegenerateInput(format!("non-finite coordinates {z}")))
        }
    }

    pub fn new(re: f64, im: f64) -> Self {
        ExtComplex::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    /// `true` when both points are infinity or both are finite and equal up
    /// to a relative tolerance.
    pub fn coincides(&self, other: &ExtComplex) -> bool {
        match (self, other) {
            (ExtComplex::Infinity, ExtComplex::Infinity) => true,
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => {
                let scale = 1.0f64.max(a.norm()).max(b.norm());
                (a - b).norm() <= COINCIDENCE_EPS * scale
            }
            _ => false,
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

/// Errors with `DegenerateInput` unless the points are pairwise distinct.
pub(crate) fn ensure_distinct(points: &[ExtComplex]) -> Result<()> {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].coincides(&points[j]) {
                return Err(Error::DegenerateInput(format!(
                    "arguments {i} and {j} coincide"
                )));
            }
        }
    }
    Ok(())
}

/// Principal argument mapped into `[0, 2π)`.
pub fn arg_2pi(z: Complex64) -> f64 {
    let t = z.arg();
    if t < 0.0 {
        t + std::f64::consts::TAU
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_rejects_nan() {
        assert!(ExtComplex::finite(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(ExtComplex::finite(Complex64::new(f64::INFINITY, 0.0)).is_err());
        assert!(ExtComplex::finite(Complex64::new(1.0, 2.0)).is_ok());
    }

    #[test]
    fn coincidence() {
        assert!(ExtComplex::Infinity.coincides(&ExtComplex::Infinity));
        assert!(!ExtComplex::Infinity.coincides(&ExtComplex::new(0.0, 0.0)));
        assert!(ExtComplex::new(1.0, 0.0).coincides(&ExtComplex::new(1.0 + 1e-16, 0.0)));
        assert!(!ExtComplex::new(1.0, 0.0).coincides(&ExtComplex::new(1.0 + 1e-9, 0.0)));
    }

    #[test]
    fn arg_range() {
        assert!((arg_2pi(Complex64::new(0.0, -1.0)) - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(arg_2pi(Complex64::new(1.0, 0.0)), 0.0);
    }
}
