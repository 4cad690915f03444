use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ensure_distinct, ExtComplex};
use crate::error::{Error, Result};

/// Smallest determinant magnitude accepted before normalization.
const DET_EPS: f64 = 1e-300;

/// The map `z ↦ (az + b) / (cz + d)`, stored with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.norm() > DET_EPS) || !det.norm().is_finite() {
            return Err(Error::DegenerateInput(format!(
                "Möbius determinant {det} is zero"
            )));
        }
        let s = det.sqrt();
        Ok(MobiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        MobiusMap {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, z: ExtComplex) -> ExtComplex {
        match z {
            ExtComplex::Infinity => {
                if self.c == Complex64::new(0.0, 0.0) {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite(self.a / self.c)
                }
            }
            ExtComplex::Finite(z) => {
                let num = self.a * z + self.b;
                let den = self.c * z + self.d;
                let tol = f64::EPSILON * (self.c.norm() * z.norm() + self.d.norm());
                if den.norm() <= tol {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite(num / den)
                }
            }
        }
    }

    /// Applies the map to a finite point, returning `None` at the pole.
    pub fn apply_finite(&self, z: Complex64) -> Option<Complex64> {
        self.apply(ExtComplex::Finite(z)).as_finite()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MobiusMap) -> MobiusMap {
        // Product of unimodular matrices stays unimodular.
        MobiusMap {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

/// The Möbius map sending `a ↦ 0`, `b ↦ 1`, `c ↦ ∞`.
pub fn mobius_three_point(a: ExtComplex, b: ExtComplex, c: ExtComplex) -> Result<MobiusMap> {
    ensure_distinct(&[a, b, c])?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    use ExtComplex::*;
    match (a, b, c) {
        (Infinity, Finite(b), Finite(c)) => MobiusMap::new(zero, b - c, one, -c),
        (Finite(a), Infinity, Finite(c)) => MobiusMap::new(one, -a, one, -c),
        (Finite(a), Finite(b), Infinity) => MobiusMap::new(one, -a, zero, b - a),
        (Finite(a), Finite(b), Finite(c)) => {
            MobiusMap::new(b - c, -a * (b - c), b - a, -c * (b - a))
        }
        _ => Err(Error::TwoInfinite),
    }
}

/// Cross ratio `[a, b, c, d] = (a − c)(b − d) / ((a − b)(c − d))`.
///
/// With `m` the map sending `a, b, c` to `0, 1, ∞` this equals `1 − m(d)`,
/// so `[0, 1, ∞, s e^{iθ}] = 1 − s e^{iθ}`.
pub fn cross_ratio(a: ExtComplex, b: ExtComplex, c: ExtComplex, d: ExtComplex) -> Result<ExtComplex> {
    ensure_distinct(&[a, b, c, d])?;
    let m = mobius_three_point(a, b, c)?;
    match m.apply(d) {
        ExtComplex::Finite(w) => Ok(ExtComplex::Finite(Complex64::new(1.0, 0.0) - w)),
        // d = c is excluded above, so m(d) is finite up to rounding.
        ExtComplex::Infinity => Err(Error::DegenerateInput("d coincides with c".into())),
    }
}
