//! The Ptolemy ratio, quadrilateral reductions, closed forms and the
//! estimator for the Ptolemy constant of a Jordan domain.

mod closed_form;
mod estimate;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{ensure_distinct, mobius_three_point, ExtComplex, MobiusMap};

pub use closed_form::{
    closed_form_ptolemy, ellipse_chain_bound, parallelogram_a, parallelogram_lower_terms, ClosedForm,
    ParallelogramLowerTerms,
};
pub use estimate::{estimate_ptolemy_constant, PtolemyConfig, PtolemyEstimate, QuadrupleResult};

/// `p(a,b,c,d) = (|a−b||c−d| + |a−d||b−c|) / (|a−c||b−d|)`.
///
/// With one point at infinity every product loses exactly the factor that
/// contains it, which is the Möbius-invariant limit.
pub fn ptolemy_ratio(a: ExtComplex, b: ExtComplex, c: ExtComplex, d: ExtComplex) -> Result<f64> {
    let pts = [a, b, c, d];
    if pts.iter().filter(|p| p.is_infinite()).count() > 1 {
        return Err(Error::TwoInfinite);
    }
    ensure_distinct(&pts)?;
    let dist = |i: usize, j: usize| -> f64 {
        match (pts[i], pts[j]) {
            (ExtComplex::Finite(x), ExtComplex::Finite(y)) => (x - y).norm(),
            _ => 1.0,
        }
    };
    Ok((dist(0, 1) * dist(2, 3) + dist(0, 3) * dist(1, 2)) / (dist(0, 2) * dist(1, 3)))
}

/// Unchecked ratio for finite points.
#[inline]
pub fn ptolemy_ratio_finite(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    ((a - b).norm() * (c - d).norm() + (a - d).norm() * (b - c).norm()) / ((a - c).norm() * (b - d).norm())
}

/// Sends `a, b, c` to `0, 1, ∞`; `d` lands at `t e^{±iθ}` with
/// `θ = min{α+γ, β+δ}` for a simple quadrilateral with angles `α, β, γ, δ`.
///
/// Returns `(θ, t, m)`.
pub fn reduce_quadrilateral_to_sector(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<(f64, f64, MobiusMap)> {
    let pts = [a, b, c, d].map(ExtComplex::Finite);
    ensure_distinct(&pts)?;
    let m = mobius_three_point(pts[0], pts[1], pts[2])?;
    let w = m
        .apply_finite(d)
        .ok_or_else(|| Error::DegenerateInput("d lies on the pole of the reduction".into()))?;
    let theta = w.arg().abs();
    if theta < 1e-12 {
        return Err(Error::DegenerateInput("points are concyclic out of order".into()));
    }
    Ok((theta, w.norm(), m))
}

/// Möbius map taking a simple quadrilateral to a parallelogram
/// `0, 1, 1 + u e^{iφ}, u e^{iφ}` (vertices returned in input order), whose
/// angle `φ` at the image of the first vertex equals half the smaller
/// opposite-angle sum. Ptolemy ratios are preserved.
pub fn normalize_to_parallelogram(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<([Complex64; 4], MobiusMap)> {
    let pts = [a, b, c, d].map(ExtComplex::Finite);
    ensure_distinct(&pts)?;
    let m1 = mobius_three_point(pts[0], pts[1], pts[2])?;
    let w = m1
        .apply_finite(d)
        .ok_or_else(|| Error::DegenerateInput("d lies on the pole of the reduction".into()))?;
    if w.arg().abs() < 1e-12 {
        return Err(Error::DegenerateInput("points are concyclic out of order".into()));
    }
    // The three-point map of the target sends its fourth vertex to u² e^{2iφ}.
    let p3 = Complex64::from_polar(w.norm().sqrt(), w.arg() / 2.0);
    let target = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 1.0 + p3, p3];
    let m2 = mobius_three_point(
        ExtComplex::Finite(target[0]),
        ExtComplex::Finite(target[1]),
        ExtComplex::Finite(target[2]),
    )?;
    Ok((target, m2.inverse().compose(&m1)))
}
