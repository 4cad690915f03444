//! Closed-form values and bounds for the Ptolemy constant.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::domains::Domain;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosedForm {
    Exact { value: f64 },
    Bounds { lo: f64, hi: f64 },
}

impl ClosedForm {
    pub fn exact(&self) -> Option<f64> {
        match self {
            ClosedForm::Exact { value } => Some(*value),
            ClosedForm::Bounds { .. } => None,
        }
    }

    /// `(lo, hi)`; an exact value gives a degenerate interval.
    pub fn interval(&self) -> (f64, f64) {
        match *self {
            ClosedForm::Exact { value } => (value, value),
            ClosedForm::Bounds { lo, hi } => (lo, hi),
        }
    }
}

fn inv_half_sin(angle: f64) -> f64 {
    1.0 / (angle / 2.0).sin()
}

/// Table entry for the domain, if one is known.
///
/// Sectors use `1/sin(α/2)` on all of `(0, 2π)`: `S_α` and `S_{2π−α}` share
/// their boundary and `p` is invariant under reversal of order.
pub fn closed_form_ptolemy(domain: &Domain) -> Option<ClosedForm> {
    let exact = |value| Some(ClosedForm::Exact { value });
    match domain {
        Domain::Sector { alpha } => exact(inv_half_sin(*alpha)),
        Domain::DoubleSector { alpha, beta } => exact(inv_half_sin(alpha.min(*beta).min(alpha + beta - PI))),
        Domain::Triangle(p) => exact(inv_half_sin(p.angles().into_iter().fold(PI, f64::min))),
        Domain::Disk { .. } | Domain::HalfPlane => exact(1.0),
        Domain::Parallelogram { r, s, alpha, .. } => {
            if domain.is_rhombus() {
                return exact(inv_half_sin(*alpha));
            }
            let (big, small) = (r.max(*s), r.min(*s));
            if (alpha - FRAC_PI_2).abs() <= 1e-12 {
                let q = big / small;
                let lo = 2f64.sqrt().max((1.0 + q * q / 4.0).sqrt());
                return Some(ClosedForm::Bounds { lo, hi: (1.0 + q * q).sqrt() });
            }
            let a = parallelogram_a(*r, *s, *alpha);
            Some(ClosedForm::Bounds { lo: 0.5 * (a + 1.0 / a), hi: a })
        }
        Domain::Ellipse(e) => {
            let (a, b) = (e.semi_major(), e.semi_minor());
            Some(ClosedForm::Bounds { lo: 0.5 * (a / b + b / a), hi: 1.0 / (b * PI / (2.0 * a)).sin() })
        }
        _ => None,
    }
}

/// `A = √(r² + 2rs cos α + s²) / (min(r, s) sin α)`.
pub fn parallelogram_a(r: f64, s: f64, alpha: f64) -> f64 {
    (r * r + 2.0 * r * s * alpha.cos() + s * s).sqrt() / (r.min(s) * alpha.sin())
}

/// The weaker upper bound `(2/π)(a/b + b/a)` that dominates the ellipse's
/// `1/sin(bπ/2a)`.
pub fn ellipse_chain_bound(a: f64, b: f64) -> f64 {
    (2.0 / PI) * (a / b + b / a)
}

/// Individual lower-bound constructions for a parallelogram.
///
/// The bisector construction appears in two forms: with the ratio
/// `max/(2·min·sin α)` and with `r/(2r sin α) = 1/(2 sin α)`. They agree
/// only for a rhombus, so both are reported and `bisector_forms_disagree`
/// flags the difference instead of choosing one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParallelogramLowerTerms {
    pub vertex: f64,
    pub bisector_side_ratio: f64,
    pub bisector_unit_ratio: f64,
    pub diagonal: f64,
    pub bisector_forms_disagree: bool,
}

pub fn parallelogram_lower_terms(r: f64, s: f64, alpha: f64) -> ParallelogramLowerTerms {
    let (big, small) = (r.max(s), r.min(s));
    let f = parallelogram_a(r, s, alpha);
    let side = (1.0 + (big / (2.0 * small * alpha.sin())).powi(2)).sqrt();
    let unit = (1.0 + (1.0 / (2.0 * alpha.sin())).powi(2)).sqrt();
    ParallelogramLowerTerms {
        vertex: inv_half_sin(alpha),
        bisector_side_ratio: side,
        bisector_unit_ratio: unit,
        diagonal: 0.5 * (f + 1.0 / f),
        bisector_forms_disagree: (side - unit).abs() > 1e-12 * side,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn sector_pi_over_three() {
        let cf = closed_form_ptolemy(&Domain::sector(FRAC_PI_3).unwrap()).unwrap();
        assert!((cf.exact().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ellipse_bounds_and_chain() {
        let cf = closed_form_ptolemy(&Domain::ellipse(2.0, 1.0).unwrap()).unwrap();
        let (lo, hi) = cf.interval();
        assert!((lo - 1.25).abs() < 1e-15);
        assert!((hi - 2f64.sqrt()).abs() < 1e-12);
        assert!(hi <= ellipse_chain_bound(2.0, 1.0));
    }

    #[test]
    fn parallelogram_bounds_from_a() {
        let cf = closed_form_ptolemy(&Domain::parallelogram(2.0, 1.0, FRAC_PI_3).unwrap()).unwrap();
        let a = 7f64.sqrt() / (3f64.sqrt() / 2.0);
        let (lo, hi) = cf.interval();
        assert!((hi - a).abs() < 1e-12);
        assert!((lo - 0.5 * (a + 1.0 / a)).abs() < 1e-12);
    }

    #[test]
    fn rhombus_and_rectangle() {
        let rh = closed_form_ptolemy(&Domain::rhombus(FRAC_PI_3).unwrap()).unwrap();
        assert!((rh.exact().unwrap() - 2.0).abs() < 1e-12);
        let rect = closed_form_ptolemy(&Domain::rectangle(2.0, 1.0).unwrap()).unwrap();
        let (lo, hi) = rect.interval();
        assert!((lo - 2f64.sqrt()).abs() < 1e-12);
        assert!((hi - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lower_terms_flag_rhombus_agreement() {
        assert!(!parallelogram_lower_terms(1.0, 1.0, 1.0).bisector_forms_disagree);
        let t = parallelogram_lower_terms(2.0, 1.0, FRAC_PI_3);
        assert!(t.bisector_forms_disagree);
        assert!((t.vertex - 2.0).abs() < 1e-12);
    }

    #[test]
    fn no_entry_for_punctured_domains() {
        assert!(closed_form_ptolemy(&Domain::PuncturedPlane).is_none());
        assert!(closed_form_ptolemy(&Domain::arc_slit(0.3).unwrap()).is_none());
    }
}
