//! Uniformity constant `A_D = sup k/j`: certificates, structured pair
//! ladders and a sampling estimator.

mod certificates;
mod pairs;

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::ptolemy::{estimate_ptolemy_constant, PtolemyConfig};
use crate::qh::{metric_samples, GridSolverConfig, MetricSample, QhMethod};

pub use certificates::{
    arc_slit_certificate, bilipschitz_transfer, certificate_lower_bound, closed_bounds, disk_exterior_antipodal_ratio,
    disk_exterior_bounds, ellipse_major_axis_ratio, linden_sector, rectangle_readings, rhombus_certificate,
    solve_beta, triangle_certificate, twice_punctured_certificate, twice_punctured_j, twice_punctured_k, Certificate,
    ClosedBounds, RectangleReadings,
};
pub use pairs::{
    axis_ladder, disk_exterior_ladder, polygon_sites, rhombus_ladder, sector_ladder, sector_pair, structured_ladders,
    triangle_k_lower, triangle_ladder, vertex_ladder, Ladder, LadderStep, VertexSite,
};

const MAX_REJECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformityConfig {
    /// Random interior pairs on top of the structured families.
    pub samples: usize,
    pub grid: GridSolverConfig,
    #[serde(skip)]
    pub method: QhMethod,
    pub seed: u64,
}

impl Default for UniformityConfig {
    fn default() -> Self {
        UniformityConfig {
            samples: 32,
            grid: GridSolverConfig { resolution: 128, ..Default::default() },
            method: QhMethod::Auto,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UniformityEstimate {
    pub domain: serde_json::Value,
    /// Largest `k/j` over all evaluated pairs.
    pub lower: f64,
    pub witness: MetricSample,
    pub certificate: Option<Certificate>,
    pub closed_bounds: Option<ClosedBounds>,
    pub ladders: Vec<Ladder>,
    /// Largest ratio among the random pairs alone.
    pub random_max: Option<f64>,
    pub random_pairs: usize,
    /// Random pairs the grid solver could not connect.
    pub skipped_pairs: usize,
    pub rectangle: Option<RectangleReadings>,
    pub config: UniformityConfig,
    pub wall_time_ms: Option<u64>,
}

/// Uniform random interior pairs with boundary clearance `1e-6` times the
/// domain (or sampling box) diameter.
pub fn random_pairs(domain: &Domain, count: usize, seed: u64) -> Result<Vec<(Complex64, Complex64)>> {
    let (lo, hi) = domain.sample_box();
    let clearance = 1e-6 * domain.diameter().unwrap_or((hi - lo).norm());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Result<Complex64> {
        for _ in 0..MAX_REJECTIONS {
            let z = Complex64::new(rng.gen_range(lo.re..hi.re), rng.gen_range(lo.im..hi.im));
            if domain.contains(z) && domain.dist_to_boundary(z)? >= clearance {
                return Ok(z);
            }
        }
        Err(Error::Config(format!("could not sample interior points of {}", domain.name())))
    };
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let (x, y) = (draw()?, draw()?);
        if x != y {
            pairs.push((x, y));
        }
    }
    Ok(pairs)
}

fn better(a: &MetricSample, b: &MetricSample) -> bool {
    a.ratio.unwrap_or(f64::NEG_INFINITY) > b.ratio.unwrap_or(f64::NEG_INFINITY)
}

/// Lower estimate of `A_D` from the structured families of the domain and
/// `cfg.samples` random pairs. Deterministic for a given seed.
pub fn estimate_uniformity(domain: &Domain, cfg: &UniformityConfig) -> Result<UniformityEstimate> {
    let started = Instant::now();
    cfg.grid.validate()?;
    let ladders = structured_ladders(domain)?;
    let pairs = random_pairs(domain, cfg.samples, cfg.seed)?;
    let mut random = Vec::with_capacity(pairs.len());
    let mut skipped = 0;
    for r in metric_samples(domain, &pairs, cfg.method, &cfg.grid) {
        match r {
            Ok(s) => random.push(s),
            Err(Error::Disconnected) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let random_max = random.iter().filter_map(|s| s.ratio).reduce(f64::max);
    let mut witness: Option<MetricSample> = None;
    let candidates = ladders.iter().flat_map(|l| l.steps.iter().map(|s| s.sample)).chain(random.iter().copied());
    for s in candidates {
        if s.ratio.is_some() && witness.as_ref().map_or(true, |w| better(&s, w)) {
            witness = Some(s);
        }
    }
    let witness = witness.ok_or_else(|| Error::Config("no pair could be evaluated".into()))?;
    let rectangle = match domain {
        Domain::Parallelogram { r, s, alpha, .. } if (*alpha - std::f64::consts::FRAC_PI_2).abs() < 1e-12 => {
            Some(rectangle_readings(*r, *s))
        }
        _ => None,
    };
    Ok(UniformityEstimate {
        domain: domain.to_json(),
        lower: witness.ratio.unwrap_or(1.0),
        witness,
        certificate: certificate_lower_bound(domain).ok(),
        closed_bounds: closed_bounds(domain),
        ladders,
        random_max,
        random_pairs: random.len(),
        skipped_pairs: skipped,
        rectangle,
        config: *cfg,
        wall_time_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// Both sides of the conjectured inequality `A_D ≥ 1 + P(D)`.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub domain: serde_json::Value,
    /// Best lower bound for `A_D`: the larger of the sampled ratio and the
    /// certificate.
    pub a_lower: f64,
    pub a_sampled: f64,
    pub a_certificate: Option<f64>,
    pub one_plus_p_lower: f64,
    pub p_closed_form: Option<f64>,
    /// `a_lower − one_plus_p_lower`.
    pub margin: f64,
}

pub fn conjecture_report(domain: &Domain, pcfg: &PtolemyConfig, ucfg: &UniformityConfig) -> Result<ConjectureReport> {
    if !domain.is_jordan() {
        return Err(Error::NotJordan(domain.name().into()));
    }
    let p = estimate_ptolemy_constant(domain, pcfg)?;
    let u = estimate_uniformity(domain, ucfg)?;
    let cert = u.certificate.as_ref().map(|c| c.value);
    let a_lower = cert.map_or(u.lower, |c| c.max(u.lower));
    let one_plus_p = 1.0 + p.lower;
    Ok(ConjectureReport {
        domain: domain.to_json(),
        a_lower,
        a_sampled: u.lower,
        a_certificate: cert,
        one_plus_p_lower: one_plus_p,
        p_closed_form: p.closed_form,
        margin: a_lower - one_plus_p,
    })
}

/// One row of the certificate table.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateRow {
    pub domain: String,
    pub certificate: String,
    pub value: f64,
    pub closed_lo: Option<f64>,
    pub closed_hi: Option<f64>,
}

pub fn certificate_rows(domains: &[Domain]) -> Vec<CertificateRow> {
    domains
        .iter()
        .map(|d| {
            let cert = certificate_lower_bound(d).ok();
            let bounds = closed_bounds(d);
            CertificateRow {
                domain: d.to_json().to_string(),
                certificate: cert.as_ref().map_or("none".into(), |c| c.name.to_string()),
                value: cert.map_or(f64::NAN, |c| c.value),
                closed_lo: bounds.map(|b| b.lo),
                closed_hi: bounds.and_then(|b| b.hi),
            }
        })
        .collect()
}

/// CSV rendering of certificate rows with a header line.
pub fn certificate_csv(rows: &[CertificateRow]) -> String {
    let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
    let mut out = String::from("domain,certificate,value,closed_lo,closed_hi\n");
    for r in rows {
        let quoted = format!("\"{}\"", r.domain.replace('"', "\"\""));
        out.push_str(&format!("{quoted},{},{},{},{}\n", r.certificate, r.value, opt(r.closed_lo), opt(r.closed_hi)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_pairs_are_deterministic_and_interior() {
        let d = Domain::ellipse(2.0, 1.0).unwrap();
        let a = random_pairs(&d, 20, 7).unwrap();
        assert_eq!(a, random_pairs(&d, 20, 7).unwrap());
        assert_ne!(a, random_pairs(&d, 20, 8).unwrap());
        assert!(a.iter().all(|(x, y)| d.contains(*x) && d.contains(*y)));
    }

    #[test]
    fn csv_has_one_row_per_domain() {
        let rows = certificate_rows(&[Domain::unit_disk(), Domain::PuncturedPlane]);
        let csv = certificate_csv(&rows);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(2).unwrap().contains(",none,"));
    }
}
