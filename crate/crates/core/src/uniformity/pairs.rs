//! Structured pair families realizing the certificates, evaluated along
//! parameter ladders.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::certificates::{solve_beta, two_smallest};
use crate::domains::{segment_distance, ConvexPolygon, Domain};
use crate::error::Result;
use crate::qh::{j_metric, k_exact, triangle_geodesic_radius, KMethod, MetricSample};

const LADDER_STEPS: usize = 10;

/// One rung of a ladder: the family parameter and the evaluated pair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LadderStep {
    /// `−log` of the relative scale driving the family to its limit.
    pub param: f64,
    pub sample: MetricSample,
}

/// A pair family evaluated at increasing parameters, with the limit of
/// the ratio extrapolated from the last two rungs assuming an error
/// proportional to `1/param`.
#[derive(Debug, Clone, Serialize)]
pub struct Ladder {
    pub name: &'static str,
    pub steps: Vec<LadderStep>,
    pub extrapolated: Option<f64>,
}

impl Ladder {
    fn new(name: &'static str, steps: Vec<LadderStep>) -> Self {
        let extrapolated = richardson(&steps);
        Ladder { name, steps, extrapolated }
    }

    /// Largest ratio along the ladder.
    pub fn best(&self) -> Option<&LadderStep> {
        self.steps
            .iter()
            .filter(|s| s.sample.ratio.is_some())
            .fold(None, |best: Option<&LadderStep>, s| match best {
                Some(b) if b.sample.ratio >= s.sample.ratio => Some(b),
                _ => Some(s),
            })
    }
}

fn richardson(steps: &[LadderStep]) -> Option<f64> {
    let n = steps.len();
    if n < 2 {
        return None;
    }
    let (a, b) = (&steps[n - 2], &steps[n - 1]);
    let (ra, rb) = (a.sample.ratio?, b.sample.ratio?);
    if b.param == a.param {
        return None;
    }
    Some((b.param * rb - a.param * ra) / (b.param - a.param))
}

/// Pair of the sector family at unit scale in `S_α`: `x` on the bisector
/// with `|x| = 1`, `y` at `|y| = e^B` with `d(y) = 1`.
pub fn sector_pair(alpha: f64, b: f64) -> (Complex64, Complex64) {
    let u = (-b).exp().asin();
    (Complex64::from_polar(1.0, alpha / 2.0), Complex64::from_polar(b.exp(), u))
}

fn exact_sample(domain: &Domain, x: Complex64, y: Complex64) -> Result<Option<MetricSample>> {
    let j = j_metric(domain, x, y)?;
    Ok(k_exact(domain, x, y)?.map(|k| MetricSample::new(x, y, j, k, KMethod::Exact)))
}

/// Sector family in a sector of opening at most π, or in the half-plane.
pub fn sector_ladder(domain: &Domain, alpha: f64) -> Result<Ladder> {
    let mut steps = Vec::new();
    for i in 1..=LADDER_STEPS {
        let b = 4.0 * i as f64;
        let (x, y) = sector_pair(alpha, b);
        if let Some(sample) = exact_sample(domain, x, y)? {
            steps.push(LadderStep { param: b, sample });
        }
    }
    Ok(Ladder::new("sector", steps))
}

/// A convex corner: vertex `v`, unit direction `e1` of one edge, interior
/// angle `alpha` measured counterclockwise from `e1`, and a radius `r0`
/// within which the domain coincides with the sector at `v` and lies in it.
#[derive(Debug, Clone, Copy)]
pub struct VertexSite {
    pub v: Complex64,
    pub e1: Complex64,
    pub alpha: f64,
    pub r0: f64,
}

pub fn polygon_sites(p: &ConvexPolygon) -> Vec<VertexSite> {
    let v = p.vertices();
    let n = v.len();
    let angles = p.angles();
    (0..n)
        .map(|i| {
            let (prev, next) = (v[(i + n - 1) % n], v[(i + 1) % n]);
            let mut r0 = (next - v[i]).norm().min((prev - v[i]).norm());
            for e in 0..n {
                let (a, b) = (v[e], v[(e + 1) % n]);
                if e != i && (e + 1) % n != i {
                    r0 = r0.min(segment_distance(v[i], a, b));
                }
            }
            VertexSite { v: v[i], e1: (next - v[i]) / (next - v[i]).norm(), alpha: angles[i], r0 }
        })
        .collect()
}

pub fn double_sector_sites(alpha: f64, beta: f64) -> Vec<VertexSite> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let leg0 = Complex64::from_polar(1.0, alpha);
    let leg1 = Complex64::from_polar(1.0, PI - beta);
    vec![
        VertexSite { v: zero, e1: one, alpha, r0: 1f64.min(ray_dist(zero, one, leg1)) },
        VertexSite { v: one, e1: leg1, alpha: beta, r0: 1f64.min(ray_dist(one, zero, leg0)) },
    ]
}

fn ray_dist(z: Complex64, origin: Complex64, dir: Complex64) -> f64 {
    crate::domains::ray_distance(z, origin, dir)
}

/// Sector family scaled into a corner. Inside `B(v, r0)` the domain equals
/// the sector, so `j` agrees with the sector value and the sector `k` is a
/// lower bound for `k` in the domain.
pub fn vertex_ladder(site: &VertexSite) -> Result<Ladder> {
    let local = Domain::sector(site.alpha)?;
    let mut steps = Vec::new();
    for i in 1..=LADDER_STEPS {
        let b = 4.0 * i as f64;
        let (x0, y0) = sector_pair(site.alpha, b);
        let Some(s) = exact_sample(&local, x0, y0)? else { continue };
        let delta = site.r0 / (b.exp() + 1.0);
        let place = |z: Complex64| site.v + site.e1 * z * delta;
        let sample = MetricSample::new(place(x0), place(y0), s.j, s.k, KMethod::Bound);
        steps.push(LadderStep { param: b, sample });
    }
    Ok(Ladder::new("vertex_angle", steps))
}

/// Smallest-angle corner among the sites with angle below π.
pub fn sharpest(sites: &[VertexSite]) -> Option<VertexSite> {
    sites
        .iter()
        .filter(|s| s.alpha < PI)
        .copied()
        .fold(None, |best: Option<VertexSite>, s| match best {
            Some(b) if b.alpha <= s.alpha => Some(b),
            _ => Some(s),
        })
}

/// Diagonal pairs `±x` of a rhombus approaching the vertices of the
/// smallest angle, with the closed-form `k` along the diagonal.
pub fn rhombus_ladder(p: &ConvexPolygon) -> Ladder {
    let v = p.vertices();
    let angles = p.angles();
    let i = if angles[0] <= angles[1] { 0 } else { 1 };
    let center = (v[0] + v[2]) * 0.5;
    let half = v[i] - center;
    let c = (angles[i] / 2.0).sin();
    let steps = (1..=LADDER_STEPS)
        .map(|n| {
            let eps = 2f64.powi(-10 * n as i32);
            let k = -2.0 * eps.ln() / c;
            let j = (2.0 * (1.0 - eps) / (eps * c)).ln_1p();
            let x = center + half * (1.0 - eps);
            let y = center - half * (1.0 - eps);
            LadderStep { param: -eps.ln(), sample: MetricSample::new(y, x, j, k, KMethod::Exact) }
        })
        .collect();
    Ladder::new("rhombus_diagonal", steps)
}

/// Symmetric pairs on an axis of an ellipse or disk through `center` in
/// direction `dir`, with half-length `h`, approaching the boundary.
pub fn axis_ladder(domain: &Domain, center: Complex64, dir: Complex64, h: f64) -> Result<Ladder> {
    let mut steps = Vec::new();
    for n in 1..=LADDER_STEPS {
        let eps = 2f64.powi(-5 * n as i32);
        let s = h * (1.0 - eps);
        if let Some(sample) = exact_sample(domain, center - dir * s, center + dir * s)? {
            steps.push(LadderStep { param: -eps.ln(), sample });
        }
    }
    Ok(Ladder::new("axis", steps))
}

/// Major-axis pair `±(a − b²/a)` of the ellipse.
pub fn ellipse_major_pair(domain: &Domain, a: f64, b: f64) -> Result<Option<MetricSample>> {
    let t = a - b * b / a;
    if t <= 0.0 {
        return Ok(None);
    }
    exact_sample(domain, Complex64::new(-t, 0.0), Complex64::new(t, 0.0))
}

/// Lower bound for `k` between `x = ε e^{iα/2}` and `y = 1 + ε e^{i(π−β/2)}`
/// on the medial axis of the triangle with base `[0, 1]` and base angles
/// `α ≤ β`: the bisector legs are forced, giving `C + (1/sin(α/2) +
/// 1/sin(β/2))·(−log ε)`.
pub fn triangle_k_lower(alpha: f64, beta: f64, eps: f64) -> f64 {
    let r = triangle_geodesic_radius(alpha, beta);
    let (sa, sb) = ((alpha / 2.0).sin(), (beta / 2.0).sin());
    let c = (r.ln() - (alpha / 2.0).tan().ln()) / sa + (r.ln() - (beta / 2.0).tan().ln()) / sb;
    c + (1.0 / sa + 1.0 / sb) * (-eps.ln())
}

/// Medial-axis family of a triangle whose two smallest angles satisfy
/// `β < π/2`; `None` otherwise. Ratios are evaluated in closed form from
/// `ε`; witnesses are mapped into the given triangle by a similarity and
/// are rounded for the deepest rungs.
pub fn triangle_ladder(p: &ConvexPolygon) -> Result<Option<Ladder>> {
    let angles = p.angles();
    let (alpha, beta) = two_smallest(&angles);
    if beta >= FRAC_PI_2 {
        return Ok(None);
    }
    let v = p.vertices();
    let ia = (0..3).min_by(|&a, &b| angles[a].total_cmp(&angles[b])).unwrap_or(0);
    let ib = (0..3)
        .filter(|&i| i != ia)
        .min_by(|&a, &b| angles[a].total_cmp(&angles[b]))
        .unwrap_or((ia + 1) % 3);
    let (pa, pb) = (v[ia], v[ib]);
    let forward = ib == (ia + 1) % 3;
    let place = |z: Complex64| pa + (pb - pa) * if forward { z } else { z.conj() };
    let r = triangle_geodesic_radius(alpha, beta);
    let eps0 = 0.5 * (r / (alpha / 2.0).tan()).min(r / (beta / 2.0).tan());
    let dmin = (alpha / 2.0).sin().min((beta / 2.0).sin());
    let mut steps = Vec::new();
    for n in 1..=LADDER_STEPS {
        let eps = eps0 * 10f64.powi(-3 * n as i32);
        let x = Complex64::from_polar(eps, alpha / 2.0);
        let dy = Complex64::from_polar(eps, PI - beta / 2.0);
        // d(x) = ε sin(α/2) and d(y) = ε sin(β/2) this close to the vertices
        let j = ((Complex64::new(-1.0, 0.0) + x - dy).norm() / (eps * dmin)).ln_1p();
        let k = triangle_k_lower(alpha, beta, eps);
        let y = Complex64::new(1.0, 0.0) + dy;
        steps.push(LadderStep { param: -eps.ln(), sample: MetricSample::new(place(x), place(y), j, k, KMethod::Bound) });
    }
    Ok(Some(Ladder::new("triangle_medial_axis", steps)))
}

/// Symmetric pairs `±ti` of the twice-punctured plane around `t = β`.
pub fn twice_punctured_pairs(domain: &Domain) -> Result<Ladder> {
    let beta = solve_beta();
    let mut steps = Vec::new();
    for f in [0.5, 0.8, 0.9, 0.95, 0.99, 1.0, 1.01, 1.05, 1.1, 1.5] {
        let t = beta * f;
        if let Some(sample) = exact_sample(domain, Complex64::new(0.0, t), Complex64::new(0.0, -t))? {
            steps.push(LadderStep { param: t, sample });
        }
    }
    Ok(Ladder { name: "twice_punctured", steps, extrapolated: None })
}

/// Antipodal pairs `±ρ` outside the unit disk with the lower bound `k ≥ π`
/// from the punctured plane.
pub fn disk_exterior_ladder(domain: &Domain) -> Result<Ladder> {
    let mut steps = Vec::new();
    for n in 1..=LADDER_STEPS {
        let rho = 2f64.powi(n as i32);
        let (x, y) = (Complex64::new(rho, 0.0), Complex64::new(-rho, 0.0));
        let j = j_metric(domain, x, y)?;
        steps.push(LadderStep { param: rho.ln(), sample: MetricSample::new(x, y, j, PI, KMethod::Bound) });
    }
    Ok(Ladder::new("disk_exterior", steps))
}

/// The pair `0, 2` with the lower bound for `k` from the shortest way
/// around the slit.
pub fn arc_slit_pair(domain: &Domain, a: f64) -> Result<MetricSample> {
    let (x, y) = (Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0));
    let j = j_metric(domain, x, y)?;
    let half = a / 2.0;
    let k = ((1.0 + half.cos()) / half.sin()).ln() + FRAC_PI_2 + half;
    Ok(MetricSample::new(x, y, j, k, KMethod::Bound))
}

/// All structured families for a domain.
pub fn structured_ladders(domain: &Domain) -> Result<Vec<Ladder>> {
    let mut out = Vec::new();
    match domain {
        Domain::Sector { alpha } if *alpha <= PI => out.push(sector_ladder(domain, *alpha)?),
        Domain::HalfPlane => out.push(sector_ladder(domain, PI)?),
        Domain::DoubleSector { alpha, beta } => {
            if let Some(site) = sharpest(&double_sector_sites(*alpha, *beta)) {
                out.push(vertex_ladder(&site)?);
            }
        }
        Domain::Triangle(p) => {
            if let Some(l) = triangle_ladder(p)? {
                out.push(l);
            }
            if let Some(site) = sharpest(&polygon_sites(p)) {
                out.push(vertex_ladder(&site)?);
            }
        }
        Domain::Parallelogram { polygon, .. } => {
            if domain.is_rhombus() {
                out.push(rhombus_ladder(polygon));
            }
            if let Some(site) = sharpest(&polygon_sites(polygon)) {
                out.push(vertex_ladder(&site)?);
            }
        }
        Domain::Ellipse(e) => {
            let (a, b) = (e.semi_major(), e.semi_minor());
            let zero = Complex64::new(0.0, 0.0);
            out.push(axis_ladder(domain, zero, Complex64::i(), b)?);
            if let Some(s) = ellipse_major_pair(domain, a, b)? {
                out.push(Ladder { name: "ellipse_major_axis", steps: vec![LadderStep { param: 0.0, sample: s }], extrapolated: None });
            }
        }
        Domain::Disk { center, radius } => out.push(axis_ladder(domain, *center, Complex64::new(1.0, 0.0), *radius)?),
        Domain::ArcSlit { a } => {
            let s = arc_slit_pair(domain, *a)?;
            out.push(Ladder { name: "arc_slit", steps: vec![LadderStep { param: 0.0, sample: s }], extrapolated: None });
        }
        Domain::DiskExterior => out.push(disk_exterior_ladder(domain)?),
        Domain::TwicePuncturedPlane => out.push(twice_punctured_pairs(domain)?),
        _ => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn sector_pair_has_unit_clearance() {
        let (x, y) = sector_pair(1.0, 7.0);
        let d = Domain::sector(1.0).unwrap();
        assert!((d.dist_to_boundary(y).unwrap() - 1.0).abs() < 1e-9);
        assert!((x.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vertex_sites_fit_inside_polygon() {
        let t = Domain::triangle_from_angles(FRAC_PI_3, FRAC_PI_3).unwrap();
        let p = t.polygon().unwrap();
        for site in polygon_sites(p) {
            let ladder = vertex_ladder(&site).unwrap();
            for step in &ladder.steps[..3] {
                let s = step.sample;
                assert!(t.contains(s.x) && t.contains(s.y));
                let jg = j_metric(&t, s.x, s.y).unwrap();
                assert!((jg - s.j).abs() < 1e-6 * s.j, "{jg} {}", s.j);
            }
        }
    }

    #[test]
    fn rhombus_ladder_agrees_with_exact_diagonal_distance() {
        let d = Domain::rhombus(FRAC_PI_3).unwrap();
        let l = rhombus_ladder(d.polygon().unwrap());
        let s = l.steps[0].sample;
        let k = k_exact(&d, s.x, s.y).unwrap().unwrap();
        assert!((k - s.k).abs() < 1e-9 * k);
        assert!((j_metric(&d, s.x, s.y).unwrap() - s.j).abs() < 1e-9);
    }

    #[test]
    fn triangle_ladder_is_mapped_by_similarity() {
        let t = Domain::triangle(Complex64::new(2.0, 1.0), Complex64::new(2.0, 3.0), Complex64::new(0.5, 2.0)).unwrap();
        let l = triangle_ladder(t.polygon().unwrap()).unwrap().unwrap();
        for step in &l.steps[..3] {
            let s = step.sample;
            assert!(t.contains(s.x) && t.contains(s.y));
            assert!((j_metric(&t, s.x, s.y).unwrap() - s.j).abs() < 1e-5 * s.j);
        }
    }
}
