//! Global maximisation of the Ptolemy ratio over ordered boundary quadruples.

use std::cmp::Ordering;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::closed_form::{closed_form_ptolemy, ClosedForm};
use super::ptolemy_ratio;
use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::geom::ExtComplex;
use crate::optim::nelder_mead;

/// Corner ladder offsets run down to `2^-LADDER_DEPTH` in chart units.
const LADDER_DEPTH: i32 = 20;
/// Smallest chart gap allowed during refinement.
const MIN_GAP: f64 = 1.0 / (1u64 << 21) as f64;
const PENALTY: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PtolemyConfig {
    pub grid_n: usize,
    pub refine_iters: usize,
    pub multistarts: usize,
    pub seed: u64,
}

impl Default for PtolemyConfig {
    fn default() -> Self {
        PtolemyConfig { grid_n: 128, refine_iters: 400, multistarts: 16, seed: 0 }
    }
}

/// An ordered boundary quadruple with its chart parameters and ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadrupleResult {
    pub points: [ExtComplex; 4],
    pub params: [f64; 4],
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PtolemyEstimate {
    pub domain: serde_json::Value,
    pub lower: f64,
    pub closed_form: Option<f64>,
    pub bounds: Option<(f64, f64)>,
    pub witness: QuadrupleResult,
    pub config: PtolemyConfig,
    pub wall_time_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    params: [f64; 4],
}

/// Larger value first, then the lexicographically smaller parameters.
fn rank(a: &Candidate, b: &Candidate) -> Ordering {
    b.value.total_cmp(&a.value).then_with(|| {
        a.params
            .iter()
            .zip(&b.params)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

struct TopK {
    k: usize,
    items: Vec<Candidate>,
}

impl TopK {
    fn new(k: usize) -> Self {
        TopK { k, items: Vec::with_capacity(k + 1) }
    }

    fn threshold(&self) -> f64 {
        if self.items.len() < self.k {
            f64::NEG_INFINITY
        } else {
            self.items[self.k - 1].value
        }
    }

    fn push(&mut self, c: Candidate) {
        if self.items.len() == self.k && rank(&c, &self.items[self.k - 1]) != Ordering::Less {
            return;
        }
        let pos = self.items.partition_point(|x| rank(x, &c) == Ordering::Less);
        self.items.insert(pos, c);
        self.items.truncate(self.k);
    }

    fn merge(mut self, other: TopK) -> TopK {
        for c in other.items {
            self.push(c);
        }
        self
    }
}

/// Chart evaluation shared by the grid, ladder and refinement stages.
struct Chart<'a> {
    domain: &'a Domain,
}

impl Chart<'_> {
    fn point(&self, s: f64) -> Result<ExtComplex> {
        self.domain.chart_point(s)
    }

    fn value(&self, params: &[f64; 4]) -> Option<f64> {
        let pts: Vec<ExtComplex> = params.iter().map(|&s| self.point(s)).collect::<Result<_>>().ok()?;
        ptolemy_ratio(pts[0], pts[1], pts[2], pts[3]).ok().filter(|v| v.is_finite())
    }
}

/// Cyclic gaps of parameters that should increase around the circle.
fn cyclic_gaps(p: &[f64]) -> [f64; 4] {
    [p[1] - p[0], p[2] - p[1], p[3] - p[2], p[0] + 1.0 - p[3]]
}

/// Rotates a cyclically ordered parameter vector so it increases on `[0, 1)`.
fn canonical(params: [f64; 4], points: [ExtComplex; 4]) -> ([f64; 4], [ExtComplex; 4]) {
    let wrapped = params.map(|s| s.rem_euclid(1.0));
    let start = (0..4)
        .min_by(|&i, &j| wrapped[i].total_cmp(&wrapped[j]))
        .unwrap_or(0);
    let mut p = [0.0; 4];
    let mut q = points;
    for k in 0..4 {
        p[k] = wrapped[(start + k) % 4];
        q[k] = points[(start + k) % 4];
    }
    (p, q)
}

/// Estimates `P(D)` from below by a grid search over ordered boundary
/// quadruples, a ladder of quadruples closing in on each corner, and
/// Nelder–Mead refinement of the best starts.
///
/// With `refine_iters = 0` only the grid and ladder stages run, and the
/// result is monotone in `grid_n` along doublings.
pub fn estimate_ptolemy_constant(domain: &Domain, cfg: &PtolemyConfig) -> Result<PtolemyEstimate> {
    let started = Instant::now();
    if cfg.grid_n < 8 {
        return Err(Error::Config(format!("grid_n must be at least 8, got {}", cfg.grid_n)));
    }
    if cfg.multistarts == 0 {
        return Err(Error::Config("multistarts must be positive".into()));
    }
    if !domain.is_jordan() {
        return Err(Error::NotJordan(domain.name().into()));
    }
    let chart = Chart { domain };
    let corners = domain.chart_corners();

    let mut params: Vec<f64> = (0..cfg.grid_n).map(|i| i as f64 / cfg.grid_n as f64).collect();
    params.extend(corners.iter().copied());
    params.sort_by(f64::total_cmp);
    params.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    let mut finite_params = Vec::new();
    let mut finite_points = Vec::new();
    let mut has_infinity = false;
    for &s in &params {
        match chart.point(s)? {
            ExtComplex::Finite(z) => {
                finite_params.push(s);
                finite_points.push(z);
            }
            ExtComplex::Infinity => has_infinity = true,
        }
    }
    let m = finite_points.len();
    let dist: Vec<f64> = (0..m * m)
        .map(|ij| (finite_points[ij / m] - finite_points[ij % m]).norm())
        .collect();
    let k = cfg.multistarts;

    let grid_top = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut top = TopK::new(k);
            let di = &dist[i * m..(i + 1) * m];
            for j in i + 1..m {
                let dj = &dist[j * m..(j + 1) * m];
                let dij = di[j];
                for kk in j + 1..m {
                    let dk = &dist[kk * m..(kk + 1) * m];
                    let (dik, djk) = (di[kk], dj[kk]);
                    let mut bar = top.threshold();
                    for l in kk + 1..m {
                        let v = (dij * dk[l] + di[l] * djk) / (dik * dj[l]);
                        if v >= bar {
                            top.push(Candidate {
                                value: v,
                                params: [finite_params[i], finite_params[j], finite_params[kk], finite_params[l]],
                            });
                            bar = top.threshold();
                        }
                    }
                }
            }
            top
        })
        .reduce(|| TopK::new(k), TopK::merge);

    let mut pool = grid_top;
    if has_infinity {
        // One point pinned at infinity, the chart parameter 0.
        let pinned = (0..m)
            .into_par_iter()
            .map(|j| {
                let mut top = TopK::new(k);
                for kk in j + 1..m {
                    for l in kk + 1..m {
                        let v = (dist[j * m + kk] + dist[kk * m + l]) / dist[j * m + l];
                        if v >= top.threshold() {
                            top.push(Candidate {
                                value: v,
                                params: [0.0, finite_params[j], finite_params[kk], finite_params[l]],
                            });
                        }
                    }
                }
                top
            })
            .reduce(|| TopK::new(k), TopK::merge);
        pool = pool.merge(pinned);
    }

    for &corner in &corners {
        let b = chart.point(corner)?;
        for depth in 1..=LADDER_DEPTH {
            let delta = 2f64.powi(-depth);
            let (sa, sc) = (corner - delta, corner + delta);
            let (a, c) = (chart.point(sa)?, chart.point(sc)?);
            let mut best: Option<Candidate> = None;
            let mut consider = |sd: f64, d: ExtComplex| {
                let off = (sd - corner).rem_euclid(1.0);
                if off <= delta || off >= 1.0 - delta {
                    return;
                }
                if let Ok(v) = ptolemy_ratio(a, b, c, d) {
                    // unwrap d past c so the four parameters increase
                    let sd_unwrapped = corner + off;
                    let cand = Candidate { value: v, params: [sa, corner, sc, sd_unwrapped] };
                    if v.is_finite() && best.map_or(true, |x| rank(&cand, &x) == Ordering::Less) {
                        best = Some(cand);
                    }
                }
            };
            for (sd, d) in finite_params.iter().zip(&finite_points) {
                consider(*sd, ExtComplex::Finite(*d));
            }
            if has_infinity {
                consider(0.0, ExtComplex::Infinity);
            }
            if let Some(c) = best {
                pool.push(c);
            }
        }
    }

    let mut results: Vec<Candidate> = pool.items.clone();
    if cfg.refine_iters > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let base_step = 0.5 / cfg.grid_n as f64;
        let starts: Vec<(Candidate, [f64; 4])> = pool
            .items
            .iter()
            .map(|c| {
                let mut step = [0.0; 4];
                for s in step.iter_mut() {
                    *s = base_step * rng.gen_range(0.5..1.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
                }
                (*c, step)
            })
            .collect();
        let refined: Vec<Candidate> = starts
            .into_par_iter()
            .filter_map(|(start, step)| {
                let objective = |x: &[f64]| -> f64 {
                    let gaps = cyclic_gaps(x);
                    let violation: f64 = gaps.iter().map(|g| (MIN_GAP - g).max(0.0)).sum();
                    if violation > 0.0 {
                        return PENALTY * violation;
                    }
                    let p = [x[0], x[1], x[2], x[3]];
                    chart.value(&p).map_or(PENALTY, |v| -v)
                };
                let r = nelder_mead(objective, &start.params, &step, cfg.refine_iters, 1e-15);
                let p = [r.x[0], r.x[1], r.x[2], r.x[3]];
                if cyclic_gaps(&p).iter().any(|&g| g < MIN_GAP) {
                    return None;
                }
                chart.value(&p).map(|value| Candidate { value, params: p })
            })
            .collect();
        results.extend(refined);
    }
    results.sort_by(rank);
    let best = results
        .first()
        .copied()
        .ok_or_else(|| Error::DegenerateInput("no admissible quadruple".into()))?;

    let points = [0, 1, 2, 3].map(|i| chart.point(best.params[i]));
    let points = [points[0].clone()?, points[1].clone()?, points[2].clone()?, points[3].clone()?];
    let (params, points) = canonical(best.params, points);
    let cf = closed_form_ptolemy(domain);
    Ok(PtolemyEstimate {
        domain: domain.to_json(),
        lower: best.value,
        closed_form: cf.and_then(|c| c.exact()),
        bounds: cf.and_then(|c| match c {
            ClosedForm::Bounds { lo, hi } => Some((lo, hi)),
            ClosedForm::Exact { .. } => None,
        }),
        witness: QuadrupleResult { points, params, value: best.value },
        config: *cfg,
        wall_time_ms: Some(started.elapsed().as_millis() as u64),
    })
}
