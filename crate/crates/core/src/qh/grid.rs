//! Grid shortest-path solver for the quasihyperbolic distance with
//! path straightening.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::Serialize;

use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::optim::golden_section;
use crate::quad::{gl16, integrate_fixed};

/// Nodes closer than `EXCLUSION · h` to the boundary are dropped.
const EXCLUSION: f64 = 2.0;
/// Panel length limit relative to the boundary distance at its midpoint.
const PANEL_RATIO: f64 = 4.0;
const MAX_PANEL_DEPTH: u32 = 64;
const MIN_RESOLUTION: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridSolverConfig {
    /// Cells per bounding-box side.
    pub resolution: usize,
    /// 8 or 16 neighbours.
    pub stencil: usize,
    /// Vertex relaxation sweeps after shortcutting.
    pub refinement_passes: usize,
}

impl Default for GridSolverConfig {
    fn default() -> Self {
        GridSolverConfig { resolution: 256, stencil: 16, refinement_passes: 3 }
    }
}

impl GridSolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < MIN_RESOLUTION {
            return Err(Error::Config(format!(
                "grid resolution must be at least {MIN_RESOLUTION}, got {}",
                self.resolution
            )));
        }
        if self.stencil != 8 && self.stencil != 16 {
            return Err(Error::Config(format!("stencil must be 8 or 16, got {}", self.stencil)));
        }
        Ok(())
    }
}

/// A polyline joining the pair and its quasihyperbolic length.
#[derive(Debug, Clone, Serialize)]
pub struct GridPath {
    pub k: f64,
    pub path: Vec<Complex64>,
    pub resolution: usize,
}

/// Quasihyperbolic length of the segment `[p, q]`, or infinity when the
/// segment cannot be certified to stay inside the domain.
///
/// The segment is split into panels no longer than a quarter of the
/// boundary distance at their midpoints; such a panel lies in the disk of
/// that radius about its midpoint, hence in the domain. Each panel is
/// integrated with a 16-point Gauss rule.
pub fn segment_cost(domain: &Domain, p: Complex64, q: Complex64) -> f64 {
    if p == q {
        return 0.0;
    }
    let len = (q - p).norm();
    let mut total = 0.0;
    let mut stack = vec![(0.0f64, 1.0f64, 0u32)];
    while let Some((a, b, depth)) = stack.pop() {
        let mid = p + (q - p) * (0.5 * (a + b));
        let d = if domain.contains(mid) {
            domain.dist_to_boundary(mid).unwrap_or(0.0)
        } else {
            0.0
        };
        if d <= 0.0 || depth > MAX_PANEL_DEPTH {
            return f64::INFINITY;
        }
        let panel = (b - a) * len;
        if panel * PANEL_RATIO <= d {
            total += integrate_fixed(gl16(), a, b, |t| {
                let z = p + (q - p) * t;
                1.0 / domain.dist_to_boundary(z).unwrap_or(0.0)
            }) * len;
        } else {
            let m = 0.5 * (a + b);
            stack.push((m, b, depth + 1));
            stack.push((a, m, depth + 1));
        }
    }
    total
}

/// Length of a polyline under `segment_cost`.
pub fn polyline_cost(domain: &Domain, path: &[Complex64]) -> f64 {
    path.windows(2).map(|w| segment_cost(domain, w[0], w[1])).sum()
}

struct Lattice {
    lo: Complex64,
    h: f64,
    n: usize,
    weight: Vec<f64>,
}

impl Lattice {
    fn build(domain: &Domain, lo: Complex64, side: f64, n: usize) -> Self {
        let h = side / n as f64;
        let mut weight = vec![f64::NAN; (n + 1) * (n + 1)];
        for j in 0..=n {
            for i in 0..=n {
                let z = lo + Complex64::new(i as f64 * h, j as f64 * h);
                if domain.contains(z) {
                    if let Ok(d) = domain.dist_to_boundary(z) {
                        if d >= EXCLUSION * h {
                            weight[j * (n + 1) + i] = 1.0 / d;
                        }
                    }
                }
            }
        }
        Lattice { lo, h, n, weight }
    }

    fn point(&self, idx: usize) -> Complex64 {
        let (i, j) = (idx % (self.n + 1), idx / (self.n + 1));
        self.lo + Complex64::new(i as f64 * self.h, j as f64 * self.h)
    }

    fn valid(&self, idx: usize) -> bool {
        !self.weight[idx].is_nan()
    }

    /// Valid nodes within `radius` of `z`.
    fn near(&self, z: Complex64, radius: f64) -> Vec<usize> {
        let rel = (z - self.lo) / self.h;
        let r = (radius / self.h).ceil() as i64;
        let (ci, cj) = (rel.re.round() as i64, rel.im.round() as i64);
        let mut out = Vec::new();
        for j in (cj - r).max(0)..=(cj + r).min(self.n as i64) {
            for i in (ci - r).max(0)..=(ci + r).min(self.n as i64) {
                let idx = j as usize * (self.n + 1) + i as usize;
                if self.valid(idx) && (self.point(idx) - z).norm() <= radius {
                    out.push(idx);
                }
            }
        }
        out
    }
}

fn stencil_offsets(stencil: usize) -> Vec<(i64, i64)> {
    let mut v = vec![(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];
    if stencil == 16 {
        v.extend([(1, 2), (2, 1), (-1, 2), (-2, 1), (1, -2), (2, -1), (-1, -2), (-2, -1)]);
    }
    v
}

/// Attachments of an endpoint to nearby lattice nodes with exact segment
/// costs, widening the search radius until something connects.
fn attach(domain: &Domain, lat: &Lattice, z: Complex64) -> Vec<(usize, f64)> {
    let mut radius = 2.5 * lat.h;
    let limit = lat.h * lat.n as f64 / 4.0;
    while radius <= limit {
        let links: Vec<(usize, f64)> = lat
            .near(z, radius)
            .into_iter()
            .map(|idx| (idx, segment_cost(domain, z, lat.point(idx))))
            .filter(|(_, c)| c.is_finite())
            .collect();
        if !links.is_empty() {
            return links;
        }
        radius *= 2.0;
    }
    Vec::new()
}

fn solve_level(domain: &Domain, x: Complex64, y: Complex64, n: usize, stencil: usize) -> Result<Vec<Complex64>> {
    let (lo, side) = match domain.bounding_box() {
        Some((lo, hi)) => {
            let side = (hi.re - lo.re).max(hi.im - lo.im);
            (lo, side)
        }
        None => {
            let clearance = domain.dist_to_boundary(x)?.max(domain.dist_to_boundary(y)?);
            let half = 2.0 * (x - y).norm() + clearance;
            let mid = 0.5 * (x + y);
            (mid - Complex64::new(half, half), 2.0 * half)
        }
    };
    let lat = Lattice::build(domain, lo, side, n);
    let sources = attach(domain, &lat, x);
    let sinks = attach(domain, &lat, y);
    let direct = if (x - y).norm() <= 4.0 * lat.h { segment_cost(domain, x, y) } else { f64::INFINITY };
    if (sources.is_empty() || sinks.is_empty()) && !direct.is_finite() {
        return Err(Error::Disconnected);
    }
    let size = (n + 1) * (n + 1);
    let mut sink_cost = vec![f64::INFINITY; size];
    for &(idx, c) in &sinks {
        sink_cost[idx] = c;
    }
    let mut dist = vec![f64::INFINITY; size];
    let mut prev = vec![usize::MAX; size];
    let mut heap = BinaryHeap::new();
    for &(idx, c) in &sources {
        if c < dist[idx] {
            dist[idx] = c;
            heap.push(Reverse((ordered(c), idx)));
        }
    }
    let offsets: Vec<(i64, i64, f64)> = stencil_offsets(stencil)
        .into_iter()
        .map(|(di, dj)| (di, dj, lat.h * ((di * di + dj * dj) as f64).sqrt()))
        .collect();
    let mut best = (direct, usize::MAX);
    while let Some(Reverse((key, idx))) = heap.pop() {
        let du = f64::from_bits(key);
        if du > dist[idx] {
            continue;
        }
        if du >= best.0 {
            break;
        }
        if du + sink_cost[idx] < best.0 {
            best = (du + sink_cost[idx], idx);
        }
        let (i, j) = ((idx % (n + 1)) as i64, (idx / (n + 1)) as i64);
        let wu = lat.weight[idx];
        for &(di, dj, len) in &offsets {
            let (ni, nj) = (i + di, j + dj);
            if ni < 0 || nj < 0 || ni > n as i64 || nj > n as i64 {
                continue;
            }
            let nidx = nj as usize * (n + 1) + ni as usize;
            let wv = lat.weight[nidx];
            if wv.is_nan() {
                continue;
            }
            let cand = du + 0.5 * len * (wu + wv);
            if cand < dist[nidx] {
                dist[nidx] = cand;
                prev[nidx] = idx;
                heap.push(Reverse((ordered(cand), nidx)));
            }
        }
    }
    if !best.0.is_finite() {
        return Err(Error::Disconnected);
    }
    let mut path = vec![y];
    let mut cur = best.1;
    while cur != usize::MAX {
        path.push(lat.point(cur));
        cur = prev[cur];
    }
    path.push(x);
    path.reverse();
    Ok(path)
}

/// Order-preserving key for non-negative floats.
fn ordered(v: f64) -> u64 {
    v.to_bits()
}

/// Replaces runs of vertices by chords when the chord is shorter, trying
/// strides 2, 4, 8, ….
fn shortcut(domain: &Domain, path: Vec<Complex64>) -> Vec<Complex64> {
    let mut pts = path;
    let mut costs: Vec<f64> = pts.windows(2).map(|w| segment_cost(domain, w[0], w[1])).collect();
    let mut stride = 2;
    while stride < 2 * pts.len() {
        let mut new_pts = vec![pts[0]];
        let mut new_costs = Vec::new();
        let mut i = 0;
        let last = pts.len() - 1;
        while i < last {
            let j = (i + stride).min(last);
            let run: f64 = costs[i..j].iter().sum();
            let chord = if j - i > 1 { segment_cost(domain, pts[i], pts[j]) } else { f64::INFINITY };
            if chord < run {
                new_pts.push(pts[j]);
                new_costs.push(chord);
            } else {
                new_pts.extend_from_slice(&pts[i + 1..=j]);
                new_costs.extend_from_slice(&costs[i..j]);
            }
            i = j;
        }
        pts = new_pts;
        costs = new_costs;
        stride *= 2;
    }
    pts
}

/// Resamples at equal quasihyperbolic length increments.
fn resample(domain: &Domain, path: &[Complex64], count: usize) -> Vec<Complex64> {
    let costs: Vec<f64> = path.windows(2).map(|w| segment_cost(domain, w[0], w[1])).collect();
    let total: f64 = costs.iter().sum();
    if !total.is_finite() || total <= 0.0 || path.len() < 2 {
        return path.to_vec();
    }
    let mut out = vec![path[0]];
    let mut acc = 0.0;
    let mut seg = 0;
    for k in 1..count {
        let target = total * k as f64 / count as f64;
        while seg < costs.len() - 1 && acc + costs[seg] < target {
            acc += costs[seg];
            seg += 1;
        }
        let u = if costs[seg] > 0.0 { ((target - acc) / costs[seg]).clamp(0.0, 1.0) } else { 0.0 };
        out.push(path[seg] + (path[seg + 1] - path[seg]) * u);
    }
    out.push(path[path.len() - 1]);
    out
}

/// Moves each interior vertex along the local normal to the position
/// minimising the two adjacent segment costs.
fn relax(domain: &Domain, path: &mut [Complex64], passes: usize) {
    for _ in 0..passes {
        for i in 1..path.len().saturating_sub(1) {
            let (a, v, b) = (path[i - 1], path[i], path[i + 1]);
            let chord = b - a;
            if chord.norm() == 0.0 {
                continue;
            }
            let normal = Complex64::i() * chord / chord.norm();
            let reach = 0.5 * (v - a).norm().min((b - v).norm());
            let f = |t: f64| {
                let z = v + normal * t;
                segment_cost(domain, a, z) + segment_cost(domain, z, b)
            };
            let current = f(0.0);
            let (t, ft) = golden_section(f, -reach, reach, reach * 1e-4);
            if ft < current {
                path[i] = v + normal * t;
            }
        }
    }
}

fn straighten(domain: &Domain, path: &[Complex64], passes: usize) -> Vec<Complex64> {
    let short = shortcut(domain, path.to_vec());
    let count = (short.len() * 2).clamp(16, 64);
    let mut res = resample(domain, &short, count);
    relax(domain, &mut res, passes);
    let res = shortcut(domain, res);
    if polyline_cost(domain, &res) < polyline_cost(domain, &short) {
        res
    } else {
        short
    }
}

/// Grid approximation of `k_D(x, y)` with the best path found.
///
/// The solver runs at `resolution`, `resolution/2`, … down to 32 and keeps
/// the cheapest path, each measured by `polyline_cost`. Every reported
/// value is the length of an explicit curve in the domain, and doubling the
/// resolution can only lower it.
pub fn k_grid_path(domain: &Domain, x: Complex64, y: Complex64, cfg: &GridSolverConfig) -> Result<GridPath> {
    cfg.validate()?;
    for z in [x, y] {
        if !domain.contains(z) {
            return Err(Error::OutsideDomain(z.re, z.im));
        }
    }
    if x == y {
        return Ok(GridPath { k: 0.0, path: vec![x, y], resolution: cfg.resolution });
    }
    // Solve in a canonical order so that k(x, y) = k(y, x) exactly.
    if (y.re, y.im) < (x.re, x.im) {
        let mut out = k_grid_path(domain, y, x, cfg)?;
        out.path.reverse();
        return Ok(out);
    }
    let mut levels = vec![cfg.resolution];
    while levels[levels.len() - 1] / 2 >= MIN_RESOLUTION {
        let next = levels[levels.len() - 1] / 2;
        levels.push(next);
    }
    let mut best: Option<GridPath> = None;
    let mut last_err = Error::Disconnected;
    for &n in levels.iter().rev() {
        match solve_level(domain, x, y, n, cfg.stencil) {
            Ok(raw) => {
                let raw_cost = polyline_cost(domain, &raw);
                let smooth = straighten(domain, &raw, cfg.refinement_passes);
                let smooth_cost = polyline_cost(domain, &smooth);
                let (k, path) = if smooth_cost < raw_cost { (smooth_cost, smooth) } else { (raw_cost, raw) };
                if k.is_finite() && best.as_ref().map_or(true, |b| k < b.k) {
                    best = Some(GridPath { k, path, resolution: n });
                }
            }
            Err(e) => last_err = e,
        }
    }
    best.ok_or(last_err)
}

pub fn k_grid(domain: &Domain, x: Complex64, y: Complex64, cfg: &GridSolverConfig) -> Result<f64> {
    k_grid_path(domain, x, y, cfg).map(|p| p.k)
}
