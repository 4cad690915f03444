//! Randomized invariant checks, 1000 cases each by default.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domains::Domain;
use crate::geom::{cross_ratio, quad_sector_angle, ExtComplex, MobiusMap};
use crate::ptolemy::{
    estimate_ptolemy_constant, normalize_to_parallelogram, ptolemy_ratio_finite, reduce_quadrilateral_to_sector,
    PtolemyConfig,
};
use crate::qh::{j_metric, k_exact};

#[derive(Debug, Clone, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
    /// Largest violation margin seen, 0 when none.
    pub worst: f64,
}

struct Tally {
    name: &'static str,
    cases: usize,
    violations: usize,
    worst: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, violations: 0, worst: 0.0 }
    }

    /// Records a case whose excess over the tolerance is `excess`
    /// (non-positive when the property holds).
    fn record(&mut self, excess: f64) {
        self.cases += 1;
        if !(excess <= 0.0) {
            self.violations += 1;
            self.worst = self.worst.max(if excess.is_nan() { f64::INFINITY } else { excess });
        }
    }

    fn done(self) -> PropertyOutcome {
        PropertyOutcome { name: self.name, cases: self.cases, violations: self.violations, worst: self.worst }
    }
}

fn point(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Four well-separated sorted angles in `[0, 2π)`.
fn sorted_angles(rng: &mut ChaCha8Rng, gap: f64) -> [f64; 4] {
    loop {
        let mut t: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..2.0 * PI));
        t.sort_by(f64::total_cmp);
        let ok = (0..4).all(|i| {
            let next = if i == 3 { t[0] + 2.0 * PI } else { t[i + 1] };
            (gap..=PI - gap).contains(&(next - t[i]))
        });
        if ok {
            return t;
        }
    }
}

/// Star-shaped, hence simple, quadrilateral; convex when `convex`.
fn quadrilateral(rng: &mut ChaCha8Rng, convex: bool) -> [Complex64; 4] {
    let t = sorted_angles(rng, 0.3);
    let (a, b) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
    let c = point(rng, 1.0);
    std::array::from_fn(|i| {
        let r = if convex { 1.0 } else { rng.gen_range(0.4..1.6) };
        c + Complex64::new(a * r * t[i].cos(), b * r * t[i].sin())
    })
}

fn rel_excess(value: f64, bound: f64, rel: f64) -> f64 {
    value - bound - rel * bound.abs().max(1.0)
}

fn mobius_invariance(rng: &mut ChaCha8Rng, cases: usize) -> [PropertyOutcome; 2] {
    let mut p_tally = Tally::new("mobius_invariance_p");
    let mut cr_tally = Tally::new("mobius_invariance_cross_ratio");
    while p_tally.cases < cases {
        let coeffs: [Complex64; 4] = std::array::from_fn(|_| point(rng, 2.0));
        let Ok(m) = MobiusMap::new(coeffs[0], coeffs[1], coeffs[2], coeffs[3]) else { continue };
        if m.determinant().norm() < 0.1 {
            continue;
        }
        let pts: [Complex64; 4] = std::array::from_fn(|_| point(rng, 2.0));
        let images: Vec<Complex64> = pts.iter().filter_map(|&z| m.apply_finite(z)).collect();
        if images.len() < 4 || images.iter().any(|w| w.norm() > 1e3) {
            continue;
        }
        let min_gap = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .map(|(i, j)| (pts[i] - pts[j]).norm().min((images[i] - images[j]).norm()))
            .fold(f64::INFINITY, f64::min);
        if min_gap < 1e-2 {
            continue;
        }
        let p0 = ptolemy_ratio_finite(pts[0], pts[1], pts[2], pts[3]);
        let p1 = ptolemy_ratio_finite(images[0], images[1], images[2], images[3]);
        p_tally.record((p0 - p1).abs() - 1e-9 * p0);
        let e = |z: Complex64| ExtComplex::Finite(z);
        let c0 = cross_ratio(e(pts[0]), e(pts[1]), e(pts[2]), e(pts[3]));
        let c1 = cross_ratio(e(images[0]), e(images[1]), e(images[2]), e(images[3]));
        match (c0, c1) {
            (Ok(ExtComplex::Finite(a)), Ok(ExtComplex::Finite(b))) => cr_tally.record((a - b).norm() - 1e-8 * a.norm().max(1.0)),
            _ => cr_tally.record(f64::INFINITY),
        }
    }
    [p_tally.done(), cr_tally.done()]
}

fn ptolemy_inequality(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("ptolemy_inequality");
    while t.cases < cases {
        let p: [Complex64; 4] = std::array::from_fn(|_| point(rng, 3.0));
        let gap = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).map(|(i, j)| (p[i] - p[j]).norm()).fold(f64::INFINITY, f64::min);
        if gap < 1e-3 {
            continue;
        }
        t.record(1.0 - 1e-12 - ptolemy_ratio_finite(p[0], p[1], p[2], p[3]));
    }
    t.done()
}

fn concyclic_equality(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("concyclic_equality");
    for _ in 0..cases {
        let c = point(rng, 5.0);
        let r = rng.gen_range(0.1..10.0);
        let a = sorted_angles(rng, 0.05);
        let p: [Complex64; 4] = std::array::from_fn(|i| c + Complex64::from_polar(r, a[i]));
        t.record((ptolemy_ratio_finite(p[0], p[1], p[2], p[3]) - 1.0).abs() - 1e-9);
    }
    t.done()
}

fn argument_scaling(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("argument_scaling");
    for _ in 0..cases {
        let (x, y) = (rng.gen_range(1e-3..10.0), rng.gen_range(1e-3..10.0));
        let c = rng.gen_range(1e-3..0.999);
        let lhs = Complex64::new(x, c * y).arg();
        let rhs = c * Complex64::new(x, y).arg();
        t.record(rhs - lhs - 1e-15);
    }
    t.done()
}

fn x_cot_x(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("x_cot_x");
    for i in 0..cases {
        let x = if i == 0 { FRAC_PI_2 } else { rng.gen_range(1e-6..FRAC_PI_2) };
        let lhs = x / x.tan();
        let rhs = 1.0 - 4.0 * x * x / (PI * PI);
        t.record(rhs - lhs - 1e-15);
    }
    t.done()
}

fn convex_quadrilateral_bound(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("convex_quadrilateral_bound");
    while t.cases < cases {
        let q = quadrilateral(rng, true);
        let Ok(theta) = quad_sector_angle(q[0], q[1], q[2], q[3]) else { continue };
        let p = ptolemy_ratio_finite(q[0], q[1], q[2], q[3]);
        t.record(rel_excess(p, 1.0 / (theta / 2.0).sin(), 1e-12));
    }
    t.done()
}

fn convex_curve_arc_bound(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("convex_curve_arc_bound");
    while t.cases < cases {
        let (a, b) = (rng.gen_range(0.3..3.0), rng.gen_range(0.3..3.0));
        let t0 = rng.gen_range(0.0..2.0 * PI);
        let span = rng.gen_range(0.1..PI);
        let tangent = |s: f64| Complex64::new(-a * s.sin(), b * s.cos());
        let turn = (tangent(t0 + span) / tangent(t0)).arg().abs();
        if turn >= PI - 0.05 {
            continue;
        }
        let mut s: [f64; 4] = std::array::from_fn(|_| rng.gen_range(t0..t0 + span));
        s.sort_by(f64::total_cmp);
        if (0..3).any(|i| s[i + 1] - s[i] < 1e-3) {
            continue;
        }
        let z = s.map(|u| Complex64::new(a * u.cos(), b * u.sin()));
        let p = ptolemy_ratio_finite(z[0], z[1], z[2], z[3]);
        t.record(rel_excess(p, 1.0 / ((PI - turn) / 2.0).sin(), 1e-12));
    }
    t.done()
}

fn reduction_angle(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("reduction_angle");
    while t.cases < cases {
        let q = quadrilateral(rng, t.cases % 2 == 0);
        let Ok(expected) = quad_sector_angle(q[0], q[1], q[2], q[3]) else { continue };
        match reduce_quadrilateral_to_sector(q[0], q[1], q[2], q[3]) {
            Ok((theta, _, _)) => t.record((theta - expected).abs() - 1e-9),
            Err(_) => t.record(f64::INFINITY),
        }
    }
    t.done()
}

fn parallelogram_normalization(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("parallelogram_normalization");
    while t.cases < cases {
        let q = quadrilateral(rng, t.cases % 2 == 0);
        let p = ptolemy_ratio_finite(q[0], q[1], q[2], q[3]);
        match normalize_to_parallelogram(q[0], q[1], q[2], q[3]) {
            Ok((target, m)) => {
                let pt = ptolemy_ratio_finite(target[0], target[1], target[2], target[3]);
                let mapped = (0..4)
                    .map(|i| m.apply_finite(q[i]).map_or(f64::INFINITY, |w| (w - target[i]).norm() / target[i].norm().max(1.0)))
                    .fold(0.0, f64::max);
                let shape = (target[2] - target[1] - target[3]).norm();
                t.record(((pt - p).abs() - 1e-9 * p).max(mapped - 1e-8).max(shape - 1e-12));
            }
            Err(_) => t.record(f64::INFINITY),
        }
    }
    t.done()
}

fn j_below_k(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("j_below_k");
    while t.cases < cases {
        let domain = match t.cases % 5 {
            0 => Domain::PuncturedPlane,
            1 => Domain::HalfPlane,
            2 => Domain::sector(rng.gen_range(0.1..PI)).expect("valid opening"),
            3 => Domain::ellipse(rng.gen_range(1.0..4.0), 1.0).expect("valid axes"),
            _ => Domain::rhombus(rng.gen_range(0.2..FRAC_PI_2)).expect("valid angle"),
        };
        let (x, y) = match &domain {
            Domain::Ellipse(e) => {
                let a = e.semi_major() * 0.999;
                (Complex64::new(rng.gen_range(-a..a), 0.0), Complex64::new(rng.gen_range(-a..a), 0.0))
            }
            Domain::Parallelogram { .. } => {
                (Complex64::new(rng.gen_range(-0.999..0.999), 0.0), Complex64::new(rng.gen_range(-0.999..0.999), 0.0))
            }
            _ => {
                let (lo, hi) = domain.sample_box();
                let mut draw = || loop {
                    let z = Complex64::new(rng.gen_range(lo.re..hi.re), rng.gen_range(lo.im..hi.im));
                    if domain.contains(z) {
                        break z;
                    }
                };
                (draw(), draw())
            }
        };
        let (Ok(j), Ok(Some(k))) = (j_metric(&domain, x, y), k_exact(&domain, x, y)) else { continue };
        t.record(j - k - 1e-12 * k.max(1.0));
    }
    t.done()
}

fn estimator_monotonicity(rng: &mut ChaCha8Rng, cases: usize) -> PropertyOutcome {
    let mut t = Tally::new("estimator_monotonicity");
    while t.cases < cases {
        let domain = match t.cases % 4 {
            0 => Domain::sector(rng.gen_range(0.2..2.0 * PI - 0.2)),
            1 => Domain::triangle_from_angles(rng.gen_range(0.2..1.4), rng.gen_range(0.2..1.4)),
            2 => Domain::ellipse(rng.gen_range(1.0..3.0), 1.0),
            _ => Domain::parallelogram(rng.gen_range(0.5..2.0), 1.0, rng.gen_range(0.3..FRAC_PI_2)),
        };
        let Ok(domain) = domain else { continue };
        let n = [8, 12, 16][t.cases % 3];
        let cfg = |grid_n| PtolemyConfig { grid_n, refine_iters: 0, multistarts: 4, seed: 0 };
        match (estimate_ptolemy_constant(&domain, &cfg(n)), estimate_ptolemy_constant(&domain, &cfg(2 * n))) {
            (Ok(coarse), Ok(fine)) => t.record(coarse.lower - fine.lower - 1e-12),
            _ => t.record(f64::INFINITY),
        }
    }
    t.done()
}

/// Runs every property suite with `cases` random cases each.
pub fn property_suite(cases: usize, seed: u64) -> Vec<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    out.extend(mobius_invariance(&mut rng, cases));
    out.push(ptolemy_inequality(&mut rng, cases));
    out.push(concyclic_equality(&mut rng, cases));
    out.push(argument_scaling(&mut rng, cases));
    out.push(x_cot_x(&mut rng, cases));
    out.push(convex_quadrilateral_bound(&mut rng, cases));
    out.push(convex_curve_arc_bound(&mut rng, cases));
    out.push(reduction_angle(&mut rng, cases));
    out.push(parallelogram_normalization(&mut rng, cases));
    out.push(j_below_k(&mut rng, cases));
    out.push(estimator_monotonicity(&mut rng, cases));
    out
}
