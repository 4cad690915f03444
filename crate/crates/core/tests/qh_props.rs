use std::f64::consts::PI;

use num_complex::Complex64;
use pconst::domains::Domain;
use pconst::qh::{j_metric, k_exact, k_grid, GridSolverConfig};
use pconst::uniformity::{random_pairs, solve_beta};
use proptest::prelude::*;
use rayon::prelude::*;

/// Relative quadrature and discretization tolerance of the grid solver.
const SOLVER_TOL: f64 = 0.02;

fn grid(resolution: usize) -> GridSolverConfig {
    GridSolverConfig { resolution, ..Default::default() }
}

fn catalog() -> Vec<Domain> {
    vec![
        Domain::sector(PI / 3.0).unwrap(),
        Domain::sector(1.5 * PI).unwrap(),
        Domain::double_sector(2.0, 2.0).unwrap(),
        Domain::triangle_from_angles(PI / 3.0, PI / 3.0).unwrap(),
        Domain::parallelogram(2.0, 1.0, PI / 3.0).unwrap(),
        Domain::ellipse(2.0, 1.0).unwrap(),
        Domain::unit_disk(),
        Domain::HalfPlane,
        Domain::arc_slit(0.5).unwrap(),
        Domain::PuncturedPlane,
        Domain::TwicePuncturedPlane,
        Domain::DiskExterior,
    ]
}

#[test]
fn j_is_below_k_grid_on_catalog() {
    let cfg = grid(64);
    for d in catalog() {
        let pairs = random_pairs(&d, 500, 11).unwrap();
        let bad: Vec<_> = pairs
            .par_iter()
            .filter_map(|&(x, y)| {
                let k = k_grid(&d, x, y, &cfg).ok()?;
                let j = j_metric(&d, x, y).unwrap();
                (j > k * (1.0 + SOLVER_TOL)).then_some((x, y, j, k))
            })
            .collect();
        assert!(bad.is_empty(), "{}: {bad:?}", d.name());
    }
}

#[test]
fn k_grid_decreases_as_resolution_doubles() {
    for d in catalog() {
        for (x, y) in random_pairs(&d, 6, 5).unwrap() {
            let ks: Vec<f64> = [32, 64, 128].iter().filter_map(|&n| k_grid(&d, x, y, &grid(n)).ok()).collect();
            assert!(ks.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{}: {ks:?}", d.name());
        }
    }
}

#[test]
fn metrics_are_symmetric() {
    let cfg = grid(64);
    for d in catalog() {
        for (x, y) in random_pairs(&d, 5, 9).unwrap() {
            assert_eq!(j_metric(&d, x, y).unwrap(), j_metric(&d, y, x).unwrap());
            if let (Ok(a), Ok(b)) = (k_grid(&d, x, y, &cfg), k_grid(&d, y, x, &cfg)) {
                assert_eq!(a, b, "{}", d.name());
            }
        }
    }
}

#[test]
fn triangle_inequality_on_random_triples() {
    let cfg = grid(64);
    let domains = [Domain::ellipse(2.0, 1.0).unwrap(), Domain::HalfPlane, Domain::TwicePuncturedPlane];
    for d in &domains {
        let a = random_pairs(d, 200, 21).unwrap();
        let b = random_pairs(d, 200, 22).unwrap();
        let bad = a.par_iter().zip(&b).filter(|&(&(x, y), &(z, _))| {
            let j = |p, q| j_metric(d, p, q).unwrap();
            if j(x, z) > j(x, y) + j(y, z) + 1e-12 {
                return true;
            }
            let k = |p, q| k_grid(d, p, q, &cfg).ok();
            match (k(x, z), k(x, y), k(y, z)) {
                (Some(xz), Some(xy), Some(yz)) => xz > (xy + yz) * (1.0 + SOLVER_TOL),
                _ => false,
            }
        });
        assert_eq!(bad.count(), 0, "{}", d.name());
    }
}

#[test]
fn twice_punctured_symmetric_pair_peaks_at_beta() {
    let beta = solve_beta();
    let d = Domain::TwicePuncturedPlane;
    let k = |t: f64| k_exact(&d, Complex64::new(0.0, t), Complex64::new(0.0, -t)).unwrap().unwrap();
    let peak = k(beta);
    assert!((peak - 2.0 * beta.asinh()).abs() < 1e-12);
    for i in 0..=2000 {
        let t = 0.01 + 20.0 * i as f64 / 2000.0;
        assert!(k(t) <= peak + 1e-12, "t = {t}");
    }
    assert!(k(beta - 1e-3) < peak && k(beta + 1e-3) < peak);
}

#[test]
fn grid_matches_exact_formulas() {
    let cfg = grid(512);
    let c = Complex64::new;
    let cases = [
        (Domain::PuncturedPlane, c(1.0, 0.0), c(-0.5, 2.0)),
        (Domain::HalfPlane, c(0.0, 0.5), c(0.0, 3.0)),
        (Domain::rhombus(PI / 3.0).unwrap(), c(-0.8, 0.0), c(0.8, 0.0)),
        (Domain::ellipse(2.0, 1.0).unwrap(), c(-1.5, 0.0), c(1.5, 0.0)),
        (Domain::ellipse(2.0, 1.0).unwrap(), c(0.0, -0.8), c(0.0, 0.8)),
    ];
    for (d, x, y) in cases {
        let exact = k_exact(&d, x, y).unwrap().unwrap();
        let approx = k_grid(&d, x, y, &cfg).unwrap();
        assert!((approx / exact - 1.0).abs() < SOLVER_TOL, "{}: {approx} vs {exact}", d.name());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn j_is_below_exact_k(kind in 0usize..4, p in 0.05f64..0.95, q in 0.05f64..0.95, s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let (d, x, y) = match kind {
            0 => (Domain::PuncturedPlane, Complex64::from_polar(0.1 + 5.0 * p, 6.0 * s), Complex64::from_polar(0.1 + 5.0 * q, 6.0 * t)),
            1 => (Domain::HalfPlane, Complex64::new(4.0 * s - 2.0, p), Complex64::new(4.0 * t - 2.0, 3.0 * q)),
            2 => {
                let alpha = 0.2 + 2.9 * s;
                (Domain::sector(alpha).unwrap(), Complex64::from_polar(3.0 * p, alpha * q), Complex64::from_polar(3.0 * t + 0.01, alpha * (1.0 - p)))
            }
            _ => (Domain::ellipse(1.0 + 2.0 * s, 1.0).unwrap(), Complex64::new((2.0 * p - 1.0) * (1.0 + 2.0 * s), 0.0), Complex64::new((2.0 * q - 1.0) * (1.0 + 2.0 * s), 0.0)),
        };
        prop_assume!((x - y).norm() > 1e-9);
        let k = k_exact(&d, x, y).unwrap().unwrap();
        let j = j_metric(&d, x, y).unwrap();
        prop_assert!(j <= k * (1.0 + 1e-12) + 1e-14, "{j} > {k}");
    }

    #[test]
    fn j_is_scale_invariant_in_sectors(alpha in 0.1f64..6.2, r in 1e-3f64..1e3, a in 0.01f64..0.99, b in 0.01f64..0.99, ra in 0.1f64..5.0, rb in 0.1f64..5.0) {
        let d = Domain::sector(alpha).unwrap();
        let (x, y) = (Complex64::from_polar(ra, alpha * a), Complex64::from_polar(rb, alpha * b));
        let j0 = j_metric(&d, x, y).unwrap();
        let j1 = j_metric(&d, r * x, r * y).unwrap();
        prop_assert!((j0 - j1).abs() <= 1e-12 * j0.max(1.0));
    }
}
