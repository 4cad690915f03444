use std::f64::consts::PI;

use num_complex::Complex64;
use pconst::domains::Domain;
use pconst::qh::{j_metric, k_exact, k_grid, GridSolverConfig};
use pconst::uniformity::{
    arc_slit_certificate, certificate_lower_bound, disk_exterior_antipodal_ratio, estimate_uniformity, rhombus_certificate,
    rhombus_ladder, UniformityConfig,
};
use proptest::prelude::*;

#[test]
fn estimates_reach_their_certificates() {
    let catalog = [
        Domain::sector(PI / 3.0).unwrap(),
        Domain::sector(PI).unwrap(),
        Domain::HalfPlane,
        Domain::unit_disk(),
        Domain::ellipse(2.0, 1.0).unwrap(),
        Domain::triangle_from_angles(PI / 3.0, PI / 3.0).unwrap(),
        Domain::triangle_from_angles(PI / 6.0, PI / 3.0).unwrap(),
        Domain::rhombus(PI / 3.0).unwrap(),
        Domain::rectangle(2.0, 1.0).unwrap(),
        Domain::parallelogram(2.0, 1.0, PI / 3.0).unwrap(),
        Domain::double_sector(2.0, 2.0).unwrap(),
        Domain::arc_slit(0.5).unwrap(),
        Domain::TwicePuncturedPlane,
        Domain::DiskExterior,
    ];
    let cfg = UniformityConfig { samples: 8, ..Default::default() };
    for d in catalog {
        let Ok(cert) = certificate_lower_bound(&d) else { continue };
        let est = estimate_uniformity(&d, &cfg).unwrap();
        assert!(est.lower >= 0.95 * cert.value, "{}: {} < 0.95 * {}", d.name(), est.lower, cert.value);
    }
}

#[test]
fn rhombus_diagonal_ratio_increases_to_its_limit() {
    for alpha in [PI / 6.0, PI / 3.0, PI / 2.0] {
        let d = Domain::rhombus(alpha).unwrap();
        let ratio = |t: f64| {
            let (x, y) = (Complex64::new(-t, 0.0), Complex64::new(t, 0.0));
            k_exact(&d, x, y).unwrap().unwrap() / j_metric(&d, x, y).unwrap()
        };
        let ts: Vec<f64> = (0..200).map(|i| 1.0 - 0.1 * 0.9f64.powi(i)).collect();
        let rs: Vec<f64> = ts.iter().map(|&t| ratio(t)).collect();
        assert!(rs.windows(2).all(|w| w[1] >= w[0] - 1e-12), "alpha = {alpha}");
        // Secant of k against j at the vertex: the l'Hôpital form of the limit.
        let (x1, x2) = (1.0 - 2e-8, 1.0 - 1e-8);
        let kj = |t: f64| {
            let (x, y) = (Complex64::new(-t, 0.0), Complex64::new(t, 0.0));
            (k_exact(&d, x, y).unwrap().unwrap(), j_metric(&d, x, y).unwrap())
        };
        let ((k1, j1), (k2, j2)) = (kj(x1), kj(x2));
        let limit = (k2 - k1) / (j2 - j1);
        assert!((limit - rhombus_certificate(alpha)).abs() < 1e-6, "{limit} vs {}", rhombus_certificate(alpha));
        let ladder = rhombus_ladder(d.polygon().unwrap()).extrapolated.unwrap();
        assert!((ladder / rhombus_certificate(alpha) - 1.0).abs() < 5e-3, "{ladder}");
        assert!((rhombus_certificate(alpha) - 2.0 / (alpha / 2.0).sin()).abs() < 1e-12);
    }
}

#[test]
fn arc_slit_certificate_decreases_and_diverges() {
    let values: Vec<f64> = (1..400).map(|i| arc_slit_certificate(PI / 2.0 * i as f64 / 400.0)).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    assert!(arc_slit_certificate(1e-12) > 20.0);
}

#[test]
fn disk_exterior_ratio_increases_to_its_limit() {
    let limit = PI / 3f64.ln();
    let rs: Vec<f64> = (0..60).map(|i| disk_exterior_antipodal_ratio(1.01 * 1.2f64.powi(i))).collect();
    assert!(rs.windows(2).all(|w| w[1] > w[0] && w[1] < limit));
    assert!((disk_exterior_antipodal_ratio(1e12) - limit).abs() < 1e-9);

    let d = Domain::DiskExterior;
    let (x, y) = (Complex64::new(100.0, 0.0), Complex64::new(-100.0, 0.0));
    let grid = k_grid(&d, x, y, &GridSolverConfig::default()).unwrap() / j_metric(&d, x, y).unwrap();
    assert!((grid / limit - 1.0).abs() < 0.05, "{grid}");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn certificates_dominate_two(kind in 0usize..4, x in 0.05f64..1.0, y in 0.05f64..1.0) {
        let d = match kind {
            0 => Domain::sector(x * PI).unwrap(),
            1 => Domain::triangle_from_angles(x * 1.5, y * 1.5).unwrap(),
            2 => Domain::rhombus(x * PI / 2.0).unwrap(),
            _ => Domain::ellipse(1.0 + 3.0 * x, 1.0).unwrap(),
        };
        let cert = certificate_lower_bound(&d).unwrap();
        prop_assert!(cert.value >= 2.0 - 1e-12, "{}: {}", d.name(), cert.value);
    }
}
