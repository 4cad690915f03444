use std::f64::consts::PI;

use num_complex::Complex64;
use pconst::domains::Domain;
use proptest::prelude::*;

fn bounded_domain() -> impl Strategy<Value = Domain> {
    prop_oneof![
        (1.0f64..4.0, 0.3f64..1.0).prop_map(|(a, b)| Domain::ellipse(a, b).unwrap()),
        (0.2f64..1.4, 0.2f64..1.4).prop_map(|(a, b)| Domain::triangle_from_angles(a, b).unwrap()),
        (0.5f64..3.0, 0.5f64..3.0, 0.2f64..1.5707).prop_map(|(r, s, a)| Domain::parallelogram(r, s, a).unwrap()),
        (0.1f64..3.0).prop_map(|r| Domain::disk(Complex64::new(0.3, -0.2), r).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn chord_is_at_most_arc(d in bounded_domain(), s1 in 0.0f64..1.0, s2 in 0.0f64..1.0) {
        let (p, q) = (d.boundary_point(s1).unwrap(), d.boundary_point(s2).unwrap());
        let arc = d.perimeter().unwrap() * (s1 - s2).abs();
        prop_assert!((p - q).norm() <= arc * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn boundary_points_have_zero_distance(d in bounded_domain(), s in 0.0f64..1.0) {
        let z = d.boundary_point(s).unwrap();
        prop_assert!(d.dist_to_boundary(z).unwrap() <= 1e-9 * d.diameter().unwrap());
    }

    #[test]
    fn sector_bisector_distance(alpha in 0.05f64..PI, r in 1e-3f64..1e3) {
        let d = Domain::sector(alpha).unwrap();
        let z = Complex64::from_polar(r, alpha / 2.0);
        let dist = d.dist_to_boundary(z).unwrap();
        prop_assert!((dist - r * (alpha / 2.0).sin()).abs() <= 1e-12 * r.max(1.0));
    }
}

#[test]
fn ellipse_axis_distance_matches_closed_form() {
    for (a, b) in [(2.0, 1.0), (3.0, 0.5), (1.2, 1.0)] {
        let d = Domain::ellipse(a, b).unwrap();
        let switch = a - b * b / a;
        let c2 = a * a - b * b;
        let mut ts: Vec<f64> = (0..98).map(|i| -a + 2.0 * a * (i as f64 + 0.5) / 98.0).collect();
        ts.extend([switch, -switch]);
        for t in ts {
            let expected = if t.abs() <= switch { b * (1.0 - t * t / c2).sqrt() } else { a - t.abs() };
            let got = d.dist_to_boundary(Complex64::new(t, 0.0)).unwrap();
            assert!((got - expected).abs() < 1e-10, "a={a} b={b} t={t}: {got} vs {expected}");
        }
    }
}
