use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use pconst::geom::{circle_through, cross_ratio, interior_angles, max_visual_angle, CircleOrLine, ExtComplex, MobiusMap};
use proptest::prelude::*;

fn pt(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(x, y)| Complex64::new(x, y))
}

fn mobius() -> impl Strategy<Value = MobiusMap> {
    [pt(2.0), pt(2.0), pt(2.0), pt(2.0)].prop_filter_map("near-singular", |[a, b, c, d]| {
        let m = MobiusMap::new(a, b, c, d).ok()?;
        (m.determinant().norm() > 0.1).then_some(m)
    })
}

fn min_gap(p: &[Complex64]) -> f64 {
    let mut g = f64::INFINITY;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            g = g.min((p[i] - p[j]).norm());
        }
    }
    g
}

fn finite(z: ExtComplex) -> Complex64 {
    z.as_finite().expect("finite value")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cross_ratio_is_mobius_invariant(m in mobius(), q in [pt(2.0), pt(2.0), pt(2.0), pt(2.0)]) {
        let images: Option<Vec<Complex64>> = q.iter().map(|&z| m.apply_finite(z)).collect();
        let images = images.filter(|w| w.iter().all(|z| z.norm() < 1e3));
        prop_assume!(images.is_some());
        let w = images.unwrap();
        prop_assume!(min_gap(&q) > 1e-2 && min_gap(&w) > 1e-2);
        let e = ExtComplex::Finite;
        let before = finite(cross_ratio(e(q[0]), e(q[1]), e(q[2]), e(q[3])).unwrap());
        let after = finite(cross_ratio(e(w[0]), e(w[1]), e(w[2]), e(w[3])).unwrap());
        prop_assert!((before - after).norm() <= 1e-9 * before.norm().max(1.0), "{before} vs {after}");
    }

    #[test]
    fn composition_matches_sequential_application(m1 in mobius(), m2 in mobius(), z in pt(3.0)) {
        let inner = m1.apply_finite(z);
        prop_assume!(inner.map_or(false, |w| w.norm() < 1e3));
        let seq = m2.apply_finite(inner.unwrap());
        prop_assume!(seq.map_or(false, |w| w.norm() < 1e3));
        let composed = m2.compose(&m1).apply_finite(z).unwrap();
        prop_assert!((composed - seq.unwrap()).norm() <= 1e-10 * seq.unwrap().norm().max(1.0));
    }

    #[test]
    fn circle_through_contains_its_points(a in pt(5.0), b in pt(5.0), c in pt(5.0)) {
        prop_assume!(min_gap(&[a, b, c]) > 1e-3);
        let circle = circle_through(a, b, c).unwrap();
        let scale = match circle {
            CircleOrLine::Circle { radius, .. } => radius.max(1.0),
            CircleOrLine::Line { .. } => 1.0,
        };
        for z in [a, b, c] {
            prop_assert!(circle.distance(z) <= 1e-10 * scale);
        }
    }

    #[test]
    fn convex_polygon_angles_sum(n in 3usize..9, seed in prop::collection::vec(0.05f64..1.0, 9), rot in 0.0..2.0 * PI, stretch in 0.3f64..3.0) {
        // Sorted angles on an ellipse give a convex polygon.
        let total: f64 = seed[..n].iter().sum();
        let mut t = rot;
        let vertices: Vec<Complex64> = seed[..n]
            .iter()
            .map(|w| {
                t += 2.0 * PI * w / total;
                Complex64::new(stretch * t.cos(), t.sin())
            })
            .collect();
        prop_assume!(seed[..n].iter().all(|w| 2.0 * PI * w / total < PI - 1e-3));
        let sum: f64 = interior_angles(&vertices).unwrap().iter().sum();
        prop_assert!((sum - (n as f64 - 2.0) * PI).abs() < 1e-8);
    }

    #[test]
    fn max_visual_angle_dominates_probes(x in pt(3.0), y in pt(3.0), probes in prop::collection::vec(-50.0f64..50.0, 200)) {
        let (x, y) = (Complex64::new(x.re, x.im.abs() + 0.05), Complex64::new(y.re, y.im.abs() + 0.05));
        prop_assume!((x - y).norm() > 1e-3);
        let best = max_visual_angle(x, y).unwrap().angle;
        for z in probes {
            let z = Complex64::new(z, 0.0);
            prop_assert!(((x - z) / (y - z)).arg().abs() <= best + 1e-12);
        }
    }

    #[test]
    fn argument_contracts_under_imaginary_scaling(x in 1e-6f64..100.0, y in 1e-6f64..100.0, c in 1e-3f64..0.999) {
        let lhs = Complex64::new(x, c * y).arg();
        let rhs = c * Complex64::new(x, y).arg();
        prop_assert!(lhs > rhs, "{lhs} <= {rhs}");
    }
}

#[test]
fn x_cot_x_bound_on_grid() {
    let n = 10_000;
    for i in 1..=n {
        let x = FRAC_PI_2 * i as f64 / n as f64;
        let lhs = x / x.tan();
        assert!(lhs >= 1.0 - 4.0 * x * x / (PI * PI) - 1e-15, "x = {x}");
    }
}
