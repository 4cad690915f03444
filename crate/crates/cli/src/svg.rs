//! SVG 1.1 rendering of domains with witness and geodesic overlays.

use std::f64::consts::PI;
use std::fmt::Write;

use num_complex::Complex64;

use pconst::domains::Domain;
use pconst::geom::ExtComplex;

const CURVE_POINTS: usize = 256;

/// Plot window `[lo, hi]` in domain coordinates.
#[derive(Clone, Copy)]
struct Window {
    lo: Complex64,
    hi: Complex64,
}

impl Window {
    fn for_domain(domain: &Domain) -> Self {
        let (lo, hi) = domain.bounding_box().unwrap_or_else(|| domain.sample_box());
        let pad = Complex64::new(0.1 * (hi.re - lo.re), 0.1 * (hi.im - lo.im));
        Window { lo: lo - pad, hi: hi + pad }
    }

    fn span(&self) -> f64 {
        (self.hi.re - self.lo.re).max(self.hi.im - self.lo.im)
    }

    /// Length that carries a ray from any point of the window past its edge.
    fn far(&self) -> f64 {
        2.0 * (self.hi - self.lo).norm() + self.lo.norm().max(self.hi.norm())
    }
}

/// SVG y grows downwards; domain points are mirrored.
fn xy(z: Complex64) -> String {
    format!("{:.6},{:.6}", z.re, -z.im + 0.0)
}

fn polyline(points: &[Complex64], closed: bool) -> String {
    let mut d = String::new();
    for (i, &z) in points.iter().enumerate() {
        let _ = write!(d, "{}{} ", if i == 0 { "M" } else { "L" }, xy(z));
    }
    if closed {
        d.push('Z');
    }
    d.trim_end().to_string()
}

fn curve(f: impl Fn(f64) -> Complex64, t0: f64, t1: f64, closed: bool) -> String {
    let n = CURVE_POINTS;
    let pts: Vec<Complex64> =
        (0..=n).filter(|&i| !(closed && i == n)).map(|i| f(t0 + (t1 - t0) * i as f64 / n as f64)).collect();
    polyline(&pts, closed)
}

/// Boundary path data and marked punctures.
fn boundary(domain: &Domain, w: &Window) -> (Vec<String>, Vec<Complex64>) {
    let far = w.far();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match domain {
        Domain::Triangle(p) | Domain::Parallelogram { polygon: p, .. } => (vec![polyline(p.vertices(), true)], vec![]),
        Domain::Ellipse(_) | Domain::Disk { .. } => {
            let path = curve(|s| domain.boundary_point(s).expect("bounded domain"), 0.0, 1.0, true);
            (vec![path], vec![])
        }
        Domain::Sector { alpha } => {
            (vec![polyline(&[Complex64::from_polar(far, *alpha), zero, Complex64::new(far, 0.0)], false)], vec![])
        }
        Domain::DoubleSector { alpha, beta } => {
            let a = Complex64::from_polar(far, *alpha);
            let b = one + Complex64::from_polar(far, PI - beta);
            (vec![polyline(&[a, zero, one, b], false)], vec![])
        }
        Domain::HalfPlane => (vec![polyline(&[Complex64::new(-far, 0.0), Complex64::new(far, 0.0)], false)], vec![]),
        Domain::ArcSlit { a } => (vec![curve(|t| Complex64::from_polar(1.0, t), *a, 2.0 * PI, false)], vec![]),
        Domain::DiskExterior => (vec![curve(|t| Complex64::from_polar(1.0, t), 0.0, 2.0 * PI, true)], vec![]),
        Domain::PuncturedPlane => (vec![], vec![zero]),
        Domain::TwicePuncturedPlane => (vec![], vec![-one, one]),
    }
}

/// Renders `domain` with optional witness quadruple and geodesic polyline.
///
/// Finite witness points are drawn as numbered dots joined by the two
/// diagonals; the point at infinity is shown as a labelled marker in the
/// top-right corner of the window.
pub fn render(domain: &Domain, witness: Option<&[ExtComplex]>, geodesic: Option<&[Complex64]>) -> String {
    let w = Window::for_domain(domain);
    let stroke = w.span() / 300.0;
    let dot = 3.0 * stroke;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        w.lo.re,
        -w.hi.im,
        w.hi.re - w.lo.re,
        w.hi.im - w.lo.im
    );
    let _ = writeln!(s, "<title>{}</title>", domain.to_json());
    let (paths, punctures) = boundary(domain, &w);
    for d in paths {
        let _ = writeln!(s, r#"<path class="boundary" d="{d}" fill="none" stroke="black" stroke-width="{stroke:.6}"/>"#);
    }
    for z in punctures {
        let (x, y) = (z.re, -z.im + 0.0);
        let _ = writeln!(s, r#"<circle class="puncture" cx="{x:.6}" cy="{y:.6}" r="{dot:.6}" fill="black"/>"#);
    }
    if let Some(path) = geodesic {
        let d = polyline(path, false);
        let _ = writeln!(s, r#"<path class="geodesic" d="{d}" fill="none" stroke="red" stroke-width="{stroke:.6}"/>"#);
    }
    if let Some(points) = witness {
        for (a, b) in [(0, 2), (1, 3)] {
            if let (Some(ExtComplex::Finite(p)), Some(ExtComplex::Finite(q))) = (points.get(a), points.get(b)) {
                let _ = writeln!(
                    s,
                    r#"<path class="diagonal" d="{}" fill="none" stroke="blue" stroke-dasharray="{:.6}" stroke-width="{stroke:.6}"/>"#,
                    polyline(&[*p, *q], false),
                    4.0 * stroke
                );
            }
        }
        for (i, p) in points.iter().enumerate() {
            match p {
                ExtComplex::Finite(z) => {
                    let (x, y) = (z.re, -z.im + 0.0);
                    let _ = writeln!(
                        s,
                        r#"<circle class="witness" data-index="{i}" cx="{x:.6}" cy="{y:.6}" r="{dot:.6}" fill="blue"/>"#
                    );
                }
                ExtComplex::Infinity => {
                    let (x, y) = (w.hi.re - 0.05 * w.span(), -w.hi.im + 0.05 * w.span());
                    let size = 0.05 * w.span();
                    let _ = writeln!(
                        s,
                        r#"<text class="witness" data-index="{i}" x="{x:.6}" y="{y:.6}" font-size="{size:.6}" fill="blue" text-anchor="middle">∞</text>"#
                    );
                }
            }
        }
    }
    s.push_str("</svg>\n");
    s
}
