//! Exact quasihyperbolic distance in a convex sector.
//!
//! In log-polar coordinates `w = log z` the sector `S_α` (α < π) becomes a
//! strip on which the quasihyperbolic metric is `|dw| / sin u`, where `u` is
//! the angle from the point to the nearer leg. The density depends on `u`
//! alone, so geodesics satisfy Clairaut's relation `cos ψ / sin u = c` and
//! fall into three families:
//!
//! - monotone: `u` moves monotonically between the endpoints;
//! - turning: the path bends toward the bisector, touching `u = u_t` with
//!   `c = 1/sin u_t`;
//! - bisector: the path reaches the bisector tangentially (finite `Δρ`
//!   because the density has a corner there), runs along it and leaves.
//!
//! Each family is solved by bisection on its parameter against the radial
//! separation `Δρ = |log|x| − log|y||`.

use std::f64::consts::FRAC_PI_2;

use crate::optim::bisect;
use crate::quad::integrate_adaptive;

const QUAD_TOL: f64 = 1e-14;

/// Clairaut level `c`, with the turning angle kept exactly when `c ≥ 1`.
#[derive(Debug, Clone, Copy)]
struct Level {
    c: f64,
    turn: Option<f64>,
}

impl Level {
    fn from_c(c: f64) -> Self {
        if c >= 1.0 {
            Level { c, turn: Some((1.0 / c).min(1.0).asin()) }
        } else {
            Level { c, turn: None }
        }
    }

    fn from_turn(ut: f64) -> Self {
        Level { c: 1.0 / ut.sin(), turn: Some(ut) }
    }

    /// `1 − c² sin² u`, given `u` and `ub − u` for the upper limit `ub`.
    fn g(&self, u: f64, ub: f64, below_ub: f64) -> f64 {
        match self.turn {
            Some(t) => {
                let gap = (t - ub) + below_ub;
                (gap.sin() * (t + u).sin() / (t.sin() * t.sin())).max(0.0)
            }
            None => 1.0 - self.c * self.c * u.sin() * u.sin(),
        }
    }

    /// Radial advance and extra length over `[ua, ub]`, where the length is
    /// `log(tan(ub/2)/tan(ua/2)) + extra`. The substitution
    /// `u = ub − (ub − ua)v²` removes the inverse square-root singularity at
    /// a turning point `ub`.
    fn piece(&self, ua: f64, ub: f64) -> (f64, f64) {
        if ub <= ua || self.c == 0.0 {
            return (0.0, 0.0);
        }
        let w = ub - ua;
        let c = self.c;
        let drho = integrate_adaptive(0.0, 1.0, QUAD_TOL, |v| {
            let below = w * v * v;
            let u = ub - below;
            let g = self.g(u, ub, below);
            if g <= 0.0 {
                // limit v → 0 of c·sin u·2wv/√g
                let slope = c * c * (2.0 * ub).sin();
                return 2.0 * c * ub.sin() * w.sqrt() / slope.sqrt();
            }
            c * u.sin() * 2.0 * w * v / g.sqrt()
        });
        let extra = integrate_adaptive(0.0, 1.0, QUAD_TOL, |v| {
            let below = w * v * v;
            let u = ub - below;
            let g = self.g(u, ub, below);
            if g <= 0.0 {
                let slope = c * c * (2.0 * ub).sin();
                return 2.0 * c * c * ub.sin() * w.sqrt() / slope.sqrt();
            }
            let sg = g.sqrt();
            c * c * u.sin() * 2.0 * w * v / (sg * (1.0 + sg))
        });
        (drho, extra)
    }
}

fn log_tan_half(ua: f64, ub: f64) -> f64 {
    ((ub / 2.0).tan() / (ua / 2.0).tan()).ln()
}

/// Evaluates pieces `[ua_i, ub]` at a level: total `(Δρ, length)`.
fn evaluate(level: Level, pieces: &[(f64, f64)]) -> (f64, f64) {
    pieces.iter().fold((0.0, 0.0), |(r, l), &(ua, ub)| {
        let (dr, extra) = level.piece(ua, ub);
        (r + dr, l + log_tan_half(ua, ub) + extra)
    })
}

/// Solves `Δρ(level) = target` over levels `c ∈ [0, 1/sin(u_top)]` for
/// fixed pieces; `Δρ` increases with `c`.
fn solve_increasing_c(target: f64, u_top: f64, pieces: &[(f64, f64)]) -> f64 {
    let rho = |lv: Level| evaluate(lv, pieces).0;
    let level = if u_top.sin() >= 1.0 || rho(Level::from_c(1.0)) >= target {
        let c_hi = (1.0 / u_top.sin()).min(1.0);
        let c = bisect(|c| rho(Level::from_c(c)) - target, 0.0, c_hi, 1e-15).unwrap_or(c_hi);
        Level::from_c(c)
    } else {
        let ut = bisect(|t| rho(Level::from_turn(t)) - target, u_top, FRAC_PI_2, 1e-15).unwrap_or(u_top);
        Level::from_turn(ut)
    };
    evaluate(level, pieces).1
}

/// Quasihyperbolic distance in `S_α`, `0 < α < π`, between points with
/// radial separation `drho`, angles `u1, u2 ∈ (0, α/2]` to their nearer
/// legs, on the same or opposite sides of the bisector.
pub fn sector_strip_distance(alpha: f64, drho: f64, u1: f64, u2: f64, same_side: bool) -> f64 {
    let h = alpha / 2.0;
    let drho = drho.abs();
    let (u1, u2) = (u1.min(h), u2.min(h));
    let (lo, hi) = (u1.min(u2), u1.max(u2));
    let n_min = 1.0 / h.sin();
    let bisector_pieces = [(u1, h), (u2, h)];
    let (rho_max, len_max) = evaluate(Level::from_turn(h), &bisector_pieces);
    if drho >= rho_max {
        return len_max + n_min * (drho - rho_max);
    }
    let same_side = same_side || hi >= h;
    if !same_side {
        return solve_increasing_c(drho, h, &bisector_pieces);
    }
    let monotone = [(lo, hi)];
    let rho_monotone = if hi > lo { evaluate(Level::from_turn(hi), &monotone).0 } else { 0.0 };
    if drho <= rho_monotone {
        return solve_increasing_c(drho, hi, &monotone);
    }
    let turning = |t: f64| evaluate(Level::from_turn(t), &[(u1, t), (u2, t)]);
    let ut = bisect(|t| turning(t).0 - drho, hi, h, 1e-15).unwrap_or(h);
    turning(ut).1
}

/// Half-plane case `α = π` by the hyperbolic distance formula, for
/// completeness of the strip interface.
pub fn half_plane_strip_distance(drho: f64, u1: f64, u2: f64) -> f64 {
    // points e^{ρ} e^{iθ} with sin θ = sin u
    let (a, b) = (
        num_complex::Complex64::from_polar(1.0, u1),
        num_complex::Complex64::from_polar(drho.exp(), u2),
    );
    2.0 * ((a - b).norm() / (2.0 * (a.im * b.im).sqrt())).asinh()
}

/// Strip coordinates `(ρ, u, side)` of `z ∈ S_α`; `side` is true below the
/// bisector.
pub fn strip_coordinates(alpha: f64, z: num_complex::Complex64) -> (f64, f64, bool) {
    let theta = crate::geom::arg_2pi(z);
    let u = theta.min(alpha - theta);
    (z.norm().ln(), u, theta < alpha / 2.0)
}
