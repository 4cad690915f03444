//! Gauss–Legendre rules and adaptive integration.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

pub(crate) fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

pub(crate) fn gl8() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(8))
}

/// Fixed-rule integral of `f` over `[a, b]`.
pub fn integrate_fixed<F: FnMut(f64) -> f64>(rule: &(Vec<f64>, Vec<f64>), a: f64, b: f64, mut f: F) -> f64 {
    let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Bisection steps allowed per adaptive integral.
const ADAPTIVE_BUDGET: usize = 20_000;

/// Adaptive 8/16-point Gauss–Legendre integration to absolute tolerance `tol`.

pub fn integrate_adaptive<F: FnMut(f64) -> f64>(a: f64, b: f64, tol: f64, mut f: F) -> f64 {
    struct State<'a, F> {
        f: &'a mut F,
        floor: f64,
        budget: usize,
    }
    fn rec<F: FnMut(f64) -> f64>(a: f64, b: f64, tol: f64, depth: u32, whole: f64, st: &mut State<'_, F>) -> f64 {
        let m = 0.5 * (a + b);
        let left = integrate_fixed(gl8(), a, m, &mut *st.f);
        let right = integrate_fixed(gl8(), m, b, &mut *st.f);
        let fine = left + right;
        st.budget = st.budget.saturating_sub(1);
        if depth == 0 || st.budget == 0 || (fine - whole).abs() <= tol.max(st.floor) {
            return fine;
        }
        rec(a, m, 0.5 * tol, depth - 1, left, st) + rec(m, b, 0.5 * tol, depth - 1, right, st)
    }
    if a == b {
        return 0.0;
    }
    let whole = integrate_fixed(gl8(), a, b, &mut f);
    // Differences below roundoff of the total cannot be resolved.
    let floor = 4.0 * f64::EPSILON * whole.abs() / 1024.0;
    let mut st = State { f: &mut f, floor, budget: ADAPTIVE_BUDGET };
    rec(a, b, tol, 48, whole, &mut st)
}

/// Composite Simpson rule with `panels` (even) subintervals.
pub fn simpson<F: Fn(f64) -> f64>(a: f64, b: f64, panels: usize, f: F) -> f64 {
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(16);
        let total: f64 = rule.1.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        // degree 31 is the exactness limit
        let v = integrate_fixed(&rule, 0.0, 1.0, |x| x.powi(31));
        assert!((v - 1.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_sqrt_singularity() {
        let v = integrate_adaptive(0.0, 1.0, 1e-12, |x| 1.0 / x.sqrt());
        assert!((v - 2.0).abs() < 1e-8);
        let e = integrate_adaptive(0.0, PI, 1e-13, f64::sin);
        assert!((e - 2.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_is_fourth_order() {
        let v = simpson(0.0, 1.0, 1000, |x| x.exp());
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-12);
    }
}
