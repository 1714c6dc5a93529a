//! Gauss–Legendre rules and composite/adaptive integrators.

use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

/// Nodes and weights of an `n`-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Shared cached rule of order `n`.
    pub fn cached(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry(n).or_insert_with(|| Arc::new(GaussLegendre::new(n))).clone()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule on [a, b].
    pub fn integrate<V, F>(&self, a: f64, b: f64, mut f: F) -> V
    where
        V: Zero + Add<Output = V> + Mul<f64, Output = V>,
        F: FnMut(f64) -> V,
    {
        let m = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = V::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(m + h * x) * (w * h);
        }
        acc
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let m = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes.iter().zip(&self.weights).map(move |(x, w)| (m + h * x, w * h))
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = if n == 0 { 0.0 } else { n as f64 * (x * p1 - p0) / (x * x - 1.0) };
    (p, dp)
}

/// Composite rule: `panels` equal panels of `order` nodes on [a, b].
pub fn composite<V, F>(a: f64, b: f64, panels: usize, order: usize, mut f: F) -> V
where
    V: Zero + Add<Output = V> + Mul<f64, Output = V>,
    F: FnMut(f64) -> V,
{
    let rule = GaussLegendre::cached(order);
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut acc = V::zero();
    for k in 0..panels {
        let lo = a + h * k as f64;
        let hi = if k + 1 == panels { b } else { lo + h };
        acc = acc + rule.integrate(lo, hi, &mut f);
    }
    acc
}

/// Nodes and weights of a composite rule, for integrands evaluated in bulk.
pub fn composite_nodes(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::cached(order);
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * order);
    let mut ws = Vec::with_capacity(panels * order);
    for k in 0..panels {
        let lo = a + h * k as f64;
        for (x, w) in rule.mapped(lo, lo + h) {
            xs.push(x);
            ws.push(w);
        }
    }
    (xs, ws)
}

/// Adaptive bisection on [a, b] for real integrands.
///
/// A panel is accepted when the 20-point rule and the sum over its halves
/// agree to `abs_tol`, to `rel_tol` relative to the panel, or to its
/// width share of `rel_tol` times the first whole-interval estimate.
/// `initial` sets the starting panel count.
pub fn adaptive<F>(a: f64, b: f64, initial: usize, abs_tol: f64, rel_tol: f64, mut f: F) -> f64
where
    F: FnMut(f64) -> f64,
{
    let rule = GaussLegendre::cached(20);
    let initial = initial.max(1);
    let h = (b - a) / initial as f64;
    let mut stack: Vec<(f64, f64, f64, u32)> = Vec::new();
    for k in (0..initial).rev() {
        let lo = a + h * k as f64;
        let hi = if k + 1 == initial { b } else { lo + h };
        let whole = rule.integrate(lo, hi, &mut f);
        stack.push((lo, hi, whole, 0));
    }
    let estimate: f64 = stack.iter().map(|p| p.2).sum::<f64>().abs();
    let span = (b - a).abs();
    let mut total = 0.0;
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate(lo, mid, &mut f);
        let right = rule.integrate(mid, hi, &mut f);
        let refined = left + right;
        let share = if span > 0.0 { (hi - lo).abs() / span } else { 1.0 };
        // below ~1e-290 values are near-subnormal and relative tests stall
        let tol = abs_tol.max(rel_tol * refined.abs()).max(rel_tol * estimate * share).max(1e-290 * share);
        if (refined - whole).abs() <= tol || depth >= 40 {
            total += refined;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_exactness() {
        let rule = GaussLegendre::new(10);
        // degree 19 integrates exactly
        let v: f64 = rule.integrate(-1.0, 1.0, |x| x.powi(18));
        assert_relative_eq!(v, 2.0 / 19.0, max_relative = 1e-14);
        let w: f64 = rule.weights.iter().sum();
        assert_relative_eq!(w, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn odd_order_has_center_node() {
        let rule = GaussLegendre::new(7);
        assert!(rule.nodes[3].abs() < 1e-15);
        for pair in rule.nodes.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn gaussian_integral() {
        let v: f64 = composite(-12.0, 12.0, 24, 20, |x| (-x * x / 2.0).exp());
        assert_relative_eq!(v, (2.0 * std::f64::consts::PI).sqrt(), max_relative = 1e-14);
        let w = adaptive(-12.0, 12.0, 4, 1e-15, 1e-14, |x| (-x * x / 2.0).exp());
        assert_relative_eq!(w, (2.0 * std::f64::consts::PI).sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn narrow_peak_adaptive() {
        let s = 0.01;
        let v = adaptive(-5.0, 5.0, 16, 1e-15, 1e-13, |x| (-(x - 0.3_f64).powi(2) / (2.0 * s * s)).exp());
        assert_relative_eq!(v, s * (2.0 * std::f64::consts::PI).sqrt(), max_relative = 1e-11);
    }
}
