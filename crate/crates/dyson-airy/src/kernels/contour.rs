//! Integrals along vertical lines Re z = c in the complex plane.

use num_complex::Complex64;

use super::KernelError;
use crate::quadrature::GaussLegendre;

const ORDER: usize = 16;
/// Panels whose integrand stays below this fraction of the running maximum end the march.
const RELATIVE_TAIL: f64 = 1e-17;
const MAX_HALF_WIDTH: f64 = 2000.0;

/// Quadrature node on the upper half of a vertical line, with the value of
/// the envelope integrand there.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LineNode {
    pub z: Complex64,
    pub weight: f64,
    pub value: Complex64,
}

/// Gauss–Legendre nodes on v ∈ [0, V] for the line Re z = c, with V grown
/// in panels of width `h` until two consecutive panels of `f` are
/// negligible and v exceeds `min_reach`.
pub(crate) fn line_nodes<F>(c: f64, h: f64, min_reach: f64, mut f: F) -> Result<Vec<LineNode>, KernelError>
where
    F: FnMut(Complex64) -> Complex64,
{
    let rule = GaussLegendre::cached(ORDER);
    let mut nodes = Vec::new();
    let mut peak: f64 = 0.0;
    let mut quiet = 0;
    let mut v = 0.0;
    while v < MAX_HALF_WIDTH {
        let mut panel_max: f64 = 0.0;
        for (node, weight) in rule.mapped(v, v + h) {
            let z = Complex64::new(c, node);
            let value = f(z);
            if !(value.re.is_finite() && value.im.is_finite()) {
                return Err(KernelError::NonConvergent {
                    what: "vertical-line quadrature".into(),
                    detail: format!("non-finite integrand at z = {c}{node:+}i"),
                });
            }
            panel_max = panel_max.max(value.norm());
            nodes.push(LineNode { z, weight, value });
        }
        peak = peak.max(panel_max);
        v += h;
        if panel_max <= RELATIVE_TAIL * peak && v >= min_reach {
            quiet += 1;
            if quiet >= 2 {
                return Ok(nodes);
            }
        } else {
            quiet = 0;
        }
    }
    Err(KernelError::NonConvergent { what: "vertical-line quadrature".into(), detail: format!("integrand not negligible by |v| = {v:.1}") })
}

/// ∫_{-∞}^{∞} F(c + iv) dv for integrands with F(conj z) = conj F(z), so the
/// result is 2 Re ∫_0^∞.
pub(crate) fn vertical_line<F>(c: f64, h: f64, min_reach: f64, f: F) -> Result<f64, KernelError>
where
    F: FnMut(Complex64) -> Complex64,
{
    let nodes = line_nodes(c, h, min_reach, f)?;
    Ok(2.0 * nodes.iter().map(|n| n.weight * n.value.re).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_line() {
        // ∫ e^{-(iv)²/2t}... with z = 1 + iv: e^{(z-1)²/(2t)} = e^{-v²/2t}
        let t = 0.3;
        let v = vertical_line(1.0, 0.25, 1.0, |z| ((z - 1.0) * (z - 1.0) / (2.0 * t)).exp()).unwrap();
        assert_relative_eq!(v, (2.0 * std::f64::consts::PI * t).sqrt(), max_relative = 1e-14);
        assert!(vertical_line(0.0, 1.0, 1.0, |_| Complex64::new(1.0, 0.0)).is_err());
    }
}
