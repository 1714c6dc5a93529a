//! Stationary and extended sine and Airy kernels.

use std::f64::consts::PI;

use super::airy_integrals::airy_product_integral;
use super::transition::p_ai;
use super::KernelError;
use crate::airy::RealAiryTable;
use crate::quadrature::composite;

/// Below this separation the Airy kernel uses the diagonal formula at the midpoint.
pub const DIAGONAL_SWITCH: f64 = 1e-6;

/// Extended sine kernel in the time difference `t`:
/// ∫_0^1 e^{π²u²t/2} cos(πux) du for t > 0, sin(πx)/(πx) for t = 0, and
/// -∫_1^∞ e^{π²u²t/2} cos(πux) du for t < 0.
pub fn sine_kernel(t: f64, x: f64) -> f64 {
    let f = |u: f64| (PI * PI * u * u * t / 2.0).exp() * (PI * u * x).cos();
    let panels = |span: f64| 4 + (span * (1.0 + x.abs())).ceil() as usize;
    if t > 0.0 {
        composite(0.0, 1.0, panels(1.0), 20, f)
    } else if t == 0.0 {
        if x == 0.0 {
            1.0
        } else {
            (PI * x).sin() / (PI * x)
        }
    } else {
        let upper = (1.0 + 2.0 * 40.0 / (PI * PI * -t)).sqrt();
        -composite(1.0, upper, panels(upper - 1.0), 20, f)
    }
}

/// K_Ai(x, y) = (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y).
pub fn airy_kernel(x: f64, y: f64) -> f64 {
    let table = RealAiryTable::global();
    if (x - y).abs() < DIAGONAL_SWITCH {
        let m = 0.5 * (x + y);
        let (a, ap) = table.eval(m);
        return ap * ap - m * a * a;
    }
    let (ax, axp) = table.eval(x);
    let (ay, ayp) = table.eval(y);
    (ax * ayp - axp * ay) / (x - y)
}

/// Time difference beyond which the t < 0 branch integrates the half-line
/// directly instead of subtracting from the full-line closed form.
const BACKWARD_DIRECT: f64 = 2.0;

/// Extended Airy kernel 𝐊_Ai(t, y | x).
///
/// t ≥ 0: ∫_0^∞ e^{-ut/2} Ai(u+x) Ai(u+y) du.
/// t < 0: -∫_{-∞}^0 e^{-ut/2} Ai(u+x) Ai(u+y) du, evaluated for small |t| as
/// ∫_0^∞ (same) - p_Ai(-t, y | x) to avoid the long oscillatory half-line.
pub fn ext_airy_kernel(t: f64, y: f64, x: f64) -> Result<f64, KernelError> {
    if t == 0.0 {
        return Ok(airy_kernel(x, y));
    }
    let rate = -t / 2.0;
    if t > 0.0 {
        return airy_product_integral(rate, x, y, Some(0.0), None);
    }
    if -t <= BACKWARD_DIRECT {
        Ok(airy_product_integral(rate, x, y, Some(0.0), None)? - p_ai(-t, y, x)?)
    } else {
        Ok(-airy_product_integral(rate, x, y, None, Some(0.0))?)
    }
}
