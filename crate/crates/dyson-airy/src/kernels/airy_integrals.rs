//! Exponentially weighted integrals of Airy products on half-lines, with
//! panel widths tied to the local oscillation of the integrand.

use super::KernelError;
use crate::airy::RealAiryTable;
use crate::quadrature::GaussLegendre;

const PANEL_ORDER: usize = 16;
/// Integrand decay, in e-folds below the running maximum, that ends a half-line.
const TAIL_EFOLDS: f64 = 46.0;

/// Log-envelope of e^{rate u} Π Ai(u + shift), up to algebraic factors.
fn log_envelope(rate: f64, shifts: &[f64], u: f64) -> f64 {
    let decay = |w: f64| if w > 0.0 { (2.0 / 3.0) * w.powf(1.5) } else { 0.0 };
    rate * u - shifts.iter().map(|&x| decay(u + x)).sum::<f64>()
}

fn min_of(shifts: &[f64]) -> f64 {
    shifts.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max_of(shifts: &[f64]) -> f64 {
    shifts.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// First u >= start where the envelope is TAIL_EFOLDS below its running max
/// and both Airy factors are in their decaying region.
fn upper_cutoff(rate: f64, shifts: &[f64], start: f64) -> f64 {
    let mut u = start;
    let mut best = log_envelope(rate, shifts, u);
    loop {
        u += 0.5;
        let e = log_envelope(rate, shifts, u);
        best = best.max(e);
        if e < best - TAIL_EFOLDS && u + min_of(shifts) > 0.0 {
            return u;
        }
    }
}

/// Last u <= end, scanning left, past which the weight e^{rate u} has killed
/// the integrand (rate > 0).
fn lower_cutoff(rate: f64, shifts: &[f64], end: f64) -> f64 {
    let mut u = end;
    let mut best = log_envelope(rate, shifts, u);
    loop {
        u -= 0.5;
        let e = log_envelope(rate, shifts, u);
        best = best.max(e);
        if e < best - TAIL_EFOLDS && u + max_of(shifts) < 0.0 {
            return u;
        }
    }
}

/// Composite Gauss–Legendre nodes on [lo, hi] with panels short enough for
/// the oscillation of Ai(u + shift) and for the exponential weight.
pub(crate) fn oscillation_nodes(lo: f64, hi: f64, shift: f64, rate: f64) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::cached(PANEL_ORDER);
    let max_width = if rate.abs() > 8.0 { 8.0 / rate.abs() } else { 1.0 };
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    let mut u = lo;
    while u < hi {
        let w = u + shift;
        let h = if w < -1.0 { (4.0 / (-w).sqrt()).min(max_width) } else { max_width };
        let b = (u + h).min(hi);
        for (x, wt) in rule.mapped(u, b) {
            xs.push(x);
            ws.push(wt);
        }
        u = b;
    }
    (xs, ws)
}

/// ∫_{lo}^{hi} e^{rate·u} Ai(u+x) Ai(u+y) du; `None` bounds are infinite.
///
/// A lower infinite bound needs rate > 0.
pub fn airy_product_integral(rate: f64, x: f64, y: f64, lo: Option<f64>, hi: Option<f64>) -> Result<f64, KernelError> {
    let hi = match hi {
        Some(h) => h,
        None => upper_cutoff(rate, &[x, y], lo.unwrap_or(-x.max(y))),
    };
    let lo = match lo {
        Some(l) => l,
        None if rate > 0.0 => lower_cutoff(rate, &[x, y], hi),
        None => return Err(KernelError::Domain(format!("integral to -∞ diverges for weight rate {rate}"))),
    };
    if hi <= lo {
        return Ok(0.0);
    }
    let table = RealAiryTable::global();
    let (us, ws) = oscillation_nodes(lo, hi, x.min(y), rate);
    Ok(us.iter().zip(&ws).map(|(&u, &w)| w * (rate * u).exp() * table.ai(u + x) * table.ai(u + y)).sum())
}

/// Precomputed w_k e^{rate u_k} Ai(u_k + x) for projecting onto many
/// shifted Airy functions Ai(u + a) on one half-line.
#[derive(Debug, Clone)]
pub(crate) struct AiryProjection {
    nodes: Vec<f64>,
    weighted: Vec<f64>,
}

/// Which half-line a projection lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum HalfLine {
    /// [0, ∞)
    Positive,
    /// (-∞, 0]
    Negative,
}

impl AiryProjection {
    /// `deepest` is the most negative shift a that will be projected.
    pub(crate) fn new(rate: f64, x: f64, side: HalfLine, deepest: f64) -> Self {
        let (lo, hi) = match side {
            HalfLine::Positive => (0.0, upper_cutoff(rate, &[x], 0.0)),
            HalfLine::Negative => (lower_cutoff(rate, &[x], 0.0), 0.0),
        };
        let table = RealAiryTable::global();
        let (nodes, ws) = oscillation_nodes(lo, hi, x.min(deepest), rate);
        let weighted = nodes.iter().zip(&ws).map(|(&u, &w)| w * (rate * u).exp() * table.ai(u + x)).collect();
        Self { nodes, weighted }
    }

    /// Σ_k w_k e^{rate u_k} Ai(u_k + x) Ai(u_k + a).
    pub(crate) fn project(&self, a: f64) -> f64 {
        let table = RealAiryTable::global();
        self.nodes.iter().zip(&self.weighted).map(|(&u, &f)| f * table.ai(u + a)).sum()
    }
}
