//! Relaxation of the Airy-zero start towards the stationary Airy process,
//! and recovery of the initial atoms as t ↓ 0.

use serde::{Deserialize, Serialize};

use super::CorrelationError;
use crate::kernels::AiryRelaxationKernel;
use crate::quadrature::adaptive;

/// Rectangle [x_lo, x_hi] × [y_lo, y_hi] sampled on a uniform grid.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RelaxationBox {
    pub x: (f64, f64),
    pub y: (f64, f64),
    /// Grid points per axis.
    pub points: usize,
}

impl Default for RelaxationBox {
    fn default() -> Self {
        Self { x: (-3.0, 3.0), y: (-3.0, 3.0), points: 13 }
    }
}

fn axis((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// sup over the box of |𝕂_Ai(s+θ,x;t+θ,y) - 𝐊_Ai(t-s,y|x)| for each θ,
/// which is |R(s+θ,x;t+θ,y)|.
pub fn relaxation_residual(s: f64, t: f64, bx: &RelaxationBox, thetas: &[f64]) -> Result<Vec<f64>, CorrelationError> {
    if !(0.0 < s && s <= t) {
        return Err(CorrelationError::InvalidQuery(format!("need 0 < s ≤ t, got s = {s}, t = {t}")));
    }
    if thetas.windows(2).any(|w| !(w[0] < w[1])) || thetas.iter().any(|&th| !(th >= 0.0)) {
        return Err(CorrelationError::InvalidQuery("θ values must be nonnegative and increasing".into()));
    }
    if bx.points == 0 || !(bx.x.0 <= bx.x.1 && bx.y.0 <= bx.y.1) {
        return Err(CorrelationError::InvalidQuery("empty relaxation box".into()));
    }
    let xs = axis(bx.x, bx.points);
    let ys = axis(bx.y, bx.points);
    let kernel = AiryRelaxationKernel::default();
    thetas
        .iter()
        .map(|&th| {
            let r = kernel.remainder_grid(s + th, &xs, t + th, &ys)?;
            Ok(r.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())))
        })
        .collect()
}

/// Test function for [`initial_recovery`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "probe", rename_all = "snake_case")]
pub enum Probe {
    /// exp(1 - 1/(1-r²)) with r = (x - center)/width, equal to 1 at the center.
    Bump { center: f64, width: f64 },
    /// Indicator of [lo, hi].
    Interval { lo: f64, hi: f64 },
}

impl Probe {
    fn support(&self) -> (f64, f64) {
        match *self {
            Probe::Bump { center, width } => (center - width, center + width),
            Probe::Interval { lo, hi } => (lo, hi),
        }
    }

    fn weight(&self, x: f64) -> f64 {
        match *self {
            Probe::Bump { center, width } => {
                let r = (x - center) / width;
                if r.abs() >= 1.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / (1.0 - r * r)).exp()
                }
            }
            Probe::Interval { .. } => 1.0,
        }
    }
}

/// ∫ φ(x) ρ(t, x) dx for each t, where ρ is the one-point density of the
/// process started from the Airy zeros.
pub fn initial_recovery(ts: &[f64], probe: Probe) -> Result<Vec<f64>, CorrelationError> {
    let (lo, hi) = probe.support();
    if let Probe::Bump { width, .. } = probe {
        if !(width >= 1e-2) {
            return Err(CorrelationError::InvalidQuery(format!("probe width must be at least 1e-2, got {width}")));
        }
    }
    if !(lo < hi) {
        return Err(CorrelationError::InvalidQuery("probe support is empty".into()));
    }
    if ts.iter().any(|&t| !(t > 0.0)) {
        return Err(CorrelationError::InvalidQuery("recovery times must be positive".into()));
    }
    let kernel = AiryRelaxationKernel::default();
    ts.iter()
        .map(|&t| {
            let mut failure = None;
            let panels = 8 + ((hi - lo) / t.sqrt()).ceil() as usize;
            let v = adaptive(lo, hi, panels, 1e-12, 1e-10, |x| match kernel.p_ai_form(t, x, t, x) {
                Ok(rho) => probe.weight(x) * rho,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            });
            match failure {
                Some(e) => Err(e.into()),
                None => Ok(v),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airy::shared_zeros;

    #[test]
    fn residual_decreases() {
        let bx = RelaxationBox { points: 5, ..Default::default() };
        let r = relaxation_residual(0.5, 1.0, &bx, &[1.0, 2.0, 4.0]).unwrap();
        assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
        assert!(relaxation_residual(1.0, 0.5, &bx, &[1.0]).is_err());
    }

    #[test]
    fn atoms_reappear() {
        let a = shared_zeros(3).unwrap();
        let a = a.as_slice();
        let ts = [0.5, 0.1, 0.02];
        let at = initial_recovery(&ts, Probe::Bump { center: a[0], width: 0.5 }).unwrap();
        assert!((at[2] - 1.0).abs() < (at[1] - 1.0).abs() && (at[1] - 1.0).abs() < (at[0] - 1.0).abs(), "{at:?}");
        // φ''(center) = -2/width², so the t = 0.02 bias is about -0.08
        assert!((at[2] - 1.0).abs() < 0.1);
        let between = initial_recovery(&ts, Probe::Bump { center: 0.5 * (a[0] + a[1]), width: 0.3 }).unwrap();
        assert!(between[2] < between[1] && between[1] < between[0], "{between:?}");
        let total = initial_recovery(&[0.02], Probe::Interval { lo: a[2] - 0.4, hi: a[0] + 0.4 }).unwrap();
        assert!((total[0] - 3.0).abs() < 0.05, "{total:?}");
    }
}
