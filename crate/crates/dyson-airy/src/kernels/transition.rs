//! Heat-kernel style transition densities: p_sin, the shifted Gaussian q,
//! the normalizer g and the Airy transition density p_Ai.

use num_complex::Complex64;
use serde::Serialize;

use super::KernelError;
use crate::quadrature::adaptive;

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// p_sin(t, x) = e^{-x²/2t} / √(2π|t|), t ≠ 0.
pub fn p_sin(t: f64, x: f64) -> Result<f64, KernelError> {
    if t == 0.0 {
        return Err(KernelError::ZeroTime);
    }
    Ok((-x * x / (2.0 * t)).exp() / (SQRT_2PI * t.abs().sqrt()))
}

pub(crate) fn p_sin_c(t: f64, z: Complex64) -> Complex64 {
    (-z * z / (2.0 * t)).exp() / (SQRT_2PI * t.abs().sqrt())
}

/// q(s, t, d) = p_sin(t - s, d - (t² - s²)/4), s ≠ t, in closed form.
pub fn q_kernel(s: f64, t: f64, d: f64) -> Result<f64, KernelError> {
    if s == t {
        return Err(KernelError::EqualTimes { t });
    }
    Ok(q_c(s, t, Complex64::new(d, 0.0)).re)
}

pub(crate) fn q_c(s: f64, t: f64, d: Complex64) -> Complex64 {
    let dt = t - s;
    let e = -d * d / (2.0 * dt) + d * ((t + s) / 4.0) - dt * (t + s) * (t + s) / 32.0;
    e.exp() / (SQRT_2PI * dt.abs().sqrt())
}

/// g(t, x) = exp(-t x / 2 + t³ / 24).
pub fn g_factor(t: f64, x: f64) -> f64 {
    (-t * x / 2.0 + t * t * t / 24.0).exp()
}

/// p_Ai(dt, y | x) = exp[-(y-x)²/2dt - dt(x+y)/4 + dt³/96] / √(2π|dt|).
pub fn p_ai(dt: f64, y: f64, x: f64) -> Result<f64, KernelError> {
    if dt == 0.0 {
        return Err(KernelError::ZeroTime);
    }
    Ok(p_ai_c(dt, Complex64::new(y, 0.0), x).re)
}

pub(crate) fn p_ai_c(dt: f64, y: Complex64, x: f64) -> Complex64 {
    let d = y - x;
    let e = -d * d / (2.0 * dt) - (y + x) * (dt / 4.0) + dt * dt * dt / 96.0;
    e.exp() / (SQRT_2PI * dt.abs().sqrt())
}

/// ĝ(s, x) = exp{-D(D s/2 + s²/4 - x)}, the gauge factor turning the drifted
/// Gaussian of a finite system into q.
pub fn gauge_hat(drift: f64, s: f64, x: f64) -> f64 {
    (-drift * (drift * s / 2.0 + s * s / 4.0 - x)).exp()
}

/// The six semigroup identities between the transition densities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChapmanKolmogorov {
    /// ∫ p_sin(t-s, z-y) p_sin(s, y-x) dy = p_sin(t, z-x)
    SineForward,
    /// ∫ p_sin(-t, z-y) p_sin(t-s, y-x) dy = p_sin(-s, z-x)
    SineBackward,
    /// ∫ q(s,t,z-y) q(0,s,y-x) dy = q(0,t,z-x)
    ShiftedForward,
    /// ∫ q(t,0,z-y) q(s,t,y-x) dy = q(s,0,z-x)
    ShiftedBackward,
    /// ∫ p_Ai(t-s,z|y) p_Ai(s,y|x) dy = p_Ai(t,z|x)
    AiryForward,
    /// ∫ p_Ai(-t,z|y) p_Ai(t-s,y|x) dy = p_Ai(-s,z|x)
    AiryBackward,
}

impl ChapmanKolmogorov {
    pub const ALL: [ChapmanKolmogorov; 6] = [
        ChapmanKolmogorov::SineForward,
        ChapmanKolmogorov::SineBackward,
        ChapmanKolmogorov::ShiftedForward,
        ChapmanKolmogorov::ShiftedBackward,
        ChapmanKolmogorov::AiryForward,
        ChapmanKolmogorov::AiryBackward,
    ];

    fn integrand(self, s: f64, t: f64, x: f64, z: f64, y: f64) -> f64 {
        let r = |v: Result<f64, KernelError>| v.unwrap_or(f64::NAN);
        match self {
            Self::SineForward => r(p_sin(t - s, z - y)) * r(p_sin(s, y - x)),
            Self::SineBackward => r(p_sin(-t, z - y)) * r(p_sin(t - s, y - x)),
            Self::ShiftedForward => r(q_kernel(s, t, z - y)) * r(q_kernel(0.0, s, y - x)),
            Self::ShiftedBackward => r(q_kernel(t, 0.0, z - y)) * r(q_kernel(s, t, y - x)),
            Self::AiryForward => r(p_ai(t - s, z, y)) * r(p_ai(s, y, x)),
            Self::AiryBackward => r(p_ai(-t, z, y)) * r(p_ai(t - s, y, x)),
        }
    }

    fn target(self, s: f64, t: f64, x: f64, z: f64) -> Result<f64, KernelError> {
        match self {
            Self::SineForward => p_sin(t, z - x),
            Self::SineBackward => p_sin(-s, z - x),
            Self::ShiftedForward => q_kernel(0.0, t, z - x),
            Self::ShiftedBackward => q_kernel(s, 0.0, z - x),
            Self::AiryForward => p_ai(t, z, x),
            Self::AiryBackward => p_ai(-s, z, x),
        }
    }
}

/// Outcome of one semigroup check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SemigroupResidual {
    pub family: ChapmanKolmogorov,
    pub lhs: f64,
    pub rhs: f64,
    /// |lhs - rhs| / max(|rhs|, 1e-300)
    pub relative: f64,
}

/// Evaluates one identity at 0 < s < t by quadrature over the intermediate
/// point. The integrand is a Gaussian in y; its center and width are read
/// off the log-integrand at three points.
pub fn chapman_kolmogorov(family: ChapmanKolmogorov, s: f64, t: f64, x: f64, z: f64) -> Result<SemigroupResidual, KernelError> {
    if !(0.0 < s && s < t) {
        return Err(KernelError::Domain(format!("need 0 < s < t, got s = {s}, t = {t}")));
    }
    let rhs = family.target(s, t, x, z)?;
    if !(rhs.abs() > 1e-250) {
        return Err(KernelError::Domain(format!("target density {rhs:e} underflows")));
    }
    let f = |y: f64| family.integrand(s, t, x, z, y);
    // log f(y) = A y² + B y + C exactly
    let probe = |y: f64| f(y).ln();
    let (l0, lp, lm) = (probe(0.0), probe(1.0), probe(-1.0));
    let a = 0.5 * (lp + lm) - l0;
    let b = 0.5 * (lp - lm);
    if !(a < 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(KernelError::NonConvergent { what: "semigroup integrand".into(), detail: format!("log-quadratic coefficient {a}") });
    }
    let center = -b / (2.0 * a);
    let sd = (-0.5 / a).sqrt();
    let lhs = adaptive(center - 14.0 * sd, center + 14.0 * sd, 16, 1e-17 * rhs.abs(), 1e-14, f);
    Ok(SemigroupResidual { family, lhs, rhs, relative: (lhs - rhs).abs() / rhs.abs().max(1e-300) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_values() {
        assert_relative_eq!(p_sin(1.0, 0.0).unwrap(), 0.398_942_280_401_432_7, epsilon = 1e-15);
        // negative times give the growing backward Gaussian
        assert_relative_eq!(p_sin(-1.0, 0.7).unwrap() * p_sin(1.0, 0.7).unwrap(), p_sin(1.0, 0.0).unwrap().powi(2), max_relative = 1e-15);
        assert!(p_sin(0.0, 1.0).is_err());
        assert_relative_eq!(q_kernel(0.0, 1.0, 0.25).unwrap(), p_sin(1.0, 0.0).unwrap(), epsilon = 1e-15);
        assert!(q_kernel(1.0, 1.0, 0.0).is_err());
        assert_eq!(g_factor(0.0, 3.0), 1.0);
        assert_relative_eq!(g_factor(2.0, 0.0), (1.0_f64 / 3.0).exp(), epsilon = 1e-15);
    }

    #[test]
    fn p_ai_is_gauged_q() {
        for &(s, t, x, y) in &[(0.0, 1.0, 0.3, -0.4), (0.5, 2.0, -1.0, 2.0), (1.5, 0.2, 0.7, 0.1)] {
            let lhs = p_ai(t - s, y, x).unwrap();
            let rhs = g_factor(t, y) / g_factor(s, x) * q_kernel(s, t, y - x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
        }
    }

    #[test]
    fn masses() {
        let m = adaptive(-30.0, 30.0, 16, 1e-16, 1e-14, |y| q_kernel(0.0, 1.3, y).unwrap());
        assert_relative_eq!(m, 1.0, epsilon = 1e-12);
        let x = 0.4;
        let t = 1.1;
        let m = adaptive(-40.0, 40.0, 16, 1e-16, 1e-14, |z| p_ai(t, z, x).unwrap());
        assert_relative_eq!(m, g_factor(t, x), max_relative = 1e-10);
    }

    #[test]
    fn all_semigroups() {
        for fam in ChapmanKolmogorov::ALL {
            let r = chapman_kolmogorov(fam, 0.4, 1.7, -0.8, 1.1).unwrap();
            assert!(r.relative < 1e-10, "{fam:?}: {r:?}");
        }
        assert!(chapman_kolmogorov(ChapmanKolmogorov::SineForward, 1.0, 0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn gauge_hat_ratios() {
        let d = -1.156_7;
        let (s, x, xp) = (0.7, 0.4, -2.3);
        let lhs = p_sin(s, (x - d * s - s * s / 4.0) - xp).unwrap() / q_kernel(0.0, s, x - xp).unwrap();
        assert_relative_eq!(lhs, gauge_hat(d, s, x) * (-d * xp).exp(), max_relative = 1e-12);
        let (t, y, yp) = (1.3, -0.2, 0.9);
        let lhs = p_sin(-t, yp - (y - d * t - t * t / 4.0)).unwrap() / q_kernel(t, 0.0, yp - y).unwrap();
        assert_relative_eq!(lhs, (d * yp).exp() / gauge_hat(d, t, y), max_relative = 1e-12);
        let lhs = p_sin(s - t, (x - d * s - s * s / 4.0) - (y - d * t - t * t / 4.0)).unwrap() / q_kernel(t, s, x - y).unwrap();
        assert_relative_eq!(lhs, gauge_hat(d, s, x) / gauge_hat(d, t, y), max_relative = 1e-12);
    }
}
