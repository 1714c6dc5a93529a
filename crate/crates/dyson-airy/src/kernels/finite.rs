//! Correlation kernel of the drifted N-particle system started from a finite
//! configuration, as a sum over atoms of vertical-line integrals.

use num_complex::Complex64;

use super::contour::vertical_line;
use super::transition::{p_sin, p_sin_c, q_c, q_kernel};
use super::KernelError;
use crate::config::PointConfiguration;
use crate::products::{airy_drift, phi_a_with_drift, phi_p, Genus};

/// K^{ξN}_A for a finite simple configuration.
#[derive(Debug, Clone)]
pub struct FiniteKernel {
    config: PointConfiguration<f64>,
    drift: f64,
}

impl FiniteKernel {
    pub fn new(config: &PointConfiguration<f64>) -> Result<Self, KernelError> {
        if config.is_empty() {
            return Err(KernelError::Domain("empty configuration".into()));
        }
        if !config.is_simple() {
            return Err(KernelError::Domain("kernel needs a configuration without multiple points".into()));
        }
        let config = config.without_generator();
        let drift = airy_drift(&config)?;
        Ok(Self { config, drift })
    }

    pub fn config(&self) -> &PointConfiguration<f64> {
        &self.config
    }

    /// D = d1 + Σ_{j ≤ N} 1/a_j.
    pub fn drift(&self) -> f64 {
        self.drift
    }

    /// ∫ dv Φ_A(ξ, x', z) q(t, 0, z - y) on Re z = y - t²/4.
    fn line_integral(&self, atom: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        let c = y - t * t / 4.0;
        let h = 0.5 * t.sqrt().clamp(0.05, 1.0);
        vertical_line(c, h, 3.0 * t.sqrt(), |z| phi_a_with_drift(&self.config, Some(atom), z, self.drift) * q_c(t, 0.0, z - y))
    }

    /// K^{ξN}_A(s, x; t, y), s, t > 0.
    pub fn eval(&self, s: f64, x: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        check_times(s, t)?;
        let mut total = 0.0;
        for atom in self.config.atoms() {
            let weight = q_kernel(0.0, s, x - atom.x)?;
            if weight == 0.0 {
                continue;
            }
            total += weight * self.line_integral(atom.x, t, y)?;
        }
        if s > t {
            total -= q_kernel(t, s, x - y)?;
        }
        Ok(total)
    }

    /// Undrifted Dyson kernel K^{ξN}(s, x; t, y) built from p_sin and Φ_0.
    pub fn dyson(&self, s: f64, x: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        check_times(s, t)?;
        let h = 0.5 * t.sqrt().clamp(0.05, 1.0);
        let mut total = 0.0;
        for atom in self.config.atoms() {
            let weight = p_sin(s, x - atom.x)?;
            if weight == 0.0 {
                continue;
            }
            let line = vertical_line(y, h, 3.0 * t.sqrt(), |z: Complex64| phi_p(&self.config, atom.x, z, Genus::Zero) * p_sin_c(-t, z - y))?;
            total += weight * line;
        }
        if s > t {
            total -= p_sin(s - t, x - y)?;
        }
        Ok(total)
    }
}

pub(crate) fn check_times(s: f64, t: f64) -> Result<(), KernelError> {
    if s > 0.0 && t > 0.0 {
        Ok(())
    } else {
        Err(KernelError::Domain(format!("kernel times must be positive (s = {s}, t = {t})")))
    }
}
