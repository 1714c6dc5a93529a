//! Correlation kernels: transition densities, stationary kernels and the
//! kernels of the relaxation process from a given initial configuration.

pub mod airy_integrals;
pub(crate) mod contour;
pub mod finite;
pub mod identities;
pub mod infinite;
pub mod stationary;
pub mod transition;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::airy::AiryError;
use crate::config::{ConfigError, PointConfiguration};
use crate::products::ProductError;

pub use airy_integrals::airy_product_integral;
pub use finite::FiniteKernel;
pub use infinite::{kernel_infinite, AiryRelaxationKernel, InfiniteKernel, LadderOptions};
pub use stationary::{airy_kernel, ext_airy_kernel, sine_kernel};
pub use transition::{chapman_kolmogorov, g_factor, gauge_hat, p_ai, p_sin, q_kernel, ChapmanKolmogorov, SemigroupResidual};

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("transition density needs a nonzero time difference")]
    ZeroTime,
    #[error("q(s, t, ·) is undefined at equal times s = t = {t}")]
    EqualTimes { t: f64 },
    #[error("{0}")]
    Domain(String),
    #[error("{what} did not converge: {detail}")]
    NonConvergent { what: String, detail: String },
    #[error("configuration fails the convergence conditions: {0}")]
    ConditionViolation(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Airy(#[from] AiryError),
}

/// Which kernel a [`KernelSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// K_sin(y - x), times ignored.
    Sine,
    /// 𝐊_sin(t - s, y - x).
    ExtSine,
    /// K_Ai(x, y), times ignored.
    Airy,
    /// 𝐊_Ai(t - s, y | x).
    ExtAiry,
    /// 𝕂^{ξN}_A of a finite configuration.
    FiniteConfig,
    /// 𝕂^ξ_A of a configuration with a generator.
    InfiniteConfig,
    /// 𝕂_Ai of the Airy-zero start, without the gauge factor.
    AiryRelaxation,
}

/// Kernel description for batch evaluation.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub config: Option<PointConfiguration<f64>>,
    pub ladder: LadderOptions,
}

impl KernelSpec {
    pub fn new(kind: KernelKind) -> Self {
        Self { kind, config: None, ladder: LadderOptions::default() }
    }

    pub fn with_config(kind: KernelKind, config: PointConfiguration<f64>) -> Self {
        Self { kind, config: Some(config), ladder: LadderOptions::default() }
    }

    /// Checks the configuration and builds whatever can be reused across points.
    pub fn compile(&self) -> Result<CompiledKernel, KernelError> {
        let need = || self.config.as_ref().ok_or_else(|| KernelError::Domain(format!("{:?} kernel needs a configuration", self.kind)));
        Ok(match self.kind {
            KernelKind::Sine => CompiledKernel::Sine,
            KernelKind::ExtSine => CompiledKernel::ExtSine,
            KernelKind::Airy => CompiledKernel::Airy,
            KernelKind::ExtAiry => CompiledKernel::ExtAiry,
            KernelKind::FiniteConfig => {
                let c = need()?;
                if c.generator().is_some() {
                    return Err(KernelError::Domain("finite kernel takes a configuration without generator".into()));
                }
                CompiledKernel::Finite(FiniteKernel::new(c)?)
            }
            KernelKind::InfiniteConfig => CompiledKernel::Infinite(InfiniteKernel::new(need()?, &self.ladder)?),
            KernelKind::AiryRelaxation => CompiledKernel::AiryRelaxation(AiryRelaxationKernel::default()),
        })
    }
}

/// A [`KernelSpec`] ready for evaluation.
#[derive(Debug, Clone)]
pub enum CompiledKernel {
    Sine,
    ExtSine,
    Airy,
    ExtAiry,
    Finite(FiniteKernel),
    Infinite(InfiniteKernel),
    AiryRelaxation(AiryRelaxationKernel),
}

impl CompiledKernel {
    /// Kernel value at (s, x; t, y).
    pub fn eval(&self, s: f64, x: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        match self {
            Self::Sine => Ok(sine_kernel(0.0, y - x)),
            Self::ExtSine => Ok(sine_kernel(t - s, y - x)),
            Self::Airy => Ok(airy_kernel(x, y)),
            Self::ExtAiry => ext_airy_kernel(t - s, y, x),
            Self::Finite(k) => k.eval(s, x, t, y),
            Self::Infinite(k) => Ok(k.eval(s, x, t, y)?.best()),
            Self::AiryRelaxation(k) => k.p_ai_form(s, x, t, y),
        }
    }

    /// True for the process kernels that need positive times.
    pub fn needs_positive_times(&self) -> bool {
        matches!(self, Self::Finite(_) | Self::Infinite(_) | Self::AiryRelaxation(_))
    }
}

/// A point (t, x) of space-time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimePoint {
    pub t: f64,
    pub x: f64,
}

impl SpaceTimePoint {
    pub fn new(t: f64, x: f64) -> Result<Self, KernelError> {
        if !(t >= 0.0) || !x.is_finite() {
            return Err(KernelError::Domain(format!("space-time point needs t ≥ 0 and finite x, got ({t}, {x})")));
        }
        Ok(Self { t, x })
    }
}

/// Evaluates a kernel at many (s, x, t, y) tuples in parallel; output order
/// follows the input.
pub fn evaluate_batch(spec: &KernelSpec, points: &[(f64, f64, f64, f64)]) -> Result<Vec<f64>, KernelError> {
    let kernel = spec.compile()?;
    points.par_iter().map(|&(s, x, t, y)| kernel.eval(s, x, t, y)).collect()
}
