//! Multitime correlation functions as block determinants of a kernel.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::CorrelationError;
use crate::kernels::{CompiledKernel, KernelSpec};

/// Largest total number of points in one determinant.
pub const MAX_POINTS: usize = 64;
/// Condition number above which a determinant is flagged.
pub const CONDITION_WARNING: f64 = 1e12;
/// Tolerated negativity of equal-time correlations.
pub const NEGATIVE_TOLERANCE: f64 = 1e-8;

/// Points grouped by strictly increasing times.
#[derive(Debug, Clone)]
pub struct CorrelationQuery {
    pub kernel: KernelSpec,
    pub blocks: Vec<(f64, Vec<f64>)>,
}

impl CorrelationQuery {
    pub fn new(kernel: KernelSpec, blocks: Vec<(f64, Vec<f64>)>) -> Result<Self, CorrelationError> {
        let q = Self { kernel, blocks };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<(), CorrelationError> {
        if self.blocks.is_empty() {
            return Err(CorrelationError::InvalidQuery("no blocks".into()));
        }
        if self.blocks.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(CorrelationError::InvalidQuery("block times must be strictly increasing".into()));
        }
        let total = self.point_count();
        if total == 0 || total > MAX_POINTS {
            return Err(CorrelationError::InvalidQuery(format!("{total} points; need 1..={MAX_POINTS}")));
        }
        Ok(())
    }

    pub fn point_count(&self) -> usize {
        self.blocks.iter().map(|b| b.1.len()).sum()
    }

    fn space_time(&self) -> Vec<(f64, f64)> {
        self.blocks.iter().flat_map(|(t, xs)| xs.iter().map(move |&x| (*t, x))).collect()
    }
}

/// Value of a correlation function with a conditioning diagnostic.
#[derive(Debug, Clone, Serialize)]
pub struct Correlation {
    pub value: f64,
    /// 2-norm condition number of the kernel matrix.
    pub condition: f64,
    pub ill_conditioned: bool,
}

/// Kernel matrix [𝕂(t_m, x_j; t_n, x_k)] of a query.
pub fn kernel_matrix(kernel: &CompiledKernel, points: &[(f64, f64)]) -> Result<DMatrix<f64>, CorrelationError> {
    let n = points.len();
    let entries: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            // column-major, as nalgebra stores it
            let (i, j) = (idx % n, idx / n);
            let (s, x) = points[i];
            let (t, y) = points[j];
            kernel.eval(s, x, t, y)
        })
        .collect::<Result<_, _>>()?;
    Ok(DMatrix::from_vec(n, n, entries))
}

/// ρ = det[𝕂(t_m, x_j^{(m)}; t_n, x_k^{(n)})].
pub fn correlation_function(query: &CorrelationQuery) -> Result<Correlation, CorrelationError> {
    query.validate()?;
    let kernel = query.kernel.compile()?;
    let points = query.space_time();
    let m = kernel_matrix(&kernel, &points)?;
    let sv = m.singular_values();
    let (max, min) = sv.iter().fold((0.0f64, f64::INFINITY), |(a, b), &v| (a.max(v), b.min(v)));
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    let value = m.determinant();
    if query.blocks.len() == 1 && value < -NEGATIVE_TOLERANCE {
        return Err(CorrelationError::NegativeDensity { value });
    }
    Ok(Correlation { value, condition, ill_conditioned: condition > CONDITION_WARNING })
}

/// ρ(t, x) = 𝕂(t, x; t, x) on a grid.
pub fn density_profile(kernel: &KernelSpec, t: f64, grid: &[f64]) -> Result<Vec<f64>, CorrelationError> {
    let k = kernel.compile()?;
    if k.needs_positive_times() && !(t > 0.0) {
        return Err(CorrelationError::InvalidQuery(format!("process kernel needs t > 0, got {t}")));
    }
    Ok(grid.par_iter().map(|&x| k.eval(t, x, t, x)).collect::<Result<_, _>>()?)
}
