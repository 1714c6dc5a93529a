//! Monte-Carlo sampling of the drifted N-particle system
//! Y_j(t) = X_j(t) + t²/4 + D_N t, X a β = 2 Dyson Brownian motion.

mod estimate;
mod ks;

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::airy::airy_constants;
use crate::config::{ConfigError, PointConfiguration};
use crate::products::{airy_reciprocal_sum, ProductError};

pub use estimate::{estimate_correlation, estimate_pair_correlation, generating_functional, DensityEstimate, PairEstimate};
pub use ks::{ks_two_sample, KsResult};

/// Step length below which the Euler integrator gives up.
pub const MIN_STEP: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("a seed is required")]
    MissingSeed,
    #[error("step collapsed below {MIN_STEP:e} at t = {t} on path {path}")]
    StepCollapse { t: f64, path: usize },
    #[error("ensemble has no samples")]
    EmptyEnsemble,
    #[error("time {t} is not in the plan")]
    UnknownTime { t: f64 },
    #[error("invalid bins: {0}")]
    InvalidBins(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

/// D_N = d1 + Σ_{ℓ ≤ N} 1/a_ℓ; N = 0 gives d1.
pub fn drift_coefficient(n: usize) -> Result<f64, SimError> {
    Ok(airy_constants::<f64>().d1 + airy_reciprocal_sum::<f64>(n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMethod {
    Euler,
    Matrix,
}

impl std::str::FromStr for SimMethod {
    type Err = SimError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euler" => Ok(SimMethod::Euler),
            "matrix" => Ok(SimMethod::Matrix),
            other => Err(SimError::InvalidPlan(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimPlan {
    pub initial: PointConfiguration<f64>,
    pub times: Vec<f64>,
    pub paths: usize,
    /// Euler step; ignored by the matrix sampler.
    pub dt: Option<f64>,
    pub method: SimMethod,
    pub seed: Option<u64>,
}

impl SimPlan {
    fn validate(&self) -> Result<u64, SimError> {
        let seed = self.seed.ok_or(SimError::MissingSeed)?;
        if self.initial.is_empty() || !self.initial.is_simple() || self.initial.generator().is_some() {
            return Err(SimError::InvalidPlan("initial configuration must be finite, simple and nonempty".into()));
        }
        if self.paths == 0 {
            return Err(SimError::InvalidPlan("paths must be at least 1".into()));
        }
        if self.times.is_empty() || self.times.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(SimError::InvalidPlan("times must be positive".into()));
        }
        if self.times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(SimError::InvalidPlan("times must be strictly increasing".into()));
        }
        if self.method == SimMethod::Euler && !self.dt.is_some_and(|dt| dt > 0.0 && dt.is_finite()) {
            return Err(SimError::InvalidPlan("euler needs dt > 0".into()));
        }
        Ok(seed)
    }

    /// Largest dt for which the Euler run is advised: (min initial gap)²/8.
    pub fn advised_dt(&self) -> Option<f64> {
        let p = self.initial.points();
        p.windows(2).map(|w| w[1] - w[0]).reduce(f64::min).map(|g| g * g / 8.0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Euler steps rejected for breaking the ordering.
    pub rejections: u64,
    /// Largest ratio dt / (accepted step).
    pub max_shrink: f64,
}

/// Samples indexed as [path][time][particle], particles ascending.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Ensemble {
    pub plan: SimPlan,
    pub particles: usize,
    samples: Vec<f64>,
    pub diagnostics: Diagnostics,
}

impl Ensemble {
    pub fn paths(&self) -> usize {
        self.plan.paths
    }

    pub fn sample(&self, path: usize, time: usize) -> &[f64] {
        let n = self.particles;
        let start = (path * self.plan.times.len() + time) * n;
        &self.samples[start..start + n]
    }

    pub fn time_index(&self, t: f64) -> Result<usize, SimError> {
        self.plan.times.iter().position(|&s| (s - t).abs() <= 1e-12 * t.abs().max(1.0)).ok_or(SimError::UnknownTime { t })
    }

    /// All (path, sample) pairs at one time.
    pub fn at_time(&self, time: usize) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.paths()).map(move |p| self.sample(p, time))
    }

    /// Count of samples that are not strictly increasing.
    pub fn ordering_violations(&self) -> usize {
        self.samples.chunks(self.particles).filter(|s| s.windows(2).any(|w| !(w[0] < w[1]))).count()
    }
}

struct PathOutput {
    positions: Vec<f64>,
    rejections: u64,
    max_shrink: f64,
}

/// Runs the plan. Identical plans give bit-identical ensembles regardless
/// of the rayon pool size.
pub fn simulate(plan: &SimPlan) -> Result<Ensemble, SimError> {
    let seed = plan.validate()?;
    let start = plan.initial.points();
    let n = start.len();
    let drift = drift_coefficient(n)?;
    let outputs: Vec<PathOutput> = (0..plan.paths)
        .into_par_iter()
        .map(|path| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(path as u64);
            match plan.method {
                SimMethod::Euler => euler_path(&start, &plan.times, plan.dt.unwrap_or(0.0), drift, &mut rng, path),
                SimMethod::Matrix => Ok(matrix_path(&start, &plan.times, drift, &mut rng)),
            }
        })
        .collect::<Result<_, _>>()?;
    let mut diagnostics = Diagnostics { rejections: 0, max_shrink: 1.0 };
    let mut samples = Vec::with_capacity(plan.paths * plan.times.len() * n);
    for out in outputs {
        diagnostics.rejections += out.rejections;
        diagnostics.max_shrink = diagnostics.max_shrink.max(out.max_shrink);
        samples.extend(out.positions);
    }
    Ok(Ensemble { plan: plan.clone(), particles: n, samples, diagnostics })
}

struct EulerState<'a> {
    y: Vec<f64>,
    trial: Vec<f64>,
    drift: f64,
    rng: &'a mut ChaCha8Rng,
    rejections: u64,
    min_step: f64,
    path: usize,
}

impl EulerState<'_> {
    // One step over [t, t+h] with Brownian increments `db`. On an ordering
    // violation the increment is split by a Brownian bridge and both halves
    // are retried, so refinement does not change the path law.
    fn step(&mut self, t: f64, h: f64, db: &[f64]) -> Result<(), SimError> {
        if h < MIN_STEP {
            return Err(SimError::StepCollapse { t, path: self.path });
        }
        // exact integral of t/2 + D over the step
        let shift = ((t + h) * (t + h) - t * t) / 4.0 + self.drift * h;
        let y = &self.y;
        for (j, (out, b)) in self.trial.iter_mut().zip(db).enumerate() {
            let repulsion: f64 = y.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, yk)| 1.0 / (y[j] - yk)).sum();
            *out = y[j] + b + shift + repulsion * h;
        }
        if self.trial.windows(2).all(|w| w[0] < w[1]) {
            std::mem::swap(&mut self.y, &mut self.trial);
            self.min_step = self.min_step.min(h);
            return Ok(());
        }
        self.rejections += 1;
        let sd = (h / 4.0).sqrt();
        let first: Vec<f64> = db.iter().map(|&b| 0.5 * b + sd * self.rng.sample::<f64, _>(StandardNormal)).collect();
        let second: Vec<f64> = db.iter().zip(&first).map(|(b, f)| b - f).collect();
        self.step(t, 0.5 * h, &first)?;
        self.step(t + 0.5 * h, 0.5 * h, &second)
    }
}

fn euler_path(start: &[f64], times: &[f64], dt: f64, drift: f64, rng: &mut ChaCha8Rng, path: usize) -> Result<PathOutput, SimError> {
    let n = start.len();
    let mut state = EulerState { y: start.to_vec(), trial: vec![0.0; n], drift, rng, rejections: 0, min_step: dt, path };
    let mut positions = Vec::with_capacity(times.len() * n);
    let mut t = 0.0;
    let mut db = vec![0.0; n];
    for &target in times {
        while t < target {
            let h = dt.min(target - t);
            let h = if target - (t + h) < 1e-12 * target { target - t } else { h };
            let sd = h.sqrt();
            for b in db.iter_mut() {
                *b = sd * state.rng.sample::<f64, _>(StandardNormal);
            }
            state.step(t, h, &db)?;
            t = if h == target - t { target } else { t + h };
        }
        positions.extend_from_slice(&state.y);
    }
    Ok(PathOutput { positions, rejections: state.rejections, max_shrink: dt / state.min_step })
}

fn matrix_path(start: &[f64], times: &[f64], drift: f64, rng: &mut ChaCha8Rng) -> PathOutput {
    let n = start.len();
    let mut h = DMatrix::<Complex<f64>>::from_diagonal(&nalgebra::DVector::from_iterator(n, start.iter().map(|&x| Complex::new(x, 0.0))));
    let mut positions = Vec::with_capacity(times.len() * n);
    let mut last = 0.0;
    for &t in times {
        let dv = t - last;
        last = t;
        // Hermitian Brownian increment: diagonal N(0, dv), E|H_jk|² = dv, which
        // gives the repulsion Σ 1/(λ_j - λ_k) with unit strength
        for j in 0..n {
            h[(j, j)] += Complex::new(dv.sqrt() * rng.sample::<f64, _>(StandardNormal), 0.0);
            for k in j + 1..n {
                let sd = (dv / 2.0).sqrt();
                let z = Complex::new(sd * rng.sample::<f64, _>(StandardNormal), sd * rng.sample::<f64, _>(StandardNormal));
                h[(j, k)] += z;
                h[(k, j)] += z.conj();
            }
        }
        let mut eig: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        let shift = t * t / 4.0 + drift * t;
        positions.extend(eig.into_iter().map(|x| x + shift));
    }
    PathOutput { positions, rejections: 0, max_shrink: 1.0 }
}
