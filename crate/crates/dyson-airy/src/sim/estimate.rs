//! Histogram estimators of correlation functions from an ensemble.

use serde::Serialize;

use super::{Ensemble, SimError};

#[derive(Debug, Clone, Serialize)]
pub struct DensityEstimate {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// ρ̂ per unit length in each bin.
    pub density: Vec<f64>,
    /// Binomial standard error of ρ̂, with paths·N trials per bin.
    pub stderr: Vec<f64>,
}

impl DensityEstimate {
    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// Σ ρ̂ · width over all bins.
    pub fn mass(&self) -> f64 {
        self.density.iter().zip(self.edges.windows(2)).map(|(d, w)| d * (w[1] - w[0])).sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairEstimate {
    pub edges: Vec<f64>,
    /// ρ̂₂ on bin pairs, row-major, ordered pairs of distinct particles.
    pub density: Vec<f64>,
}

impl PairEstimate {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.density[i * (self.edges.len() - 1) + j]
    }
}

fn check_edges(edges: &[f64]) -> Result<(), SimError> {
    if edges.len() < 2 || edges.windows(2).any(|w| !(w[0] < w[1])) || edges.iter().any(|e| !e.is_finite()) {
        return Err(SimError::InvalidBins("need at least two strictly increasing finite edges".into()));
    }
    Ok(())
}

fn bin_of(edges: &[f64], x: f64) -> Option<usize> {
    if !(x >= edges[0] && x < edges[edges.len() - 1]) {
        return None;
    }
    Some(edges.partition_point(|&e| e <= x) - 1)
}

/// One-time density histogram at time `t`.
pub fn estimate_correlation(ens: &Ensemble, t: f64, edges: &[f64]) -> Result<DensityEstimate, SimError> {
    check_edges(edges)?;
    if ens.paths() == 0 || ens.particles == 0 {
        return Err(SimError::EmptyEnsemble);
    }
    let k = ens.time_index(t)?;
    let mut counts = vec![0u64; edges.len() - 1];
    for sample in ens.at_time(k) {
        for &y in sample {
            if let Some(b) = bin_of(edges, y) {
                counts[b] += 1;
            }
        }
    }
    let paths = ens.paths() as f64;
    let trials = paths * ens.particles as f64;
    let (density, stderr) = counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, w)| {
            let width = w[1] - w[0];
            let c = c as f64;
            let p = c / trials;
            (c / (paths * width), (trials * p * (1.0 - p)).sqrt() / (paths * width))
        })
        .unzip();
    Ok(DensityEstimate { edges: edges.to_vec(), counts, density, stderr })
}

/// Two-point histogram ρ̂₂(x, y) at time `t`.
pub fn estimate_pair_correlation(ens: &Ensemble, t: f64, edges: &[f64]) -> Result<PairEstimate, SimError> {
    check_edges(edges)?;
    if ens.paths() == 0 || ens.particles == 0 {
        return Err(SimError::EmptyEnsemble);
    }
    let k = ens.time_index(t)?;
    let m = edges.len() - 1;
    let mut counts = vec![0u64; m * m];
    for sample in ens.at_time(k) {
        let bins: Vec<Option<usize>> = sample.iter().map(|&y| bin_of(edges, y)).collect();
        for (a, ba) in bins.iter().enumerate() {
            for (b, bb) in bins.iter().enumerate() {
                if let (true, Some(i), Some(j)) = (a != b, ba, bb) {
                    counts[i * m + j] += 1;
                }
            }
        }
    }
    let paths = ens.paths() as f64;
    let widths: Vec<f64> = edges.windows(2).map(|w| w[1] - w[0]).collect();
    let density = counts.iter().enumerate().map(|(idx, &c)| c as f64 / (paths * widths[idx / m] * widths[idx % m])).collect();
    Ok(PairEstimate { edges: edges.to_vec(), density })
}

/// Monte-Carlo mean of Π_j (1 + χ(Y_j(t))) with its standard error.
pub fn generating_functional<F: Fn(f64) -> f64>(ens: &Ensemble, t: f64, chi: F) -> Result<(f64, f64), SimError> {
    if ens.paths() == 0 {
        return Err(SimError::EmptyEnsemble);
    }
    let k = ens.time_index(t)?;
    let values: Vec<f64> = ens.at_time(k).map(|s| s.iter().map(|&y| 1.0 + chi(y)).product()).collect();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 { values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    Ok((mean, (var / n).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PointConfiguration;
    use crate::sim::{simulate, SimMethod, SimPlan};

    fn ensemble() -> Ensemble {
        let plan = SimPlan {
            initial: PointConfiguration::from_points(&[-1.0, 0.0, 1.0]).unwrap(),
            times: vec![0.5],
            paths: 4000,
            dt: None,
            method: SimMethod::Matrix,
            seed: Some(11),
        };
        simulate(&plan).unwrap()
    }

    #[test]
    fn mass_counts_particles() {
        let e = ensemble();
        let edges: Vec<f64> = (0..=80).map(|k| -10.0 + 0.25 * k as f64).collect();
        let d = estimate_correlation(&e, 0.5, &edges).unwrap();
        assert!((d.mass() - 3.0).abs() < 1e-12);
        assert!(estimate_correlation(&e, 0.7, &edges).is_err());
        assert!(estimate_correlation(&e, 0.5, &[1.0]).is_err());
    }

    #[test]
    fn pair_marginal_and_repulsion() {
        let e = ensemble();
        let edges: Vec<f64> = (0..=40).map(|k| -10.0 + 0.5 * k as f64).collect();
        let d = estimate_correlation(&e, 0.5, &edges).unwrap();
        let p = estimate_pair_correlation(&e, 0.5, &edges).unwrap();
        let m = edges.len() - 1;
        // Σ_j ρ̂₂(i, j) w_j = (N - 1) ρ̂(i) when all particles are inside
        for i in 0..m {
            let s: f64 = (0..m).map(|j| p.get(i, j) * 0.5).sum();
            assert!((s - 2.0 * d.density[i]).abs() < 1e-9);
        }
        let peak = (0..m).max_by(|&a, &b| d.density[a].total_cmp(&d.density[b])).unwrap();
        assert!(p.get(peak, peak) < 0.5 * d.density[peak].powi(2));
    }

    #[test]
    fn generating_functional_trivial() {
        let e = ensemble();
        let (m, se) = generating_functional(&e, 0.5, |_| 0.0).unwrap();
        assert_eq!((m, se), (1.0, 0.0));
    }
}
