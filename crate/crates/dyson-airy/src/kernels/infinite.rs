//! Kernels of infinite configurations: the Airy-zero start in closed
//! p_Ai form, its contour form, the relaxation remainder, and window
//! limits of finite kernels for other generators.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::airy_integrals::{AiryProjection, HalfLine};
use super::contour::line_nodes;
use super::finite::{check_times, FiniteKernel};
use super::stationary::ext_airy_kernel;
use super::transition::{g_factor, p_ai, q_c, q_kernel};
use super::KernelError;
use crate::airy::{airy, airy_zeta_tail, shared_zeros, AiryZeroTable, RealAiryTable};
use crate::config::{accelerate, check_conditions, Generator, Limit, PointConfiguration, Thresholds};

/// Above this time the p_Ai form is assembled as 𝐊_Ai + R instead of the
/// direct zero sum, whose terms grow like e^{7s³/96}.
pub const DIRECT_SUM_MAX_TIME: f64 = 3.0;

/// Gaussian half-window, in standard deviations, of the zero sums.
const WINDOW_SD: f64 = 12.0;

/// Index j with a_j just past `depth` (< 0), from the zero asymptotics.
fn zeros_past(depth: f64) -> usize {
    let d = (-depth).max(0.0);
    (0.2122 * d.powf(1.5) + 0.25).ceil() as usize + 2
}

fn slope(a: f64) -> f64 {
    RealAiryTable::global().eval(a).1
}

/// Orders of 1/a kept in the large-|a| expansion of the remainder terms.
const TAIL_ORDER: usize = 6;

/// Coefficients P_p of the expansion Σ_p P_p(h) a^{-p} of
/// ±Ai'(a)^{-1}∫ h(u) Ai(u+a) du over a half-line ending at 0, for
/// h(u) = e^{λu} Ai(u + shift), obtained by repeated integration by parts
/// against Ai'' = (u+a) Ai.
fn boundary_series(lambda: f64, shift: f64) -> [f64; TAIL_ORDER] {
    const DERIVS: usize = 2 * TAIL_ORDER - 1;
    let (ai, aip) = RealAiryTable::global().eval(shift);
    let mut g = [0.0; DERIVS];
    g[0] = ai;
    g[1] = aip;
    for k in 0..DERIVS - 2 {
        // (x Ai)^{(k)} = x Ai^{(k)} + k Ai^{(k-1)}
        g[k + 2] = shift * g[k] + if k > 0 { k as f64 * g[k - 1] } else { 0.0 };
    }
    let mut h = [0.0; DERIVS];
    for (n, hn) in h.iter_mut().enumerate() {
        let mut binom = 1.0;
        for (k, gk) in g.iter().enumerate().take(n + 1) {
            *hn += binom * lambda.powi((n - k) as i32) * gk;
            binom *= (n - k) as f64 / (k + 1) as f64;
        }
    }
    [h[0], h[2], h[4] - 2.0 * h[1], h[6] - 6.0 * h[3] + 2.0 * h[0], h[8] - 12.0 * h[5] + 20.0 * h[2], h[10] - 20.0 * h[7] + 80.0 * h[4] - 40.0 * h[1]]
}

/// Number of zeros summed explicitly in R before the asymptotic tail.
pub fn remainder_zero_count(s: f64, t: f64) -> usize {
    let top = s.max(t);
    zeros_past(-(80.0f64).max(3.0 * top * top))
}

/// Kernel of the process started from all Airy zeros.
#[derive(Debug, Clone)]
pub struct AiryRelaxationKernel {
    /// Smallest number of zeros in the direct sums.
    pub min_zeros: usize,
    /// Override of [`remainder_zero_count`].
    pub remainder_zeros: Option<usize>,
}

impl Default for AiryRelaxationKernel {
    fn default() -> Self {
        Self { min_zeros: 30, remainder_zeros: None }
    }
}

impl AiryRelaxationKernel {
    /// Shared table and the number of its zeros inside the window.
    fn window_zeros(&self, s: f64, x: f64) -> Result<(Arc<AiryZeroTable<f64>>, usize), KernelError> {
        let depth = x - s * s / 4.0 - WINDOW_SD * s.sqrt();
        let n = zeros_past(depth).max(self.min_zeros);
        Ok((shared_zeros(n)?, n))
    }

    /// 𝕂_Ai(s,x;t,y) as Σ_a p_Ai(s,x|a) Ai'(a)^{-2} ∫_0^∞ e^{-ut/2} Ai(u+y)Ai(u+a) du
    /// minus 1(s>t) p_Ai(s-t,x|y).
    pub fn real_line(&self, s: f64, x: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        check_times(s, t)?;
        let (zeros, n) = self.window_zeros(s, x)?;
        let a = &zeros.as_slice()[..n];
        let proj = AiryProjection::new(-t / 2.0, y, HalfLine::Positive, a[a.len() - 1]);
        let mut total = 0.0;
        for &al in a {
            let w = p_ai(s, x, al)?;
            if w == 0.0 {
                continue;
            }
            let d = slope(al);
            total += w * proj.project(al) / (d * d);
        }
        if s > t {
            total -= p_ai(s - t, x, y)?;
        }
        Ok(total)
    }

    /// 𝕂^{ξ_A}_A(s,x;t,y) from the contour representation
    /// Σ_a q(0,s,x-a) ∫ dv Ai(z)/((z-a)Ai'(a)) q(t,0,z-y) - 1(s>t) q(t,s,x-y)
    /// on Re z = y - t²/4. Practical for t up to about 3.
    pub fn xi_form(&self, s: f64, x: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        check_times(s, t)?;
        let (zeros, n) = self.window_zeros(s, x)?;
        let c = y - t * t / 4.0;
        let h = 0.5 * t.sqrt().clamp(0.05, 1.0);
        let nodes = line_nodes(c, h, 3.0 * t.sqrt(), |z| airy(z).ai * q_c(t, 0.0, z - y))?;
        let mut total = 0.0;
        for &a in &zeros.as_slice()[..n] {
            let weight = q_kernel(0.0, s, x - a)?;
            if weight == 0.0 {
                continue;
            }
            let d = slope(a);
            let line: f64 = nodes
                .iter()
                .map(|n| {
                    let dz = n.z - a;
                    let ratio = if dz.norm() < 1e-4 {
                        let series = Complex64::new(1.0, 0.0) + dz * dz * a / 6.0 + dz * dz * dz / 12.0;
                        series * q_c(t, 0.0, n.z - y)
                    } else {
                        n.value / (dz * d)
                    };
                    n.weight * ratio.re
                })
                .sum();
            total += weight * 2.0 * line;
        }
        if s > t {
            total -= q_kernel(t, s, x - y)?;
        }
        Ok(total)
    }

    /// R(s,x;t,y) = 𝕂_Ai(s,x;t,y) - 𝐊_Ai(t-s,y|x).
    pub fn remainder(&self, s: f64, x: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        Ok(self.remainder_grid(s, &[x], t, &[y])?[0][0])
    }

    /// R on a product grid, `out[i][j] = R(s, xs[i]; t, ys[j])`.
    ///
    /// R = Σ_ℓ c^A_ℓ(t,y) c^B_ℓ(s,x) with
    /// c^A = ∫_0^∞ e^{-ut/2}Ai(u+y)Ai(u+a_ℓ)du / Ai'(a_ℓ) and
    /// c^B = ∫_{-∞}^0 e^{ws/2}Ai(w+x)Ai(w+a_ℓ)dw / Ai'(a_ℓ).
    /// Past the explicit zeros the product is expanded in powers of 1/a,
    /// each power summed with an Airy zeta tail.
    pub fn remainder_grid(&self, s: f64, xs: &[f64], t: f64, ys: &[f64]) -> Result<Vec<Vec<f64>>, KernelError> {
        check_times(s, t)?;
        let n = self.remainder_zeros.unwrap_or_else(|| remainder_zero_count(s, t));
        let zeros = shared_zeros(n)?;
        let a = &zeros.as_slice()[..n];
        let deepest = a[n - 1];
        let slopes: Vec<f64> = a.iter().map(|&al| slope(al)).collect();
        let coefficients = |rate: f64, shift: f64, side: HalfLine| -> Vec<f64> {
            let proj = AiryProjection::new(rate, shift, side, deepest);
            a.iter().zip(&slopes).map(|(&al, &d)| proj.project(al) / d).collect()
        };
        let ca: Vec<Vec<f64>> = ys.par_iter().map(|&y| coefficients(-t / 2.0, y, HalfLine::Positive)).collect();
        let cb: Vec<Vec<f64>> = xs.par_iter().map(|&x| coefficients(s / 2.0, x, HalfLine::Negative)).collect();
        let zeta: Vec<f64> = (2..=TAIL_ORDER + 1).map(|m| airy_zeta_tail(m as f64, n)).collect();
        let pa: Vec<[f64; TAIL_ORDER]> = ys.iter().map(|&y| boundary_series(-t / 2.0, y)).collect();
        Ok(xs
            .iter()
            .zip(&cb)
            .map(|(&x, cbx)| {
                let pb = boundary_series(s / 2.0, x);
                ys.iter()
                    .zip(&ca)
                    .zip(&pa)
                    .map(|((_, cay), pa)| {
                        let head: f64 = cay.iter().zip(cbx).map(|(p, q)| p * q).sum();
                        // c^A c^B = -Σ_{p,q} P_p(A) P_q(B) a^{-(p+q)}; Σ_tail a^{-m} = (-1)^m ζ_tail(m)
                        let mut tail = 0.0;
                        for (i, pp) in pa.iter().enumerate() {
                            for (j, pq) in pb.iter().enumerate() {
                                let m = i + j + 2;
                                if m <= TAIL_ORDER + 1 {
                                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                                    tail -= pp * pq * sign * zeta[m - 2];
                                }
                            }
                        }
                        head + tail
                    })
                    .collect()
            })
            .collect())
    }

    /// 𝕂_Ai(s,x;t,y) in p_Ai form, routed by time.
    pub fn p_ai_form(&self, s: f64, x: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        check_times(s, t)?;
        if s.max(t) <= DIRECT_SUM_MAX_TIME {
            self.real_line(s, x, t, y)
        } else {
            Ok(ext_airy_kernel(t - s, y, x)? + self.remainder(s, x, t, y)?)
        }
    }

    /// 𝕂^{ξ_A}_A = g(t,y)/g(s,x) 𝕂_Ai.
    pub fn eval(&self, s: f64, x: f64, t: f64, y: f64) -> Result<f64, KernelError> {
        Ok(g_factor(t, y) / g_factor(s, x) * self.p_ai_form(s, x, t, y)?)
    }
}

/// Settings of the window ladder used for generators other than the Airy zeros.
#[derive(Debug, Clone)]
pub struct LadderOptions {
    pub thresholds: Thresholds,
    /// Index truncations n, 2n, 4n, ... up to `base_count · 2^doublings`.
    pub base_count: usize,
    pub doublings: usize,
    pub tolerance: f64,
}

impl Default for LadderOptions {
    fn default() -> Self {
        Self { thresholds: Thresholds::default(), base_count: 8, doublings: 6, tolerance: 1e-6 }
    }
}

/// 𝕂^ξ_A for a configuration with an infinite generator, prepared once.
///
/// The Airy generator goes through [`AiryRelaxationKernel::eval`]. Other
/// generators must pass the convergence conditions; their kernel is the
/// accelerated limit of finite kernels over index windows.
#[derive(Debug, Clone)]
pub enum InfiniteKernel {
    Airy(AiryRelaxationKernel),
    Ladder { windows: Vec<FiniteKernel>, tolerance: f64 },
}

impl InfiniteKernel {
    pub fn new(xi: &PointConfiguration<f64>, opts: &LadderOptions) -> Result<Self, KernelError> {
        let Some(generator) = xi.generator() else {
            return Err(KernelError::Domain("infinite kernel needs a configuration with a generator".into()));
        };
        if let Generator::Airy { .. } = generator {
            return Ok(Self::Airy(AiryRelaxationKernel::default()));
        }
        let report = check_conditions(xi, &opts.thresholds)?;
        if !report.admissible() {
            return Err(KernelError::ConditionViolation(format!(
                "drift {} / moment {} / pairing {}",
                verdict(report.drift_pass),
                verdict(report.moment_pass),
                verdict(report.pairing_pass)
            )));
        }
        let windows = (0..=opts.doublings)
            .map(|k| {
                let l = generator.ladder(opts.base_count << k)?;
                FiniteKernel::new(&xi.window(l)?.without_generator())
            })
            .collect::<Result<Vec<_>, KernelError>>()?;
        Ok(Self::Ladder { windows, tolerance: opts.tolerance })
    }

    pub fn eval(&self, s: f64, x: f64, t: f64, y: f64) -> Result<Limit, KernelError> {
        check_times(s, t)?;
        match self {
            Self::Airy(k) => Ok(Limit::Converged { value: k.eval(s, x, t, y)?, rate: 0.0 }),
            Self::Ladder { windows, tolerance } => {
                let seq = windows.iter().map(|w| w.eval(s, x, t, y)).collect::<Result<Vec<_>, _>>()?;
                match accelerate(&seq, *tolerance) {
                    lim @ Limit::Converged { .. } => Ok(lim),
                    other => {
                        Err(KernelError::NonConvergent { what: "window ladder".into(), detail: format!("{other:?} after {} windows", seq.len()) })
                    }
                }
            }
        }
    }
}

/// One-shot [`InfiniteKernel`] evaluation.
pub fn kernel_infinite(xi: &PointConfiguration<f64>, s: f64, x: f64, t: f64, y: f64, opts: &LadderOptions) -> Result<Limit, KernelError> {
    InfiniteKernel::new(xi, opts)?.eval(s, x, t, y)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn real_line_oracle() {
        let k = AiryRelaxationKernel::default();
        assert_relative_eq!(k.real_line(1.0, 0.0, 1.0, 0.0).unwrap(), 0.006_430_902_177_188, max_relative = 1e-9);
    }

    #[test]
    fn stable_under_more_zeros() {
        let base = AiryRelaxationKernel::default().real_line(1.0, 0.0, 1.0, 0.0).unwrap();
        let more = AiryRelaxationKernel { min_zeros: 100, ..Default::default() }.real_line(1.0, 0.0, 1.0, 0.0).unwrap();
        assert!((base - more).abs() < 1e-12 * base.abs().max(1e-3));
    }

    #[test]
    fn contour_form_is_gauge_equivalent() {
        let k = AiryRelaxationKernel::default();
        for &(s, x, t, y) in &[(1.0, 0.0, 1.0, 0.0), (0.5, -1.0, 1.2, 0.4), (1.5, 0.3, 0.7, -2.0)] {
            let xi = k.xi_form(s, x, t, y).unwrap();
            let pf = k.real_line(s, x, t, y).unwrap();
            assert_relative_eq!(xi * g_factor(s, x) / g_factor(t, y), pf, epsilon = 1e-9, max_relative = 1e-8);
        }
    }

    #[test]
    fn remainder_closes_the_decomposition() {
        let k = AiryRelaxationKernel::default();
        for &(s, x, t, y) in &[(2.0, 0.5, 2.5, -1.0), (2.8, -1.5, 2.2, 0.0)] {
            let direct = k.real_line(s, x, t, y).unwrap();
            let split = ext_airy_kernel(t - s, y, x).unwrap() + k.remainder(s, x, t, y).unwrap();
            assert!((direct - split).abs() < 1e-10, "({s},{x},{t},{y}): {direct} vs {split}");
        }
    }

    #[test]
    fn remainder_tail_is_converged() {
        let k = AiryRelaxationKernel::default();
        let r = k.remainder(4.0, 0.5, 4.5, -0.5).unwrap();
        let n = remainder_zero_count(4.0, 4.5);
        let doubled = AiryRelaxationKernel { remainder_zeros: Some(2 * n), ..Default::default() }.remainder(4.0, 0.5, 4.5, -0.5).unwrap();
        assert!((r - doubled).abs() < 1e-10, "{r} vs {doubled}");
    }

    #[test]
    fn integers_fail_conditions() {
        let z = PointConfiguration::builtin(Generator::Integers { n: 10 }).unwrap();
        let err = kernel_infinite(&z, 1.0, 0.0, 1.0, 0.0, &LadderOptions::default()).unwrap_err();
        assert!(matches!(err, KernelError::ConditionViolation(_)));
    }
}
