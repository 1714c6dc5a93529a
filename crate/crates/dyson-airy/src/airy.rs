//! Airy function and derivative on the complex plane, its zeros, the
//! log-derivative constants at the origin and zeta sums over the zeros.
//!
//! Evaluation regions:
//! * `|z| <= 2.5`: Maclaurin series.
//! * `2.5 < |z| < 8`, `|arg z| <= 2π/3`: Bessel-K integral on a rotated ray.
//! * `|z| >= 8`, `|arg z| <= 2π/3`: asymptotic expansion.
//! * `|arg z| > 2π/3`: connection formula onto the two rotated arguments.

use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex;
use thiserror::Error;

use crate::quadrature::GaussLegendre;
use crate::scalar::{is_finite, polar, ComplexValue, Real};
use crate::special::gamma;

/// Largest modulus inside the documented accuracy envelope.
pub const MAX_MODULUS: f64 = 1e4;

const SERIES_RADIUS: f64 = 2.5;
const ASYMPTOTIC_RADIUS: f64 = 8.0;
// Ai(0) and -Ai'(0)
const AI0: f64 = 0.355_028_053_887_817_24;
const AIP0: f64 = 0.258_819_403_792_806_8;
const GAMMA_5_6: f64 = 1.128_787_029_908_125_9;
const GAMMA_7_6: f64 = 0.927_719_333_630_039_2;
const RAY_END: f64 = 2.3;
const RAY_PANELS: usize = 4;
const RAY_ORDER: usize = 24;

/// Failures of the public Airy operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AiryError {
    #[error("|z| = {modulus} is outside the supported range |z| <= 1e4")]
    OutOfRange { modulus: f64 },
    #[error("Airy value at z = {re}{im:+}i overflows the floating-point range")]
    Overflow { re: f64, im: f64 },
    #[error("Airy value at z = {re}{im:+}i underflows the floating-point range")]
    Underflow { re: f64, im: f64 },
    #[error("zero search failed to converge for index {index}")]
    ZeroNotConverged { index: usize },
    #[error("zero table needs at least one zero")]
    EmptyTable,
    #[error("zeta sum diverges for exponent {alpha} <= 3/2")]
    ZetaDivergent { alpha: f64 },
}

/// Ai and Ai' at the same point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair<T> {
    pub ai: Complex<T>,
    pub ai_prime: Complex<T>,
}

/// Ai and Ai' without range checks. Results may be zero or infinite when
/// the true value leaves the floating-point range.
pub fn airy<T: Real>(z: Complex<T>) -> AiryPair<T> {
    let r = z.norm();
    if r <= T::lit(SERIES_RADIUS) {
        return maclaurin(z);
    }
    let theta = z.im.atan2(z.re);
    let sector = T::lit(2.0) * T::FRAC_PI_3();
    if theta.abs() <= sector {
        return in_sector(r, theta);
    }
    // Ai(z) = -ω̄ Ai(ω̄ z) - ω Ai(ω z), ω = e^{2πi/3}
    let two_pi = T::lit(2.0) * T::PI();
    let (arg_minus, arg_plus) = if theta > T::zero() { (theta - sector, theta + sector - two_pi) } else { (theta - sector + two_pi, theta + sector) };
    let lo = in_sector(r, arg_minus);
    let hi = in_sector(r, arg_plus);
    let w = polar(T::one(), sector);
    let wb = w.conj();
    AiryPair { ai: -(wb * lo.ai) - w * hi.ai, ai_prime: -(wb * wb * lo.ai_prime) - w * w * hi.ai_prime }
}

/// Ai and Ai' on the real line.
pub fn airy_real<T: Real>(x: T) -> (T, T) {
    let p = airy(Complex::new(x, T::zero()));
    (p.ai.re, p.ai_prime.re)
}

/// Ai(x) on the real line.
pub fn ai_real<T: Real>(x: T) -> T {
    airy_real(x).0
}

/// Stationary Airy density Ai'(x)² - x·Ai(x)².
pub fn airy_density<T: Real>(x: T) -> T {
    let (a, d) = airy_real(x);
    d * d - x * a * a
}

fn check<T: Real>(z: Complex<T>, v: Complex<T>) -> Result<Complex<T>, AiryError> {
    let (re, im) = (z.re.to_f64_lossy(), z.im.to_f64_lossy());
    if !is_finite(v) {
        return Err(AiryError::Overflow { re, im });
    }
    if v.norm() < T::min_positive_value() {
        return Err(AiryError::Underflow { re, im });
    }
    Ok(v)
}

fn check_range<T: Real>(z: Complex<T>) -> Result<(), AiryError> {
    let modulus = z.norm().to_f64_lossy();
    if !(modulus <= MAX_MODULUS) {
        return Err(AiryError::OutOfRange { modulus });
    }
    Ok(())
}

/// Ai(z) with range and overflow checks.
pub fn ai<T: Real>(z: ComplexValue<T>) -> Result<ComplexValue<T>, AiryError> {
    check_range(z)?;
    check(z, airy(z).ai)
}

/// Ai'(z) with range and overflow checks.
pub fn ai_prime<T: Real>(z: ComplexValue<T>) -> Result<ComplexValue<T>, AiryError> {
    check_range(z)?;
    check(z, airy(z).ai_prime)
}

fn maclaurin<T: Real>(z: Complex<T>) -> AiryPair<T> {
    let one = Complex::new(T::one(), T::zero());
    let z2 = z * z;
    let z3 = z2 * z;
    let (mut f, mut fp) = (one, Complex::new(T::zero(), T::zero()));
    let (mut g, mut gp) = (z, one);
    let (mut cf, mut cg) = (T::one(), T::one());
    let mut p = one;
    let tiny = T::epsilon() * T::lit(0.01);
    for k in 1..200 {
        let kf = T::lit(k as f64);
        let three_k = T::lit(3.0) * kf;
        cf = cf / ((three_k - T::one()) * three_k);
        cg = cg / (three_k * (three_k + T::one()));
        let pm1 = p * z2;
        p = p * z3;
        let tf = p * cf;
        let tg = p * z * cg;
        f = f + tf;
        fp = fp + pm1 * (cf * three_k);
        g = g + tg;
        gp = gp + p * (cg * (three_k + T::one()));
        if tf.norm() <= tiny * f.norm() && tg.norm() <= tiny * g.norm().max(T::one()) {
            break;
        }
    }
    let c1 = T::lit(AI0);
    let c2 = T::lit(AIP0);
    AiryPair { ai: f * c1 - g * c2, ai_prime: fp * c1 - gp * c2 }
}

/// Evaluation for `|arg z| <= 2π/3` given in polar form, so the branch of
/// z^{1/2}, z^{1/4}, ζ = (2/3) z^{3/2} follows `theta` exactly.
fn in_sector<T: Real>(r: T, theta: T) -> AiryPair<T> {
    if r >= T::lit(ASYMPTOTIC_RADIUS) {
        asymptotic(r, theta)
    } else {
        rotated_ray(r, theta)
    }
}

fn asymptotic<T: Real>(r: T, theta: T) -> AiryPair<T> {
    let three_half = T::lit(1.5);
    let zeta = polar(T::lit(2.0 / 3.0) * r.powf(three_half), three_half * theta);
    let inv = zeta.inv();
    let one = Complex::new(T::one(), T::zero());
    let (mut su, mut sv) = (one, one);
    let mut u = T::one();
    let mut power = one;
    let mut last = T::infinity();
    for k in 1..60 {
        let kf = T::lit(k as f64);
        let six_k = T::lit(6.0) * kf;
        u = u * (six_k - T::lit(5.0)) * (six_k - T::lit(3.0)) * (six_k - T::one()) / ((T::lit(2.0) * kf - T::one()) * T::lit(216.0) * kf);
        let v = -(six_k + T::one()) / (six_k - T::one()) * u;
        power = -(power * inv);
        let tu = power * u;
        let size = tu.norm();
        if size > last {
            break;
        }
        su = su + tu;
        sv = sv + power * v;
        last = size;
        if size < T::epsilon() * T::lit(0.01) {
            break;
        }
    }
    let quarter = polar(r.powf(T::lit(0.25)), T::lit(0.25) * theta);
    let e = (-zeta).exp();
    let norm = T::lit(0.5) / T::PI().sqrt();
    AiryPair { ai: e * su * norm / quarter, ai_prime: -(e * sv * quarter * norm) }
}

/// Ai = π^{-1} (z/3)^{1/2} K_{1/3}(ζ), Ai' = -π^{-1} z/√3 K_{2/3}(ζ), with
/// K_ν(ζ) = √π e^{-ζ} (2ζ)^{-1/2} / Γ(ν+½) ∫_0^∞ e^{-τ} τ^{ν-½} (1+τ/2ζ)^{ν-½} dτ.
/// The τ-integral runs along arg τ = arg(ζ)/4 with τ = s⁶ e^{iφ}.
fn rotated_ray<T: Real>(r: T, theta: T) -> AiryPair<T> {
    let zeta_arg = T::lit(1.5) * theta;
    let zeta = polar(T::lit(2.0 / 3.0) * r.powf(T::lit(1.5)), zeta_arg);
    let phi = T::lit(0.25) * zeta_arg;
    let rot = polar(T::one(), phi);
    let sixth = T::lit(1.0 / 6.0);
    let rot_lo = polar(T::one(), phi * (T::one() - sixth));
    let rot_hi = polar(T::one(), phi * (T::one() + sixth));
    let half_inv_zeta = (zeta * T::lit(2.0)).inv();
    let rule = GaussLegendre::cached(RAY_ORDER);
    let zero = Complex::new(T::zero(), T::zero());
    let (mut i1, mut i2) = (zero, zero);
    let h = T::lit(RAY_END / RAY_PANELS as f64);
    for p in 0..RAY_PANELS {
        let lo = h * T::lit(p as f64);
        let mid = lo + h * T::lit(0.5);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let s = mid + h * T::lit(0.5 * x);
            let wt = h * T::lit(0.5 * w);
            let s2 = s * s;
            let s4 = s2 * s2;
            let tau = s4 * s2;
            let t = rot * tau;
            let decay = (-t).exp();
            let ratio = Complex::new(T::one(), T::zero()) + t * half_inv_zeta;
            i1 = i1 + decay * ratio.powf(-sixth) * (T::lit(6.0) * s4 * wt);
            i2 = i2 + decay * ratio.powf(sixth) * (T::lit(6.0) * s4 * s2 * wt);
        }
    }
    i1 = i1 * rot_lo;
    i2 = i2 * rot_hi;
    let sqrt_two_zeta = polar((T::lit(2.0) * zeta.norm()).sqrt(), T::lit(0.5) * zeta_arg);
    let pref = (-zeta).exp() * T::PI().sqrt() / sqrt_two_zeta;
    let k13 = pref * i1 / T::lit(GAMMA_5_6);
    let k23 = pref * i2 / T::lit(GAMMA_7_6);
    let sqrt_z3 = polar((r / T::lit(3.0)).sqrt(), T::lit(0.5) * theta);
    let z = polar(r, theta);
    AiryPair { ai: sqrt_z3 * k13 / T::PI(), ai_prime: -(z * k23) / (T::lit(3.0).sqrt() * T::PI()) }
}

/// The zeros 0 > a_1 > a_2 > … of Ai, in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct AiryZeroTable<T> {
    zeros: Vec<T>,
}

impl<T: Real> AiryZeroTable<T> {
    /// Wraps already-computed zeros; they must be negative and strictly decreasing.
    pub fn from_zeros(zeros: Vec<T>) -> Result<Self, AiryError> {
        if zeros.is_empty() {
            return Err(AiryError::EmptyTable);
        }
        Ok(Self { zeros })
    }

    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    /// The j-th zero, 1-based.
    pub fn get(&self, j: usize) -> Option<T> {
        j.checked_sub(1).and_then(|i| self.zeros.get(i).copied())
    }

    pub fn as_slice(&self) -> &[T] {
        &self.zeros
    }

    /// First `n` zeros (or all of them, if fewer).
    pub fn first(&self, n: usize) -> &[T] {
        &self.zeros[..n.min(self.zeros.len())]
    }
}

/// Seed -(3π(4j-1)/8)^{2/3} for the j-th zero.
pub fn zero_seed<T: Real>(j: usize) -> T {
    let t = T::lit(3.0) * T::PI() * T::lit(4.0 * j as f64 - 1.0) / T::lit(8.0);
    -t.powf(T::lit(2.0 / 3.0))
}

/// Higher-order asymptotic location of the j-th zero, used for tail sums.
pub fn asymptotic_zero(j: f64) -> f64 {
    let t = 3.0 * std::f64::consts::PI * (4.0 * j - 1.0) / 8.0;
    -asymptotic_zero_modulus(t)
}

fn asymptotic_zero_modulus(t: f64) -> f64 {
    let w = 1.0 / (t * t);
    t.powf(2.0 / 3.0) * (1.0 + w * (5.0 / 48.0 + w * (-5.0 / 36.0 + w * (77_125.0 / 82_944.0))))
}

/// Locates zero j by Newton from the analytic seed, falling back to
/// bisection between the midpoints of neighbouring seeds.
fn locate_zero<T: Real>(j: usize) -> Result<T, AiryError> {
    let seed = zero_seed::<T>(j);
    let upper = if j == 1 { T::zero() } else { T::lit(0.5) * (seed + zero_seed::<T>(j - 1)) };
    let lower = T::lit(0.5) * (seed + zero_seed::<T>(j + 1));
    let tol = T::epsilon() * T::lit(4.0) * seed.abs().max(T::one());
    let mut x = seed;
    for _ in 0..50 {
        let (a, d) = airy_real(x);
        if d == T::zero() {
            break;
        }
        let step = a / d;
        x = x - step;
        if !(x > lower && x < upper) {
            break;
        }
        if step.abs() <= tol {
            // one polishing step
            let (a, d) = airy_real(x);
            return Ok(x - a / d);
        }
    }
    bisect_zero(j, lower, upper)
}

fn bisect_zero<T: Real>(j: usize, mut lo: T, mut hi: T) -> Result<T, AiryError> {
    let mut f_lo = ai_real(lo);
    let f_hi = ai_real(hi);
    if f_lo.signum() == f_hi.signum() {
        return Err(AiryError::ZeroNotConverged { index: j });
    }
    for _ in 0..200 {
        let mid = T::lit(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = ai_real(mid);
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(T::lit(0.5) * (lo + hi))
}

/// First `n` zeros of Ai.
pub fn airy_zeros<T: Real>(n: usize) -> Result<AiryZeroTable<T>, AiryError> {
    if n == 0 {
        return Err(AiryError::EmptyTable);
    }
    let zeros = (1..=n).map(locate_zero::<T>).collect::<Result<Vec<_>, _>>()?;
    Ok(AiryZeroTable { zeros })
}

/// Process-wide table holding at least `n` double-precision zeros.
///
/// Zeros are computed independently of each other, so the values do not
/// depend on the order in which the table was grown.
pub fn shared_zeros(n: usize) -> Result<Arc<AiryZeroTable<f64>>, AiryError> {
    static TABLE: OnceLock<RwLock<Option<Arc<AiryZeroTable<f64>>>>> = OnceLock::new();
    let lock = TABLE.get_or_init(|| RwLock::new(None));
    if let Some(t) = lock.read().unwrap_or_else(|e| e.into_inner()).as_ref() {
        if t.count() >= n {
            return Ok(t.clone());
        }
    }
    let mut guard = lock.write().unwrap_or_else(|e| e.into_inner());
    let mut zeros = guard.as_ref().map(|t| t.zeros.clone()).unwrap_or_default();
    if zeros.len() >= n.max(1) {
        return Ok(guard.as_ref().cloned().expect("table present"));
    }
    let target = n.max(2 * zeros.len()).max(64);
    for j in zeros.len() + 1..=target {
        zeros.push(locate_zero::<f64>(j)?);
    }
    let table = Arc::new(AiryZeroTable { zeros });
    *guard = Some(table.clone());
    Ok(table)
}

/// d0 = log Ai(0) and d1 = Ai'(0)/Ai(0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryConstants<T> {
    pub d0: T,
    pub d1: T,
}

/// Constants from the gamma-function closed forms.
pub fn airy_constants<T: Real>() -> AiryConstants<T> {
    let three = T::lit(3.0);
    let g23 = gamma(T::lit(2.0) / three);
    let g13 = gamma(T::one() / three);
    let d0 = -(three.powf(T::lit(2.0) / three) * g23).ln();
    let d1 = -three.powf(T::one() / three) * g23 / g13;
    AiryConstants { d0, d1 }
}

/// Second closed form of d1, -3^{5/6} Γ(2/3)² / (2π).
pub fn d1_alternative<T: Real>() -> T {
    let g23 = gamma(T::lit(2.0 / 3.0));
    -T::lit(3.0).powf(T::lit(5.0 / 6.0)) * g23 * g23 / (T::lit(2.0) * T::PI())
}

/// Σ_j |a_j|^{-α} with the tail beyond the explicit terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaSum<T> {
    pub value: T,
    /// Sum over the explicitly computed zeros.
    pub partial: T,
    /// Euler–Maclaurin tail over the asymptotic zeros.
    pub tail: T,
    pub terms: usize,
}

/// Airy zeta function ζ(α) = Σ_j |a_j|^{-α}, α > 3/2.
pub fn airy_zeta<T: Real>(alpha: T, n_terms: usize) -> Result<ZetaSum<T>, AiryError> {
    let table = airy_zeros::<T>(n_terms)?;
    airy_zeta_with(&table, alpha)
}

/// Zeta sum using a precomputed zero table for the explicit terms.
pub fn airy_zeta_with<T: Real>(table: &AiryZeroTable<T>, alpha: T) -> Result<ZetaSum<T>, AiryError> {
    let a = alpha.to_f64_lossy();
    if !(a > 1.5) {
        return Err(AiryError::ZetaDivergent { alpha: a });
    }
    // sum smallest terms first
    let partial = table.as_slice().iter().rev().fold(T::zero(), |acc, &z| acc + z.abs().powf(-alpha));
    let tail = T::lit(airy_zeta_tail(a, table.count()));
    Ok(ZetaSum { value: partial + tail, partial, tail, terms: table.count() })
}

/// Σ_{j>n} |a_j|^{-α} over the asymptotic zero locations.
///
/// Terms up to index 1000 are summed directly; the remainder uses
/// Euler–Maclaurin with the integral taken in logarithmic index.
pub fn airy_zeta_tail(alpha: f64, n: usize) -> f64 {
    let f = |j: f64| asymptotic_zero(j).abs().powf(-alpha);
    let m = n.max(1000);
    let mut direct = 0.0;
    for j in (n + 1..=m).rev() {
        direct += f(j as f64);
    }
    let mf = m as f64;
    let decay = 2.0 * alpha / 3.0 - 1.0;
    let span = (45.0 / decay).min(200.0);
    let integral: f64 = crate::quadrature::composite(0.0, span, 64, 20, |u| {
        let j = mf * u.exp();
        f(j) * j
    });
    let far = mf * span.exp();
    let p = 2.0 * alpha / 3.0;
    let remainder = f(far) * far / (p - 1.0);
    let h = mf / 20.0;
    let d1 = (f(mf + h) - f(mf - h)) / (2.0 * h);
    let d3 = (f(mf + 2.0 * h) - 2.0 * f(mf + h) + 2.0 * f(mf - h) - f(mf - 2.0 * h)) / (2.0 * h * h * h);
    direct + integral + remainder - 0.5 * f(mf) - d1 / 12.0 + d3 / 720.0
}

/// Anchor spacing of the real-axis table.
const TABLE_STEP: f64 = 0.25;
const TABLE_LO: f64 = -1024.0;
const TABLE_HI: f64 = 40.0;

/// Fast real-axis Ai and Ai' from Taylor expansions around tabulated
/// anchors, using the recursion of the Airy equation y'' = x y.
///
/// Outside the tabulated range the direct evaluator is used.
#[derive(Debug)]
pub struct RealAiryTable {
    values: Vec<(f64, f64)>,
}

impl RealAiryTable {
    fn build() -> Self {
        let n = ((TABLE_HI - TABLE_LO) / TABLE_STEP).round() as usize + 1;
        let values = (0..n).map(|k| airy_real(TABLE_LO + TABLE_STEP * k as f64)).collect();
        Self { values }
    }

    /// Shared process-wide table.
    pub fn global() -> &'static RealAiryTable {
        static TABLE: OnceLock<RealAiryTable> = OnceLock::new();
        TABLE.get_or_init(Self::build)
    }

    /// (Ai(x), Ai'(x)).
    pub fn eval(&self, x: f64) -> (f64, f64) {
        if !(TABLE_LO..=TABLE_HI).contains(&x) {
            return airy_real(x);
        }
        let k = ((x - TABLE_LO) / TABLE_STEP).round() as usize;
        let k = k.min(self.values.len() - 1);
        let x0 = TABLE_LO + TABLE_STEP * k as f64;
        let h = x - x0;
        if h == 0.0 {
            return self.values[k];
        }
        let (f0, d0) = self.values[k];
        // Taylor coefficients c_n of Ai around x0, scaled by h^n:
        // c_{n+2} = (x0 c_n + c_{n-1}) / ((n+1)(n+2))
        let (mut cm1, mut c0, mut c1) = (0.0, f0, d0 * h);
        let h2 = h * h;
        let h3 = h2 * h;
        let mut value = c0 + c1;
        let mut deriv = d0;
        let scale = f0.abs() + d0.abs() * h.abs() + f64::MIN_POSITIVE;
        for n in 0..80 {
            let nf = n as f64;
            let c2 = (x0 * c0 * h2 + cm1 * h3) / ((nf + 1.0) * (nf + 2.0));
            value += c2;
            deriv += (nf + 2.0) * c2 / h;
            if c2.abs() < 1e-18 * scale && c1.abs() < 1e-18 * scale && n > 2 {
                break;
            }
            cm1 = c0;
            c0 = c1;
            c1 = c2;
        }
        (value, deriv)
    }

    /// Ai(x) only.
    pub fn ai(&self, x: f64) -> f64 {
        self.eval(x).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn real_table_matches_direct() {
        let table = RealAiryTable::global();
        let mut x = -1030.0;
        while x < 45.0 {
            let (a, ap) = airy_real(x);
            let (b, bp) = table.eval(x);
            let w = (1.0 + x.abs()).sqrt();
            // the oscillation phase (2/3)|x|^{3/2} limits absolute accuracy far left
            let phase = 1.0 + x.abs().powf(1.5) / 1000.0;
            let scale = phase * if x < 0.0 { (a * a + ap * ap / w / w).sqrt() } else { a.abs() };
            assert!((a - b).abs() <= 2e-13 * scale, "x = {x}: {a} vs {b}");
            assert!((ap - bp).abs() <= 2e-13 * scale * w, "x = {x}: {ap} vs {bp}");
            x += 0.0731;
        }
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    // mpmath.airyai / airyai(z, 1) at 30 digits
    const REFERENCE: &[(f64, f64, f64, f64, f64, f64)] = &[
        (0.0, 0.0, 0.355_028_053_887_817_24, 0.0, -0.258_819_403_792_806_8, 0.0),
        (1.0, 0.0, 0.135_292_416_312_881_42, 0.0, -0.159_147_441_296_793_21, 0.0),
        (-5.0, 0.0, 0.350_761_009_024_114_32, 0.0, 0.327_192_818_554_443_14, 0.0),
        (10.0, 0.0, 1.104_753_255_289_868_6e-10, 0.0, -3.520_633_676_738_923_6e-10, 0.0),
        (-30.0, 0.0, -0.087_968_188_456_842_163, 0.0, 1.228_620_602_637_485_1, 0.0),
        (3.0, 4.0, 0.014_554_546_690_944_635, -0.047_435_251_515_492_836, -0.075_209_961_195_903_029, 0.082_364_077_155_537_795),
        (-4.0, 6.0, 50_174.266_597_102_904, 42_686.151_411_319_713, 37_220.589_151_096_685, -170_532.182_749_400_3),
        (-2.0, -1.5, 1.335_830_819_508_179_5, -1.495_525_435_827_565_3, 1.687_859_682_235_592_6, 2.480_620_807_205_408_3),
        (0.3, -2.4, -0.697_194_804_424_720_73, 0.631_230_099_371_552_27, 0.250_574_117_406_423_41, -1.400_922_462_152_878_6),
        (-7.5, -0.2, 0.371_304_542_382_033_2, -0.066_542_959_445_786_444, 0.360_744_512_907_756_98, 0.508_046_707_151_522_41),
        (15.0, 15.0, -1.524_280_074_378_856_6e-12, 1.238_985_412_676_085_8e-12, 8.672_380_567_053_098_9e-12, -2.608_439_737_350_856_9e-12),
        (-60.0, 0.0, 0.077_787_824_477_115_584, 0.0, 1.450_345_595_864_224_4, 0.0),
        (2.0, -7.0, 19.104_409_808_707_74, -0.564_154_510_820_261_12, -40.455_959_268_872_674, 31.631_376_412_290_452),
    ];

    #[test]
    fn reference_values() {
        for &(x, y, ar, ai_im, dr, di) in REFERENCE {
            let p = airy(c(x, y));
            let a = c(ar, ai_im);
            let d = c(dr, di);
            assert!((p.ai - a).norm() <= 1e-12 * a.norm().max(1e-300), "Ai({x},{y}) = {:?}", p.ai);
            assert!((p.ai_prime - d).norm() <= 1e-12 * d.norm().max(1e-300), "Ai'({x},{y}) = {:?}", p.ai_prime);
        }
    }

    #[test]
    fn origin_constants() {
        let a = ai(c(0.0, 0.0)).unwrap();
        assert_relative_eq!(a.re, 0.355_028_05, epsilon = 1e-8);
        let d = ai_prime(c(0.0, 0.0)).unwrap();
        assert_relative_eq!(d.re, -0.258_819_40, epsilon = 1e-8);
    }

    #[test]
    fn real_axis_asymptotics() {
        let x = 10.0_f64;
        let zeta = (2.0 / 3.0) * x.powf(1.5);
        let leading = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt() * x.powf(0.25));
        let ratio = ai_real(x) / leading;
        // leading order is off by 5/(72ζ) ≈ 3.3e-3 at x = 10
        assert!((ratio - 1.0).abs() < 5e-3);
        assert!((ratio - (1.0 - 5.0 / (72.0 * zeta))).abs() < 1e-4);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        for &z in &[c(1.0, 0.0), c(-3.0, 1.0), c(4.0, -5.0), c(-9.0, 0.5)] {
            let fd = (airy(z + h).ai - airy(z - h).ai) / (2.0 * h);
            assert!((fd - airy(z).ai_prime).norm() < 1e-6 * (1.0 + fd.norm()));
        }
    }

    #[test]
    fn airy_equation_on_grid() {
        let h = 1e-3;
        for i in -5..=5 {
            for k in -5..=5 {
                let z = c(i as f64, k as f64);
                let p = airy(z);
                let d = |dz: f64| airy(z + dz).ai_prime;
                let second = (d(-2.0 * h) - d(2.0 * h) + (d(h) - d(-h)) * 8.0) / (12.0 * h);
                let scale = 1.0 + (z * p.ai).norm();
                assert!((second - z * p.ai).norm() < 1e-8 * scale, "z = {z}");
            }
        }
    }

    #[test]
    fn continuity_across_region_boundaries() {
        for k in 0..72 {
            let th = k as f64 * std::f64::consts::PI / 36.0;
            for &r in &[SERIES_RADIUS, ASYMPTOTIC_RADIUS] {
                let inner = airy(Complex::from_polar(r * (1.0 - 1e-12), th));
                let outer = airy(Complex::from_polar(r * (1.0 + 1e-12), th));
                let scale = inner.ai.norm() + r * inner.ai_prime.norm();
                assert!((inner.ai - outer.ai).norm() < 1e-10 * scale, "r = {r}, θ = {th}");
            }
        }
    }

    #[test]
    fn first_zeros() {
        let t = airy_zeros::<f64>(10).unwrap();
        let expect = [-2.33, -4.08, -5.52, -6.78];
        for (j, e) in expect.iter().enumerate() {
            assert!((t.as_slice()[j] - e).abs() < 0.005 + 0.005, "a_{}", j + 1);
        }
        assert_relative_eq!(t.get(10).unwrap(), -12.828_776_752_865_757, epsilon = 1e-12);
        for w in t.as_slice().windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn zeros_vanish_and_follow_asymptotics() {
        let t = shared_zeros(10_000).unwrap();
        for &a in t.first(1000) {
            assert!(ai_real(a).abs() < 1e-12);
        }
        let j = 10_000.0;
        let leading = -(1.5 * std::f64::consts::PI * j).powf(2.0 / 3.0);
        assert_relative_eq!(t.get(10_000).unwrap() / leading, 1.0, epsilon = 1e-3);
    }

    #[test]
    fn seeds_converge_toward_zeros() {
        let t = airy_zeros::<f64>(40).unwrap();
        let gaps: Vec<f64> = (1..=40).map(|j| (t.get(j).unwrap() - zero_seed::<f64>(j)).abs()).collect();
        for w in gaps.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn constants_agree() {
        let k = airy_constants::<f64>();
        assert_relative_eq!(k.d1, -0.729_011_132_947_227_2, epsilon = 1e-14);
        assert!((k.d1 - d1_alternative::<f64>()).abs() < 1e-12);
        assert_relative_eq!(k.d0, AI0.ln(), epsilon = 1e-14);
        let ratio = airy(c(0.0, 0.0)).ai_prime.re / airy(c(0.0, 0.0)).ai.re;
        assert!((ratio - k.d1).abs() < 1e-10);
    }

    #[test]
    fn zeta_two_is_d1_squared() {
        let z = airy_zeta(2.0_f64, 10_000).unwrap();
        let d1 = airy_constants::<f64>().d1;
        assert!((z.value - d1 * d1).abs() < 1e-8, "{z:?}");
        assert!(z.tail > 0.0 && z.tail < 0.02);
    }

    #[test]
    fn zeta_four_stable_under_doubling() {
        let a = airy_zeta(4.0_f64, 1000).unwrap().value;
        let b = airy_zeta(4.0_f64, 2000).unwrap().value;
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn zeta_rejects_small_exponent() {
        assert!(matches!(airy_zeta(1.2_f64, 10), Err(AiryError::ZetaDivergent { .. })));
    }

    #[test]
    fn range_errors() {
        assert!(matches!(ai(c(2e4, 0.0)), Err(AiryError::OutOfRange { .. })));
        assert!(matches!(ai(c(-200.0, 150.0)), Err(AiryError::Overflow { .. })));
        assert!(matches!(ai(c(9000.0, 0.0)), Err(AiryError::Underflow { .. })));
    }

    #[test]
    fn density_asymptotics() {
        let rho = airy_density(-100.0_f64);
        let ratio = rho / (10.0 / std::f64::consts::PI);
        assert!((0.98..=1.02).contains(&ratio));
    }

    #[test]
    fn single_precision_agrees() {
        for &x in &[-7.0_f32, -1.0, 0.5, 3.0, 9.0] {
            let a32 = ai_real(x) as f64;
            let a64 = ai_real(x as f64);
            assert!((a32 - a64).abs() <= 1e-5 * a64.abs().max(1e-3));
        }
        let t = airy_zeros::<f32>(3).unwrap();
        assert!((t.get(1).unwrap() + 2.338_107_4).abs() < 1e-5);
    }
}
