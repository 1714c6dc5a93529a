//! Weierstrass canonical products over point configurations, their centered
//! and Airy-drift-corrected forms, and the partial Airy products Ai_N.

use num_complex::Complex;
use thiserror::Error;

use crate::airy::{airy, airy_constants, airy_zeta_tail, shared_zeros, AiryError};
use crate::config::{Atom, PointConfiguration, MERGE_TOLERANCE};
use crate::scalar::{ComplexValue, Real};

#[derive(Debug, Error)]
pub enum ProductError {
    #[error("genus {0} is not supported (only 0 and 1)")]
    UnsupportedGenus(u32),
    #[error("evaluation point {re}{im:+}i coincides with the center")]
    Pole { re: f64, im: f64 },
    #[error("center {a} is not an atom of the configuration")]
    CenterNotAtom { a: f64 },
    #[error("growth bound violated on validation grid: need C >= {needed}, calibrated {calibrated}")]
    CalibrationFailure { needed: f64, calibrated: f64 },
    #[error("tail expansion needs |z| < {radius}")]
    OutsideTailRadius { radius: f64 },
    #[error(transparent)]
    Airy(#[from] AiryError),
}

/// Genus of a primary factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Genus {
    Zero,
    One,
}

impl TryFrom<u32> for Genus {
    type Error = ProductError;
    fn try_from(p: u32) -> Result<Self, Self::Error> {
        match p {
            0 => Ok(Genus::Zero),
            1 => Ok(Genus::One),
            other => Err(ProductError::UnsupportedGenus(other)),
        }
    }
}

/// G(u, 0) = 1 - u, G(u, 1) = (1 - u) e^u.
pub fn primary_factor<T: Real>(u: ComplexValue<T>, p: Genus) -> ComplexValue<T> {
    let one = Complex::new(T::one(), T::zero());
    match p {
        Genus::Zero => one - u,
        Genus::One => (one - u) * u.exp(),
    }
}

/// Running product kept as a sum of principal logs.
#[derive(Debug, Clone, Copy)]
struct LogProduct<T> {
    log: Complex<T>,
    vanished: bool,
}

impl<T: Real> LogProduct<T> {
    fn new() -> Self {
        Self { log: Complex::new(T::zero(), T::zero()), vanished: false }
    }

    fn push_log(&mut self, l: Complex<T>) {
        self.log = self.log + l;
    }

    /// Multiplies by `f^mult`.
    fn push(&mut self, f: Complex<T>, mult: u32) {
        if f.re == T::zero() && f.im == T::zero() {
            self.vanished = true;
        } else if !self.vanished {
            self.log = self.log + f.ln() * T::lit(mult as f64);
        }
    }

    /// Adds `mult · log G(u, p)` with the exponential part kept exact.
    fn push_primary(&mut self, u: Complex<T>, p: Genus, mult: u32) {
        let one = Complex::new(T::one(), T::zero());
        self.push(one - u, mult);
        if p == Genus::One {
            self.push_log(u * T::lit(mult as f64));
        }
    }

    fn value(&self) -> Complex<T> {
        if self.vanished {
            Complex::new(T::zero(), T::zero())
        } else {
            self.log.exp()
        }
    }
}

fn nonzero_atoms<T: Real>(xi: &PointConfiguration<T>) -> impl Iterator<Item = &Atom<T>> {
    xi.atoms().iter().filter(|a| a.x != T::zero())
}

fn lift<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Π_p(ξ, z) = Π_{x ∈ ξ, x ≠ 0} G(z/x, p).
pub fn pi_p<T: Real>(xi: &PointConfiguration<T>, z: ComplexValue<T>, p: Genus) -> ComplexValue<T> {
    let mut acc = LogProduct::new();
    for a in nonzero_atoms(xi) {
        acc.push_primary(z / a.x, p, a.mult);
    }
    acc.value()
}

/// Φ_p(ξ, a, z) = Π_{x ∈ ξ, x ≠ a} G((z - a)/(x - a), p).
pub fn phi_p<T: Real>(xi: &PointConfiguration<T>, a: T, z: ComplexValue<T>, p: Genus) -> ComplexValue<T> {
    log_phi_p(xi, a, z, p).value()
}

fn log_phi_p<T: Real>(xi: &PointConfiguration<T>, a: T, z: ComplexValue<T>, p: Genus) -> LogProduct<T> {
    let tol = T::lit(MERGE_TOLERANCE);
    let w = z - a;
    let mut acc = LogProduct::new();
    for at in xi.atoms().iter().filter(|at| (at.x - a).abs() > tol) {
        acc.push_primary(w / (at.x - a), p, at.mult);
    }
    acc
}

/// Σ_{j ≤ N} 1/a_j over the first N Airy zeros.
pub fn airy_reciprocal_sum<T: Real>(n: usize) -> Result<T, ProductError> {
    if n == 0 {
        return Ok(T::zero());
    }
    let table = shared_zeros(n)?;
    Ok(table.first(n).iter().rev().fold(T::zero(), |acc, &a| acc + T::lit(1.0 / a)))
}

/// Linear drift of the Airy-corrected product: d1 + Σ_{j ≤ N} 1/a_j, N = ξ(ℝ).
pub fn airy_drift<T: Real>(xi: &PointConfiguration<T>) -> Result<T, ProductError> {
    Ok(airy_constants::<T>().d1 + airy_reciprocal_sum::<T>(xi.mass())?)
}

/// Φ_A. Uncentered: e^{d1 z} exp(z Σ 1/a_j) Π_0(ξ, z). Centered at `a`:
/// e^{(d1 + Σ 1/a_j)(z - a)} Φ_0(ξ, a, z). The sum runs over the first
/// ξ(ℝ) Airy zeros.
pub fn phi_a<T: Real>(xi: &PointConfiguration<T>, center: Option<T>, z: ComplexValue<T>) -> Result<ComplexValue<T>, ProductError> {
    let drift = airy_drift(xi)?;
    Ok(phi_a_with_drift(xi, center, z, drift))
}

/// Φ_A with an explicit linear drift in place of d1 + Σ 1/a_j.
pub fn phi_a_with_drift<T: Real>(xi: &PointConfiguration<T>, center: Option<T>, z: ComplexValue<T>, drift: T) -> ComplexValue<T> {
    match center {
        None => {
            let mut acc = LogProduct::new();
            for a in nonzero_atoms(xi) {
                acc.push_primary(z / a.x, Genus::Zero, a.mult);
            }
            acc.push_log(z * drift);
            acc.value()
        }
        Some(a) => {
            let mut acc = log_phi_p(xi, a, z, Genus::Zero);
            acc.push_log((z - a) * drift);
            acc.value()
        }
    }
}

/// Φ_A'(ξ, a) = ∂_z Φ_A(ξ, z) at z = a for a simple nonzero atom `a`.
pub fn phi_a_derivative<T: Real>(xi: &PointConfiguration<T>, a: T) -> Result<T, ProductError> {
    let tol = T::lit(MERGE_TOLERANCE);
    let m = xi.multiplicity_at(a);
    if m == 0 || a == T::zero() {
        return Err(ProductError::CenterNotAtom { a: a.to_f64_lossy() });
    }
    if m > 1 {
        return Ok(T::zero());
    }
    let drift = airy_drift(xi)?;
    let mut acc = LogProduct::new();
    for at in nonzero_atoms(xi).filter(|at| (at.x - a).abs() > tol) {
        acc.push_primary(lift(a / at.x), Genus::Zero, at.mult);
    }
    acc.push_log(lift(drift * a));
    Ok(-(acc.value().re) / a)
}

/// The ratio Φ_A(ξ, z) / ((z - a) Φ_A'(ξ, a)).
pub fn phi_a_ratio<T: Real>(xi: &PointConfiguration<T>, a: T, z: ComplexValue<T>) -> Result<ComplexValue<T>, ProductError> {
    let w = z - a;
    if w.norm() <= T::lit(MERGE_TOLERANCE) {
        return Err(ProductError::Pole { re: z.re.to_f64_lossy(), im: z.im.to_f64_lossy() });
    }
    let d = phi_a_derivative(xi, a)?;
    Ok(phi_a(xi, None, z)? / (w * d))
}

/// Φ_A(ξ_A, a, z) = Ai(z) / ((z - a) Ai'(a)) for an Airy zero `a`.
///
/// Near z = a the ratio is replaced by its Taylor expansion.
pub fn phi_a_airy<T: Real>(a: T, z: ComplexValue<T>) -> ComplexValue<T> {
    let aip = airy(lift(a)).ai_prime.re;
    let h = z - a;
    if h.norm() < T::lit(1e-4) {
        // Ai(a+h)/h = Ai'(a)[1 + a h²/6 + h³/12 + O(h⁴)]
        let six = T::lit(6.0);
        let twelve = T::lit(12.0);
        return Complex::new(T::one(), T::zero()) + h * h * a / six + h * h * h / twelve;
    }
    airy(z).ai / (h * aip)
}

/// Ai_N(z) = e^{d0 + d1 z} Π_{ℓ ≤ N} G(z/a_ℓ, 1).
pub fn ai_n<T: Real>(z: ComplexValue<T>, n: usize) -> Result<ComplexValue<T>, ProductError> {
    Ok(log_ai_n(z, n)?.value())
}

fn log_ai_n<T: Real>(z: ComplexValue<T>, n: usize) -> Result<LogProduct<T>, ProductError> {
    let c = airy_constants::<T>();
    let table = shared_zeros(n.max(1))?;
    let mut acc = LogProduct::new();
    for &a in table.first(n).iter().rev() {
        acc.push_primary(z / T::lit(a), Genus::One, 1);
    }
    acc.push_log(z * c.d1 + c.d0);
    Ok(acc)
}

/// Ai_N'(z) at a zero a_j, j ≤ N.
pub fn ai_n_prime_at_zero<T: Real>(j: usize, n: usize) -> Result<T, ProductError> {
    let c = airy_constants::<T>();
    let table = shared_zeros(n.max(j))?;
    let aj = T::lit(table.as_slice()[j - 1]);
    let mut acc = LogProduct::new();
    for (k, &a) in table.first(n).iter().enumerate().rev() {
        if k + 1 != j {
            acc.push_primary(lift(aj / T::lit(a)), Genus::One, 1);
        }
    }
    // d/dz (1 - z/a_j) e^{z/a_j} at z = a_j is -e/a_j
    acc.push_log(lift(c.d0 + c.d1 * aj + T::one()));
    Ok(-(acc.value().re) / aj)
}

/// Ai_N with the product over zeros beyond N replaced by its power-series
/// tail exp(-Σ_{k=2}^{K} z^k ζ_N(k) (-1)^k / k), ζ_N(k) = Σ_{j>N} |a_j|^{-k}.
pub fn ai_n_extrapolated<T: Real>(z: ComplexValue<T>, n: usize) -> Result<ComplexValue<T>, ProductError> {
    let table = shared_zeros(n + 1)?;
    let radius = table.as_slice()[n].abs();
    if z.norm().to_f64_lossy() >= 0.5 * radius {
        return Err(ProductError::OutsideTailRadius { radius: 0.5 * radius });
    }
    let mut acc = log_ai_n(z, n)?;
    let mut zk = z;
    for k in 2..=12u32 {
        zk = zk * z;
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let zt = T::lit(airy_zeta_tail(k as f64, n));
        acc.push_log(-(zk * zt * sign) / T::lit(k as f64));
    }
    Ok(acc.value())
}

/// S(ξ, a, z) = Σ_{x≠a} (z-a)/(x-a) - Σ_{x≠0} z/x + Σ_{x∉{0,-a}} a/x.
pub fn s_exponent<T: Real>(xi: &PointConfiguration<T>, a: T, z: ComplexValue<T>) -> ComplexValue<T> {
    let tol = T::lit(MERGE_TOLERANCE);
    let mut s = Complex::new(T::zero(), T::zero());
    for at in xi.atoms() {
        let m = T::lit(at.mult as f64);
        if (at.x - a).abs() > tol {
            s = s + (z - a) / (at.x - a) * m;
        }
        if at.x != T::zero() {
            s = s - z / at.x * m;
            if (at.x + a).abs() > tol {
                s = s + lift(a / at.x * m);
            }
        }
    }
    s
}

/// Φ_1(ξ, a, z) rebuilt from uncentered pieces:
/// e^S Π_1(ξ, z) Π_1(ξ∖{-a}, -a) Φ_0(ξ²∖{0}, a², 0) 2^{-1-ξ({-a})} (z/a)^{ξ({0})} a/(a - z),
/// for a nonzero simple atom `a`.
pub fn s_decomposition<T: Real>(xi: &PointConfiguration<T>, a: T, z: ComplexValue<T>) -> Result<ComplexValue<T>, ProductError> {
    let tol = T::lit(MERGE_TOLERANCE);
    if xi.multiplicity_at(a) == 0 || a == T::zero() {
        return Err(ProductError::CenterNotAtom { a: a.to_f64_lossy() });
    }
    if (z - a).norm() <= tol {
        return Err(ProductError::Pole { re: z.re.to_f64_lossy(), im: z.im.to_f64_lossy() });
    }
    let at_minus_a = xi.multiplicity_at(-a);
    let at_zero = xi.multiplicity_at(T::zero());
    let without_minus_a = PointConfiguration::from_atoms(xi.atoms().iter().filter(|at| (at.x + a).abs() > tol).map(|at| (at.x, at.mult)))
        .expect("subset of a valid configuration");
    let squared = PointConfiguration::from_atoms(xi.atoms().iter().filter(|at| at.x != T::zero()).map(|at| (at.x * at.x, at.mult)))
        .expect("squares of finite atoms");
    let two = T::lit(2.0);
    let pow2 = two.powi(-1 - at_minus_a as i32);
    let zero_factor = (z / a).powu(at_zero);
    let value = s_exponent(xi, a, z).exp()
        * pi_p(xi, z, Genus::One)
        * pi_p(&without_minus_a, lift(-a), Genus::One)
        * phi_p(&squared, a * a, lift(T::zero()), Genus::Zero)
        * pow2
        * zero_factor
        * (lift(a) / (lift(a) - z));
    Ok(value)
}

/// Calibrated constant C in |Φ_A(ξ, a, iy)| ≤ exp[C((|y|^θ ∨ 1) + (|a|^θ ∨ 1))].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBound {
    pub c: f64,
    pub theta: f64,
    /// Largest ratio log|Φ_A| / envelope seen on the calibration grid.
    pub observed: f64,
}

impl GrowthBound {
    /// exp[C((|y|^θ ∨ 1) + (|a|^θ ∨ 1))]
    pub fn bound(&self, a: f64, y: f64) -> f64 {
        (self.c * envelope(a, y, self.theta)).exp()
    }
}

fn envelope(a: f64, y: f64, theta: f64) -> f64 {
    y.abs().powf(theta).max(1.0) + a.abs().powf(theta).max(1.0)
}

/// Calibrates C on |y| ≤ y_max for centers `atoms`, inflates by 10%, then
/// checks the bound on the interleaved midpoint grid.
pub fn growth_bound(xi: &PointConfiguration<f64>, atoms: &[f64], y_max: f64, theta: f64, grid: usize) -> Result<GrowthBound, ProductError> {
    let drift = airy_drift(xi)?;
    let ratio = |a: f64, y: f64| {
        let v = phi_a_with_drift(xi, Some(a), Complex::new(0.0, y), drift).norm();
        let lv = if v > 0.0 { v.ln() } else { f64::NEG_INFINITY };
        lv / envelope(a, y, theta)
    };
    let n = grid.max(2);
    let step = 2.0 * y_max / (n - 1) as f64;
    let sweep = |offset: f64, count: usize| {
        let mut worst = f64::NEG_INFINITY;
        for &a in atoms {
            for k in 0..count {
                worst = worst.max(ratio(a, -y_max + step * (k as f64 + offset)));
            }
        }
        worst
    };
    let observed = sweep(0.0, n);
    let c = if observed > 0.0 { observed * 1.1 } else { observed * 0.9 };
    let needed = sweep(0.5, n - 1);
    if needed > c {
        return Err(ProductError::CalibrationFailure { needed, calibrated: c });
    }
    Ok(GrowthBound { c, theta, observed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Generator, Transform};
    use approx::assert_relative_eq;

    type Cfg = PointConfiguration<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn primary_factors() {
        assert_eq!(primary_factor(c(0.0, 0.0), Genus::Zero), c(1.0, 0.0));
        assert_eq!(primary_factor(c(0.0, 0.0), Genus::One), c(1.0, 0.0));
        assert_eq!(primary_factor(c(1.0, 0.0), Genus::One), c(0.0, 0.0));
        assert_relative_eq!(primary_factor(c(0.5, 0.0), Genus::One).re, 0.824_360_635_350_064, epsilon = 1e-15);
        assert!(Genus::try_from(2).is_err());
    }

    #[test]
    fn sine_product() {
        let z = Cfg::builtin(Generator::Integers { n: 10_000 }).unwrap();
        let v = pi_p(&z, c(0.5, 0.0), Genus::Zero) * std::f64::consts::PI * 0.5;
        assert!((v.re - 1.0).abs() < 1e-3);
        assert_eq!(pi_p(&z, c(0.0, 0.0), Genus::One), c(1.0, 0.0));
    }

    #[test]
    fn airy_genus_one_product() {
        let d = airy_constants::<f64>();
        let exact = airy(c(1.0, 0.0)).ai.re;
        let mut errs = Vec::new();
        for n in [100, 1000, 10_000] {
            let xa = Cfg::builtin(Generator::Airy { n }).unwrap();
            let v = pi_p(&xa, c(1.0, 0.0), Genus::One) * (d.d0 + d.d1).exp();
            assert_relative_eq!(v.re, ai_n(c(1.0, 0.0), n).unwrap().re, max_relative = 1e-13);
            errs.push((v.re / exact - 1.0).abs());
        }
        assert!(errs[0] > errs[1] && errs[1] > errs[2]);
        // empirical order close to N^{-1/3}
        let order = (errs[1] / errs[2]).log10();
        assert!((order - 1.0 / 3.0).abs() < 0.02, "order {order}");
    }

    #[test]
    fn ai_n_basics() {
        let d = airy_constants::<f64>();
        assert_eq!(ai_n(c(0.0, 0.0), 25).unwrap().re, d.d0.exp());
        let a1 = shared_zeros(1).unwrap().as_slice()[0];
        assert_eq!(ai_n(c(a1, 0.0), 5).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn tail_extrapolation() {
        let exact = airy(c(1.0, 0.5)).ai;
        for n in [20, 100] {
            let v = ai_n_extrapolated(c(1.0, 0.5), n).unwrap();
            assert!((v - exact).norm() / exact.norm() < 1e-9, "n = {n}");
        }
        assert!(ai_n_extrapolated(c(30.0, 0.0), 5).is_err());
    }

    #[test]
    fn centered_finite_airy() {
        let xa = Cfg::builtin(Generator::Airy { n: 50 }).unwrap();
        let a1 = xa.atoms().last().unwrap().x;
        let z = c(0.0, 1.0);
        let lhs = phi_a(&xa, Some(a1), z).unwrap();
        let rhs = ai_n(z, 50).unwrap() / ((z - a1) * ai_n_prime_at_zero::<f64>(1, 50).unwrap());
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
    }

    #[test]
    fn centered_converges_to_closed_form() {
        let z = c(0.0, 1.0);
        let target = phi_a_airy(shared_zeros(1).unwrap().as_slice()[0], z);
        let mut last = f64::INFINITY;
        for n in [10, 100, 1000] {
            let xa = Cfg::builtin(Generator::Airy { n }).unwrap();
            let a1 = xa.atoms().last().unwrap().x;
            let e = (phi_a(&xa, Some(a1), z).unwrap() - target).norm();
            assert!(e < last);
            last = e;
        }
        // genus-1 truncation error decays like N^{-1/3}
        assert!(last < 0.05);
    }

    #[test]
    fn single_atom() {
        let a1 = shared_zeros(1).unwrap().as_slice()[0];
        let d1 = airy_constants::<f64>().d1;
        let xi = Cfg::delta(a1);
        let z = c(0.3, -1.2);
        let expect = ((z - a1) * (d1 + 1.0 / a1)).exp();
        assert!((phi_a(&xi, Some(a1), z).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn closed_form_taylor_branch() {
        let a1 = shared_zeros(1).unwrap().as_slice()[0];
        let near = phi_a_airy(a1, c(a1 + 2e-4, 0.0));
        let nearer = phi_a_airy(a1, c(a1 + 5e-5, 0.0));
        assert!((near - nearer).norm() < 1e-3);
        assert!((phi_a_airy(a1, c(a1, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn genus_consistency() {
        let xi = Cfg::from_points(&[-3.0, -1.5, 0.0, 0.7, 2.2]).unwrap();
        let z = c(0.4, 0.9);
        let sum: f64 = [-3.0, -1.5, 0.7, 2.2].iter().map(|x| 1.0 / x).sum();
        let lhs = pi_p(&xi, z, Genus::One);
        let rhs = pi_p(&xi, z, Genus::Zero) * (z * sum).exp();
        assert!((lhs - rhs).norm() < 1e-14 * rhs.norm());
    }

    #[test]
    fn derivative_matches_difference() {
        let xi = Cfg::from_points(&[-4.1, -2.3, -0.9, 1.7]).unwrap();
        let a = -2.3;
        let h = 1e-6;
        let fd = (phi_a(&xi, None, c(a + h, 0.0)).unwrap() - phi_a(&xi, None, c(a - h, 0.0)).unwrap()).re / (2.0 * h);
        assert_relative_eq!(phi_a_derivative(&xi, a).unwrap(), fd, max_relative = 1e-8);
        assert!(phi_a_derivative(&xi, 0.5).is_err());
    }

    #[test]
    fn ratio_identity() {
        let xi = Cfg::from_points(&[-4.1, -2.3, -0.9, 1.7]).unwrap();
        let z = c(0.2, 1.3);
        for a in [-4.1, -2.3, -0.9, 1.7] {
            let lhs = phi_a(&xi, Some(a), z).unwrap();
            let rhs = phi_a_ratio(&xi, a, z).unwrap();
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
        }
        assert!(phi_a_ratio(&xi, -2.3, c(-2.3, 0.0)).is_err());
    }

    #[test]
    fn gauge_neutrality() {
        let xi = Cfg::from_points(&[-3.3, -1.0, 0.5]).unwrap();
        let drift = airy_drift(&xi).unwrap();
        let z = c(-0.7, 2.0);
        let base = phi_a_with_drift(&xi, Some(-1.0), z, drift);
        // shifting d1 by ε and the zero sum by -ε leaves the drift unchanged
        let eps = 0.37;
        let moved = phi_a_with_drift(&xi, Some(-1.0), z, (drift + eps) - eps);
        assert!((base - moved).norm() < 1e-14 * base.norm());
    }

    #[test]
    fn s_decomposition_finite() {
        let xi = Cfg::from_atoms([(-3.0, 1), (-1.2, 1), (0.0, 1), (1.2, 2), (2.5, 1)]).unwrap();
        let z = c(0.3, 0.8);
        for a in [-3.0, -1.2, 2.5] {
            let direct = phi_p(&xi, a, z, Genus::One);
            let rebuilt = s_decomposition(&xi, a, z).unwrap();
            assert!((direct - rebuilt).norm() < 1e-10 * direct.norm(), "a = {a}: {direct} vs {rebuilt}");
        }
    }

    #[test]
    fn growth_calibration() {
        let xa = Cfg::builtin(Generator::Airy { n: 100 }).unwrap();
        let atoms: Vec<f64> = xa.atoms().iter().map(|a| a.x).collect();
        let loose = growth_bound(&xa, &atoms, 50.0, 1.5, 41).unwrap();
        let tight = growth_bound(&xa, &atoms, 50.0, 1.9, 41).unwrap();
        assert!(tight.c <= loose.c);
        for &a in atoms.iter().step_by(7) {
            for y in [-50.0, -13.0, 0.0, 3.3, 49.0] {
                let v = phi_a(&xa, Some(a), c(0.0, y)).unwrap().norm();
                assert!(v <= loose.bound(a, y));
            }
        }
        let single = Cfg::delta(-2.338_107_410_459_767);
        let g = growth_bound(&single, &[-2.338_107_410_459_767], 50.0, 1.5, 21).unwrap();
        assert!(g.c.is_finite());
    }

    #[test]
    fn restrict_then_products() {
        let xa = Cfg::builtin(Generator::Airy { n: 20 }).unwrap();
        let part = xa.transform(Transform::Restrict { lo: -8.0, hi: 0.0 });
        assert!(pi_p(&part, c(0.0, 0.0), Genus::Zero) == c(1.0, 0.0));
    }
}
