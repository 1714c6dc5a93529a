//! Airy integral identities: the bilinear exponential integral, the Airy
//! transform of a Gaussian, the imaginary-axis transform of p_Ai,
//! primitives of Airy products, and Fourier–Airy projections.

use std::f64::consts::PI;

use serde::Serialize;

use super::airy_integrals::airy_product_integral;
use super::contour::vertical_line;
use super::transition::p_ai_c;
use super::KernelError;
use crate::airy::{airy, shared_zeros, RealAiryTable};
use crate::quadrature::{adaptive, composite, GaussLegendre};

/// ∫_ℝ e^{cu} Ai(u+x) Ai(u+y) du = (4πc)^{-1/2} exp(-(x-y)²/4c - c(x+y)/2 + c³/12), c > 0.
pub fn airy_bilinear_exp(c: f64, x: f64, y: f64) -> Result<f64, KernelError> {
    if !(c > 0.0) {
        return Err(KernelError::Domain(format!("bilinear exponential integral needs c > 0, got {c}")));
    }
    Ok((-(x - y).powi(2) / (4.0 * c) - c * (x + y) / 2.0 + c.powi(3) / 12.0).exp() / (4.0 * PI * c).sqrt())
}

/// The same integral by quadrature.
pub fn airy_bilinear_exp_quadrature(c: f64, x: f64, y: f64) -> Result<f64, KernelError> {
    airy_product_integral(c, x, y, None, None)
}

/// ∫ e^{-x²}/√π Ai((ξ+x)/c) dx = exp{(ξ + 1/(24c³))/(4c³)} Ai(ξ/c + 1/(16c⁴)), c ≠ 0.
pub fn airy_gauss_transform(c: f64, xi: f64) -> Result<f64, KernelError> {
    if c == 0.0 {
        return Err(KernelError::Domain("Airy-Gauss transform needs c ≠ 0".into()));
    }
    let c3 = c.powi(3);
    let arg = xi / c + 1.0 / (16.0 * c3 * c);
    Ok(((xi + 1.0 / (24.0 * c3)) / (4.0 * c3)).exp() * RealAiryTable::global().ai(arg))
}

/// Left side of [`airy_gauss_transform`] by Gauss–Legendre quadrature on [-9, 9].
pub fn airy_gauss_transform_quadrature(c: f64, xi: f64) -> Result<f64, KernelError> {
    if c == 0.0 {
        return Err(KernelError::Domain("Airy-Gauss transform needs c ≠ 0".into()));
    }
    let table = RealAiryTable::global();
    let panels = 36 + (18.0 / c.abs().powf(1.5)).ceil() as usize;
    Ok(composite(-9.0, 9.0, panels, 20, |x| (-x * x).exp() / PI.sqrt() * table.ai((xi + x) / c)))
}

/// Both sides of ∫_{iℝ} Ai(u+z) p_Ai(-t,z|y) dz/i = e^{-ut/2} Ai(u+y), t > 0.
/// The line is moved to Re z = y - t²/4, where the Gaussian factor is centered.
pub fn imaginary_axis_transform(t: f64, u: f64, y: f64) -> Result<(f64, f64), KernelError> {
    if !(t > 0.0) {
        return Err(KernelError::Domain(format!("imaginary-axis transform needs t > 0, got {t}")));
    }
    let c = y - t * t / 4.0;
    let lhs = vertical_line(c, 0.5 * t.sqrt().min(1.0), 3.0 * t.sqrt(), |z| airy(z + u).ai * p_ai_c(-t, z, y))?;
    let rhs = (-u * t / 2.0).exp() * RealAiryTable::global().ai(u + y);
    Ok((lhs, rhs))
}

/// ∫ Ai(c(u+x))² du = (u+x) Ai(c(u+x))² - Ai'(c(u+x))²/c.
pub fn airy_square_primitive(c: f64, x: f64, u: f64) -> f64 {
    let (a, ap) = RealAiryTable::global().eval(c * (u + x));
    (u + x) * a * a - ap * ap / c
}

/// ∫ Ai(c(u+x)) Ai(c(u+y)) du for x ≠ y:
/// [Ai'(c(u+x))Ai(c(u+y)) - Ai(c(u+x))Ai'(c(u+y))] / (c²(x-y)).
pub fn airy_cross_primitive(c: f64, x: f64, y: f64, u: f64) -> f64 {
    let table = RealAiryTable::global();
    let (ax, axp) = table.eval(c * (u + x));
    let (ay, ayp) = table.eval(c * (u + y));
    (axp * ay - ax * ayp) / (c * c * (x - y))
}

/// Largest |central difference of a primitive - integrand| over `us`.
pub fn primitive_residual(c: f64, x: f64, y: f64, us: &[f64]) -> f64 {
    let table = RealAiryTable::global();
    let h = 1e-5;
    us.iter()
        .map(|&u| {
            let sq = (airy_square_primitive(c, x, u + h) - airy_square_primitive(c, x, u - h)) / (2.0 * h);
            let sq_target = table.ai(c * (u + x)).powi(2);
            let cr = (airy_cross_primitive(c, x, y, u + h) - airy_cross_primitive(c, x, y, u - h)) / (2.0 * h);
            let cr_target = table.ai(c * (u + x)) * table.ai(c * (u + y));
            (sq - sq_target).abs().max((cr - cr_target).abs())
        })
        .fold(0.0, f64::max)
}

/// I_{ℓℓ'} = ∫_0^∞ Ai(x+a_ℓ) Ai(x+a_ℓ') dx by quadrature (1-based indices).
pub fn airy_cross_integral(l: usize, lp: usize) -> Result<f64, KernelError> {
    if l == 0 || lp == 0 {
        return Err(KernelError::Domain("zero indices start at 1".into()));
    }
    let zeros = shared_zeros(l.max(lp))?;
    let a = zeros.as_slice();
    airy_product_integral(0.0, a[l - 1], a[lp - 1], Some(0.0), None)
}

/// The closed value of [`airy_cross_integral`]: δ_{ℓℓ'} Ai'(a_ℓ)².
pub fn airy_cross_integral_exact(l: usize, lp: usize) -> Result<f64, KernelError> {
    if l != lp {
        return Ok(0.0);
    }
    let zeros = shared_zeros(l)?;
    let d = RealAiryTable::global().eval(zeros.as_slice()[l - 1]).1;
    Ok(d * d)
}

/// Coefficients c_ℓ = ∫ f(x) Ai(x+a_ℓ) dx / Ai'(a_ℓ) and the L² error of the
/// partial sum Σ c_ℓ Ai(x+a_ℓ)/Ai'(a_ℓ) over the sampled range.
#[derive(Debug, Clone, Serialize)]
pub struct FourierAiry {
    pub coefficients: Vec<f64>,
    pub reconstruction_error: f64,
}

fn basis(n: usize) -> Result<Vec<(f64, f64)>, KernelError> {
    let zeros = shared_zeros(n)?;
    let table = RealAiryTable::global();
    Ok(zeros.as_slice()[..n].iter().map(|&a| (a, table.eval(a).1)).collect())
}

fn project_on_nodes(xs: &[f64], ws: &[f64], fs: &[f64], n: usize) -> Result<FourierAiry, KernelError> {
    let table = RealAiryTable::global();
    let basis = basis(n)?;
    let phi: Vec<Vec<f64>> = basis.iter().map(|&(a, d)| xs.iter().map(|&x| table.ai(x + a) / d).collect()).collect();
    let coefficients: Vec<f64> = phi.iter().map(|p| p.iter().zip(fs).zip(ws).map(|((p, f), w)| p * f * w).sum()).collect();
    let err2: f64 = (0..xs.len())
        .map(|k| {
            let approx: f64 = coefficients.iter().zip(&phi).map(|(c, p)| c * p[k]).sum();
            ws[k] * (fs[k] - approx).powi(2)
        })
        .sum();
    Ok(FourierAiry { coefficients, reconstruction_error: err2.max(0.0).sqrt() })
}

/// Fourier–Airy projection of `f` restricted to (0, `upper`), composite
/// Gauss–Legendre on panels short enough for the deepest basis function.
pub fn fourier_airy_project<F: Fn(f64) -> f64>(f: F, upper: f64, n: usize) -> Result<FourierAiry, KernelError> {
    check_projection(upper, n)?;
    let deepest = basis(n)?.last().map(|b| b.0).unwrap_or(0.0);
    let panels = ((upper * (1.0 + deepest.abs().sqrt())) / 2.0).ceil().max(8.0) as usize;
    let rule = GaussLegendre::cached(20);
    let h = upper / panels as f64;
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for p in 0..panels {
        for (x, w) in rule.mapped(p as f64 * h, (p + 1) as f64 * h) {
            xs.push(x);
            ws.push(w);
        }
    }
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    project_on_nodes(&xs, &ws, &fs, n)
}

/// Fourier–Airy projection of samples on the uniform grid x_k = k·upper/(len-1)
/// (odd length) using Simpson weights.
pub fn fourier_airy_project_grid(values: &[f64], upper: f64, n: usize) -> Result<FourierAiry, KernelError> {
    check_projection(upper, n)?;
    let m = values.len();
    if m < 3 || m.is_multiple_of(2) {
        return Err(KernelError::Domain(format!("Simpson grid needs an odd number ≥ 3 of samples, got {m}")));
    }
    let h = upper / (m - 1) as f64;
    let xs: Vec<f64> = (0..m).map(|k| k as f64 * h).collect();
    let ws: Vec<f64> = (0..m)
        .map(|k| {
            let c = if k == 0 || k == m - 1 {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect();
    project_on_nodes(&xs, &ws, values, n)
}

fn check_projection(upper: f64, n: usize) -> Result<(), KernelError> {
    if !(upper > 0.0) || n == 0 {
        return Err(KernelError::Domain(format!("projection needs upper > 0 and n ≥ 1 (upper = {upper}, n = {n})")));
    }
    Ok(())
}

/// ∫ p(y) dy of a closed form in y, for checking ∫ dy of the bilinear
/// integral against e^{-cx + c³/3}.
pub fn bilinear_mass(c: f64, x: f64) -> Result<f64, KernelError> {
    airy_bilinear_exp(c, x, x)?;
    let centre = x - c * c;
    let width = 14.0 * (2.0 * c).sqrt();
    Ok(adaptive(centre - width, centre + width, 16, 1e-300, 1e-13, |y| airy_bilinear_exp(c, x, y).unwrap_or(f64::NAN)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bilinear_closed_form() {
        assert_relative_eq!(airy_bilinear_exp(1.0, 0.0, 0.0).unwrap(), (1.0f64 / 12.0).exp() / (4.0 * PI).sqrt(), epsilon = 1e-15);
        for &(c, x, y) in &[(1.0, 0.0, 0.0), (0.4, -2.0, 1.0), (2.5, 0.5, 0.3)] {
            let q = airy_bilinear_exp_quadrature(c, x, y).unwrap();
            assert_relative_eq!(q, airy_bilinear_exp(c, x, y).unwrap(), max_relative = 1e-10);
        }
        let (c, x) = (0.8, 0.3);
        assert_relative_eq!(bilinear_mass(c, x).unwrap(), (-c * x + c * c * c / 3.0).exp(), max_relative = 1e-11);
        assert!(airy_bilinear_exp(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn gauss_transform() {
        // oracle values from arbitrary-precision quadrature
        assert_relative_eq!(airy_gauss_transform(1.0, 0.0).unwrap(), 0.342_414_260_678_246_2, max_relative = 1e-13);
        assert_relative_eq!(airy_gauss_transform(0.7, -1.3).unwrap(), 0.182_593_141_451_427_5, max_relative = 1e-12);
        assert_relative_eq!(airy_gauss_transform(-1.2, 0.8).unwrap(), 0.447_914_842_730_604_9, max_relative = 1e-12);
        for xi in [-5.0, -2.5, 0.0, 2.5, 5.0] {
            let q = airy_gauss_transform_quadrature(0.9, xi).unwrap();
            assert!((q - airy_gauss_transform(0.9, xi).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn imaginary_axis() {
        let (lhs, rhs) = imaginary_axis_transform(1.0, 0.3, -0.2).unwrap();
        assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
        let (lhs, rhs) = imaginary_axis_transform(2.5, -1.0, 0.7).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
    }

    #[test]
    fn primitives() {
        let us: Vec<f64> = (0..20).map(|k| -4.0 + 0.45 * k as f64).collect();
        assert!(primitive_residual(1.0, 0.3, -1.1, &us) < 1e-8);
        assert!(primitive_residual(0.6, -2.0, 0.5, &us) < 1e-8);
    }

    #[test]
    fn orthogonality() {
        for l in 1..=10 {
            for lp in 1..=10 {
                let q = airy_cross_integral(l, lp).unwrap();
                assert!((q - airy_cross_integral_exact(l, lp).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn projection() {
        let t = RealAiryTable::global();
        let a1 = shared_zeros(1).unwrap().as_slice()[0];
        let d1 = t.eval(a1).1;
        let p = fourier_airy_project(|x| t.ai(x + a1) / d1, 25.0, 6).unwrap();
        assert!((p.coefficients[0] - 1.0).abs() < 1e-12);
        assert!(p.coefficients[1..].iter().all(|c| c.abs() < 1e-12));
        let grid: Vec<f64> = (0..4001).map(|k| t.ai(k as f64 * 25.0 / 4000.0 + a1) / d1).collect();
        let g = fourier_airy_project_grid(&grid, 25.0, 3).unwrap();
        assert!((g.coefficients[0] - 1.0).abs() < 1e-8);
        let errs: Vec<f64> = [5, 20, 80].iter().map(|&n| fourier_airy_project(|x| (-x).exp(), 3.0, n).unwrap().reconstruction_error).collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }
}
