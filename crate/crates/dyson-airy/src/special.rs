//! Gamma function via a Lanczos approximation.

use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments. Poles return infinity.
pub fn gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        if x == x.floor() {
            return T::infinity();
        }
        // reflection
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma(T::one() - x));
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::lit(k as f64));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    (T::lit(2.0) * T::PI()).sqrt() * t.powf(x + half) * (-t).exp() * acc
}

/// Natural log of |Γ(x)| for x > 0.
pub fn ln_gamma<T: Real>(x: T) -> T {
    if x < T::lit(0.5) {
        return gamma(x).abs().ln();
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::lit(k as f64));
    }
    let half = T::lit(0.5);
    let t = x + T::lit(LANCZOS_G) + half;
    half * (T::lit(2.0) * T::PI()).ln() + (x + half) * t.ln() - t + acc.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integers_and_half() {
        assert_relative_eq!(gamma(5.0_f64), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(0.5_f64), std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(1.0_f64), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn thirds() {
        // mpmath: gamma(1/3), gamma(2/3)
        assert_relative_eq!(gamma(1.0_f64 / 3.0), 2.678_938_534_707_747_6, max_relative = 1e-14);
        assert_relative_eq!(gamma(2.0_f64 / 3.0), 1.354_117_939_426_400_4, max_relative = 1e-14);
    }

    #[test]
    fn reflection_and_poles() {
        assert_relative_eq!(gamma(-0.5_f64), -2.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        assert!(gamma(-2.0_f64).is_infinite());
    }

    #[test]
    fn log_gamma_matches() {
        for &x in &[0.7_f64, 3.3, 10.0, 40.5] {
            assert_relative_eq!(ln_gamma(x), gamma(x).ln(), max_relative = 1e-12);
        }
    }

    #[test]
    fn single_precision() {
        assert_relative_eq!(gamma(2.0_f32 / 3.0), 1.354_118, max_relative = 1e-5);
    }
}
