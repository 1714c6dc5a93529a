//! Cross-layer checks: kernels against simulation and against each other.

use dyson_airy::correlations::{correlation_function, density_profile, CorrelationQuery};
use dyson_airy::kernels::{FiniteKernel, KernelKind, KernelSpec};
use dyson_airy::quadrature::{adaptive, GaussLegendre};
use dyson_airy::sim::{estimate_pair_correlation, generating_functional, simulate};
use dyson_airy::{Configuration, Generator, SimMethod, SimPlan};

fn airy3() -> Configuration {
    Configuration::builtin(Generator::Airy { n: 3 }).unwrap().without_generator()
}

fn ensemble(paths: usize) -> dyson_airy::sim::Ensemble {
    let plan = SimPlan { initial: airy3(), times: vec![0.5], paths, dt: None, method: SimMethod::Matrix, seed: Some(42) };
    simulate(&plan).unwrap()
}

#[test]
fn particle_number_is_conserved() {
    let spec = KernelSpec::with_config(KernelKind::FiniteConfig, airy3());
    let k = spec.compile().unwrap();
    let mass = adaptive(-14.0, 6.0, 40, 1e-12, 1e-10, |x| k.eval(0.5, x, 0.5, x).unwrap());
    assert!((mass - 3.0).abs() < 1e-4, "{mass}");
    let profile = density_profile(&spec, 0.5, &[-20.0, 10.0]).unwrap();
    assert!(profile.iter().all(|&v| v.abs() < 1e-10));
}

#[test]
fn two_point_histogram_matches_determinant() {
    let ens = ensemble(200_000);
    let edges = [-4.6, -4.2, -3.0, -2.6];
    let p = estimate_pair_correlation(&ens, 0.5, &edges).unwrap();
    let spec = KernelSpec::with_config(KernelKind::FiniteConfig, airy3());
    // bin centres of the two outer bins
    let rho2 = correlation_function(&CorrelationQuery::new(spec, vec![(0.5, vec![-4.4, -2.8])]).unwrap()).unwrap().value;
    let est = p.get(0, 2);
    assert!((est - rho2).abs() < 0.1 * rho2, "{est} vs {rho2}");
}

#[test]
fn generating_functional_second_order() {
    // χ = e^{θf} - 1 with a narrow bump f; the expansion to second order is
    // 1 + ∫χρ₁ + ½∫∫χχρ₂
    let theta = 0.3;
    let (c, w) = (-2.4, 0.4);
    let f = move |x: f64| {
        let r = (x - c) / w;
        if r.abs() < 1.0 {
            (1.0 - r * r).powi(2)
        } else {
            0.0
        }
    };
    let chi = move |x: f64| (theta * f(x)).exp() - 1.0;
    let k = FiniteKernel::new(&airy3()).unwrap();
    let rule = GaussLegendre::new(32);
    let nodes: Vec<(f64, f64)> = rule.mapped(c - w, c + w).collect();
    let kernel: Vec<Vec<f64>> = nodes.iter().map(|&(x, _)| nodes.iter().map(|&(y, _)| k.eval(0.5, x, 0.5, y).unwrap()).collect()).collect();
    let first: f64 = nodes.iter().enumerate().map(|(i, &(x, wx))| wx * chi(x) * kernel[i][i]).sum();
    let mut second = 0.0;
    for (i, &(x, wx)) in nodes.iter().enumerate() {
        for (j, &(y, wy)) in nodes.iter().enumerate() {
            second += wx * wy * chi(x) * chi(y) * (kernel[i][i] * kernel[j][j] - kernel[i][j] * kernel[j][i]);
        }
    }
    let expansion = 1.0 + first + 0.5 * second;
    let (mc, se) = generating_functional(&ensemble(100_000), 0.5, chi).unwrap();
    assert!((mc - expansion).abs() < 4.0 * se + 1e-4, "{mc} ± {se} vs {expansion}");
}
