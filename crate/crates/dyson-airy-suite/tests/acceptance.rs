//! One test per acceptance criterion. Each prints a pass/fail line to
//! stderr whether or not it passes; a lock keeps them sequential so the
//! runtime limits are measured without contention.

use std::io::Write;
use std::sync::Mutex;

use dyson_airy::verify::run_criterion;
use dyson_airy_suite::report_line;

static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(id: u8) {
    let _guard = SERIAL.lock().unwrap_or_else(|p| p.into_inner());
    let o = run_criterion(id);
    let line = report_line(&o);
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(o.passed, "{line}\nmetrics: {:?}", o.metrics);
}

#[test]
fn criterion_01_special_functions() {
    criterion(1);
}

#[test]
fn criterion_02_constants() {
    criterion(2);
}

#[test]
fn criterion_03_product_identities() {
    criterion(3);
}

#[test]
fn criterion_04_semigroup() {
    criterion(4);
}

#[test]
fn criterion_05_integral_identities() {
    criterion(5);
}

#[test]
fn criterion_06_single_particle_kernel() {
    criterion(6);
}

#[test]
fn criterion_07_gauge_equivalence() {
    criterion(7);
}

#[test]
fn criterion_08_monte_carlo() {
    criterion(8);
}

#[test]
fn criterion_09_relaxation() {
    criterion(9);
}

#[test]
fn criterion_10_tracy_widom() {
    criterion(10);
}

#[test]
fn criterion_11_density_asymptotics() {
    criterion(11);
}

#[test]
fn criterion_12_reproducibility() {
    criterion(12);
}
