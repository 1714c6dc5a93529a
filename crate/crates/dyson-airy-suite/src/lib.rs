//! Reporting helpers for the acceptance tests in `tests/acceptance.rs`.
//!
//! The suite lives in its own package so that `cargo test --workspace`
//! runs it after every other crate's tests.

use dyson_airy::verify::Outcome;

/// `criterion  3 FAIL product identities  [   0.03s] detail`
pub fn report_line(o: &Outcome) -> String {
    format!("criterion {:>2} {:<4} {:<28} [{:>7.2}s] {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.title, o.seconds, o.detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_layout() {
        let o = Outcome { id: 2, title: "constants", passed: true, detail: "2 checks".into(), metrics: Vec::new(), seconds: 0.5 };
        assert_eq!(report_line(&o), "criterion  2 PASS constants                    [   0.50s] 2 checks");
    }
}
