//! Acceptance suite: runs every verification criterion at its stated cap and
//! prints one pass/fail line per criterion.
//!
//! `NESTO_ACCEPT_MAX_N` scales the families down for quick local runs; the
//! default exercises the full stated bounds.

use nestohedra::verify::verify_all;

#[test]
fn acceptance_criteria() {
    let max_n: usize = std::env::var("NESTO_ACCEPT_MAX_N")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let report = verify_all(max_n, 7);
    let mut ok = true;
    for r in &report.results {
        println!(
            "{} {:<28} {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        ok &= r.passed;
    }
    assert!(ok, "some acceptance criteria failed");
}
