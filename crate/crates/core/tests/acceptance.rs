//! End-to-end acceptance gate: runs the full verification suite and
//! requires every criterion to pass, printing one line per criterion.

use odograph_core::suite::{run_all, DEFAULT_SEED};

#[test]
fn acceptance_suite() {
    let results = run_all(DEFAULT_SEED);
    assert_eq!(results.len(), 10);
    let mut failed = Vec::new();
    for (index, result) in results.iter().enumerate() {
        let status = if result.pass() { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {:>2}. {} ({} checks, {} ms)",
            index + 1,
            result.report.name,
            result.report.items.len(),
            result.millis
        );
        if !result.pass() {
            for item in result.report.items.iter().filter(|i| !i.pass) {
                println!("       ✗ {} — {}", item.label, item.detail.as_deref().unwrap_or(""));
            }
            failed.push(result.report.name.clone());
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
