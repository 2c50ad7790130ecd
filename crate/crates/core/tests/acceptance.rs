//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use clusterforge::acceptance;

fn main() {
    let mut failed = 0;
    for id in 1..=acceptance::N_CRITERIA {
        let r = acceptance::run(id);
        println!("{}", r.line());
        failed += usize::from(!r.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        acceptance::N_CRITERIA - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
