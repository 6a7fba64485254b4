//! One line per acceptance criterion, then the regression checks.
//! Exits nonzero if any check fails.

use equivar::suite::{criteria, regressions, SuiteConfig};

fn main() {
    let mut cfg = SuiteConfig::default();
    if let Some(j) = std::env::var("EQUIVAR_JOBS").ok().and_then(|s| s.parse().ok()) {
        cfg.jobs = j;
    }
    let mut failed = 0;
    for c in criteria(&cfg).into_iter().chain(regressions(&cfg)) {
        println!("{}", c.line());
        if !c.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} checks failed");
        std::process::exit(1);
    }
    println!("all checks passed");
}
