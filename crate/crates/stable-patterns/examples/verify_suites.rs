//! Running the named verification suites from code. Each suite re-derives
//! one classification statement by exhaustive computation and reports
//! violations as counterexamples; the command-line equivalent is
//! `stable-patterns verify --suite <name>`.
//!
//! Run with: cargo run --example verify_suites

use stable_patterns::verify::{run_suite, SuiteId};

fn main() -> stable_patterns::Result<()> {
    // Modest bounds keep this demo quick; the acceptance suite runs the
    // full ones.
    let plan = [
        (SuiteId::Prop213, None),
        (SuiteId::Thm212, Some(5)),
        (SuiteId::Thm214, Some(4)),
        (SuiteId::Thm216, Some(4)),
        (SuiteId::Thm219, Some(5)),
        (SuiteId::Thm222, Some(4)),
        (SuiteId::Lem217, Some(6)),
        (SuiteId::Lem223, Some(4)),
        (SuiteId::Families, Some(6)),
    ];
    let mut all_green = true;
    for (suite, bound) in plan {
        let result = run_suite(suite, bound)?;
        all_green &= result.passed();
        println!(
            "{:>9}: {:>6} checks, {} failures, {:?}",
            result.suite,
            result.checks_run,
            result.failures.len(),
            result.elapsed
        );
        for failure in &result.failures {
            println!("   FAIL {}", failure.statement);
        }
    }
    println!("\nall suites green: {all_green}");
    Ok(())
}
