//! Lift chains decide the finer classifications: a stable pattern is
//! hereditary (up to a level) when a chain of stable lifts reaches that
//! level, and has unique stable lifts when every link is the only one.
//!
//! Run with: cargo run --example lift_chains

use stable_patterns::ground::GroundSubset;
use stable_patterns::stability::{hereditary_up_to, usl_up_to};
use stable_patterns::standard::{a_pattern, phi_pattern};

fn main() -> stable_patterns::Result<()> {
    let phi = phi_pattern(3)?;
    let report = hereditary_up_to(&phi, 7)?;
    println!("{phi} survives to level 7: {}", report.verdict);
    for node in &report.chain {
        println!("  level {}: {}", node.depth, node.pattern);
    }
    let unique = usl_up_to(&phi, 7)?;
    println!("...and each lift is unique: {}", unique.verdict);

    // The everything-pattern is hereditary but branches immediately.
    let everything = a_pattern(3, 3)?;
    let hereditary = hereditary_up_to(&everything, 6)?;
    let unique = usl_up_to(&everything, 6)?;
    println!(
        "\n{everything}: survives = {}, unique lifts = {} ({})",
        hereditary.verdict, unique.verdict, unique
    );

    // A stable pattern with no lift at all dies at its own level.
    let doomed = a_pattern(1, 3)?
        .with_extra_subsets([GroundSubset::new(3, [2, 3])?, GroundSubset::new(3, [1, 2])?])?;
    let report = hereditary_up_to(&doomed, 4)?;
    println!(
        "\n{doomed}: survives to level 4 = {} ({report})",
        report.verdict
    );

    // Chains are evidence: every node re-checks against its base.
    let chain = hereditary_up_to(&a_pattern(1, 3)?, 6)?;
    assert!(chain.chain.iter().all(|node| node.verify()));
    println!(
        "\nchain evidence for {} re-checks at every level",
        a_pattern(1, 3)?
    );
    Ok(())
}
