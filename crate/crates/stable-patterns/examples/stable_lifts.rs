//! Stable lifts: the patterns one level up that induce a given pattern
//! under every one-merge partition. The fiber structure makes the search
//! exact — each member containing the top element lifts to a choice among
//! three candidates, filtered by projection membership and covering.
//!
//! Run with: cargo run --example stable_lifts

use stable_patterns::ground::GroundSubset;
use stable_patterns::pattern::Pattern;
use stable_patterns::stability::{stable_lifts, verify_lift_set_displays};
use stable_patterns::standard::phi_pattern;

fn main() -> stable_patterns::Result<()> {
    let phi2 = phi_pattern(2)?;
    println!("stable lifts of {phi2}:");
    for lift in stable_lifts(&phi2, true)? {
        println!("  {lift}");
    }

    let pair = Pattern::from_subsets(2, [GroundSubset::new(2, [1, 2])?])?;
    println!("\nstable lifts of {pair}: {:?}", stable_lifts(&pair, true)?);

    let displaced = Pattern::from_subsets(2, [GroundSubset::new(2, [2])?])?;
    println!(
        "stable lifts of {displaced}: {} (none exist)",
        stable_lifts(&displaced, true)?.len()
    );

    // The closed-form lift sets of the three unbounded-cardinality bases.
    let report = verify_lift_set_displays(3, 6)?;
    println!(
        "\nsurviving lift sets at level 3 match their closed forms: {}",
        report.all_match
    );
    for check in &report.checks {
        println!(
            "  {} base {}: {} surviving lifts",
            check.item,
            check.base,
            check.computed.len()
        );
    }
    Ok(())
}
