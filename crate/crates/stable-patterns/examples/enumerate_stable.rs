//! Enumerating all stable patterns at one level, two independent ways:
//! brute force over every pattern, and growth by stable lifts from level 2
//! (where all seven patterns are vacuously stable). Both agree with the
//! classification catalog.
//!
//! Run with: cargo run --example enumerate_stable

use stable_patterns::stability::{enumerate_stable, EnumerationMethod};
use stable_patterns::standard::standard_catalog;

fn main() -> stable_patterns::Result<()> {
    let brute = enumerate_stable(3, 1, EnumerationMethod::Brute, None)?;
    let lift = enumerate_stable(3, 1, EnumerationMethod::Lift, None)?;
    println!(
        "stable level-3 patterns: {} (brute) = {} (lift)",
        brute.len(),
        lift.len()
    );
    assert_eq!(brute, lift);

    let catalog = standard_catalog(3)?;
    assert_eq!(brute, catalog.pattern_set());
    println!("all of them, with their catalog labels:");
    for (pattern, class) in catalog.entries() {
        println!("  {pattern}  [{class}]");
    }

    for m in 4..=6 {
        let stable = enumerate_stable(m, 1, EnumerationMethod::Lift, None)?;
        assert_eq!(stable, standard_catalog(m)?.pattern_set());
        println!(
            "level {m}: {} stable patterns, catalog confirmed",
            stable.len()
        );
    }
    Ok(())
}
