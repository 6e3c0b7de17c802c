//! The eighteen level-indexed families: total generators whose level values
//! are hereditary and cohere under every projection between levels. A trace
//! of consecutive level values identifies its family back.
//!
//! Run with: cargo run --example pattern_families

use stable_patterns::family::{
    check_coherence, families_on_grid, family_pattern, identify_family, FamilyParams,
    Identification, PatternFamily,
};

fn main() -> stable_patterns::Result<()> {
    let segments = PatternFamily::new(2, FamilyParams::default())?;
    println!("family 2 level values:");
    for m in 1..=5 {
        println!("  m={m}: {}", family_pattern(&segments, m)?);
    }

    // The threshold family switches from the anchored-everything pattern to
    // a composite family once the level passes its threshold.
    let threshold = PatternFamily::new(
        7,
        FamilyParams {
            q: Some(1),
            ..Default::default()
        },
    )?;
    println!("\nfamily 7 (q=1) level values:");
    for m in 2..=6 {
        println!("  m={m}: {}", family_pattern(&threshold, m)?);
    }
    let report = check_coherence(&threshold, 7)?;
    println!(
        "coherent up to level 7: {} ({} projection checks, {} membership checks)",
        report.coherent, report.projection_checks, report.membership_checks
    );

    // Identify a family from an observed trace of level values.
    let trace: Vec<_> = (3..=5)
        .map(|m| family_pattern(&segments, m))
        .collect::<stable_patterns::Result<_>>()?;
    match identify_family(&trace, 3)? {
        Identification::Identified(family) => println!("\ntrace identified as {family}"),
        Identification::Unknown => println!("\ntrace not identified"),
    }

    println!(
        "\ndefault grid: {} parameterized families, all coherent to level 7",
        families_on_grid(3).len()
    );
    Ok(())
}
