//! The simultaneous threshold recursion over a pluggable oracle. Real
//! threshold values are astronomically large, so the oracle supplies them —
//! here a closed-form stub and a small table — and the recursion reports
//! its full query trace.
//!
//! Run with: cargo run --example sdr_recursion

use std::collections::BTreeMap;

use stable_patterns::ramsey::{pattern_color_count, sdr, DrOracle};

fn main() -> stable_patterns::Result<()> {
    // The color counts the stabilizer argument needs at levels 2..=m-1 are
    // the exact pattern counts.
    let colors: Vec<u128> = (2u8..=4)
        .map(|k| {
            pattern_color_count(k, 1)
                .unwrap()
                .try_into()
                .expect("fits in 128 bits")
        })
        .collect();
    println!("color counts for levels 2..=4: {colors:?}");

    let outcome = sdr(5, &colors, &DrOracle::MPlusK)?;
    println!("\nstub oracle (N = m + k):");
    for q in &outcome.trace {
        println!(
            "  level {}: ground {} with {} colors -> {}",
            q.k, q.m, q.r, q.n
        );
    }
    println!("  threshold: {}", outcome.value);

    let mut table = BTreeMap::new();
    table.insert((2u8, 4u64, 7u128), 11u64);
    table.insert((3u8, 11u64, 127u128), 200u64);
    let oracle = DrOracle::Table(table);
    let outcome = sdr(4, &[7, 127], &oracle)?;
    println!("\ntable oracle:");
    for q in &outcome.trace {
        println!(
            "  level {}: ground {} with {} colors -> {}",
            q.k, q.m, q.r, q.n
        );
    }
    println!("  threshold: {}", outcome.value);

    let missing = sdr(4, &[7, 128], &oracle);
    println!(
        "\nmissing key is an explicit error: {}",
        missing.unwrap_err()
    );
    Ok(())
}
