//! Checking stability: a pattern is k-stable when every partition with the
//! same number of blocks induces the same pattern, for each block count up
//! to k. The checker returns either the common induced patterns or a
//! witness pair of partitions that disagree.
//!
//! Run with: cargo run --example stability_check

use stable_patterns::ground::GroundSubset;
use stable_patterns::pattern::Pattern;
use stable_patterns::stability::is_k_stable;
use stable_patterns::standard::phi_pattern;

fn main() -> stable_patterns::Result<()> {
    let phi = phi_pattern(3)?;
    let report = is_k_stable(&phi, 3)?;
    println!("{phi} stable up to 3 blocks: {}", report.verdict);
    for (k, induced) in &report.induced {
        println!("  common induced pattern on {k} blocks: {induced}");
    }

    // Drop the full set from the chain of initial segments and stability
    // breaks: merging inside {1,2} and merging {2,3} see different shapes.
    let truncated = Pattern::from_subsets(
        3,
        [GroundSubset::new(3, [1])?, GroundSubset::new(3, [1, 2])?],
    )?;
    let report = is_k_stable(&truncated, 3)?;
    println!("\n{truncated} stable up to 3 blocks: {}", report.verdict);
    if let Some((bad, reference)) = &report.witness {
        println!("  witness: {bad} and {reference} induce different patterns");
        println!("  {bad} gives {}", truncated.induce(bad)?);
        println!("  {reference} gives {}", truncated.induce(reference)?);
    }
    Ok(())
}
