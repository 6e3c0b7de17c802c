//! Stabilizing-partition search: scan the partitions of a pattern's ground
//! set in canonical order for one whose induced pattern is stable. Above a
//! huge threshold a hit is guaranteed; at desk scale exhaustion is a
//! legitimate, reported outcome.
//!
//! Run with: cargo run --example stabilizer_search

use stable_patterns::ground::GroundSubset;
use stable_patterns::pattern::Pattern;
use stable_patterns::ramsey::{
    find_monochromatic_partition, find_stabilizing_partition, sample_pattern,
};
use stable_patterns::standard::{classify, phi_pattern};

fn main() -> stable_patterns::Result<()> {
    let phi = phi_pattern(5)?;
    let result = find_stabilizing_partition(&phi, 3, None)?;
    println!(
        "{phi}\n  stabilizes under {} inducing {}",
        result.partition.as_ref().unwrap(),
        result.induced.as_ref().unwrap()
    );

    println!("\nseeded random patterns over {{1..6}}, target level 3:");
    for index in 0..5 {
        let p = sample_pattern(6, 1, 2024, index)?;
        let result = find_stabilizing_partition(&p, 3, None)?;
        assert!(result.verify(&p)?);
        match (&result.partition, &result.induced) {
            (Some(alpha), Some(induced)) => {
                let label = match classify(induced)? {
                    stable_patterns::standard::Classification::Standard(class) => class.to_string(),
                    stable_patterns::standard::Classification::Nonstandard => "nonstandard".into(),
                };
                println!(
                    "  instance {index}: {alpha} after {} candidates, induced {induced} [{label}]",
                    result.candidates_tested,
                );
            }
            _ => println!(
                "  instance {index}: exhausted after {} candidates",
                result.candidates_tested
            ),
        }
    }

    // The same acceptance region through the coloring lens: color each
    // 2-block partition by the induced pattern and ask for a 3-block
    // partition whose coarsenings are monochromatic.
    let p = sample_pattern(5, 1, 2024, 0)?;
    let by_color = find_monochromatic_partition(|beta| p.induce(beta).unwrap(), 5, 2, 3, None)?;
    let by_stability = find_stabilizing_partition(&p, 3, None)?;
    println!(
        "\ncoloring route and stability route agree: {}",
        by_color == by_stability.partition
    );

    // A pattern whose single 3-block partition fails: exhaustion.
    let displaced = Pattern::from_subsets(3, [GroundSubset::new(3, [2])?])?;
    let result = find_stabilizing_partition(&displaced, 3, None)?;
    println!(
        "{displaced}: exhausted = {} after {} candidate",
        result.exhausted, result.candidates_tested
    );
    Ok(())
}
