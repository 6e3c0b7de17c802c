//! Tour of the ground-set calculus: naturally ordered partitions,
//! amalgamation, block-hit projection and its fibers, shifts and gaps.
//!
//! Run with: cargo run --example subset_calculus

use stable_patterns::ground::{
    enumerate_partitions, preimage_subsets, stirling2, GroundSubset, OrderedPartition,
};

fn main() -> stable_patterns::Result<()> {
    println!("partitions of {{1..4}} into 2 blocks (canonical order):");
    for p in enumerate_partitions(4, 2)? {
        println!("  {p}");
    }
    println!("count matches the Stirling number: {}", stirling2(4, 2));

    let gamma = OrderedPartition::new(
        4,
        vec![
            GroundSubset::new(4, [1, 3])?,
            GroundSubset::new(4, [2])?,
            GroundSubset::new(4, [4])?,
        ],
    )?;
    let beta = OrderedPartition::new(
        3,
        vec![GroundSubset::new(3, [1])?, GroundSubset::new(3, [2, 3])?],
    )?;
    println!(
        "\namalgamation: {gamma} grouped by {beta} = {}",
        gamma.amalgamate(&beta)?
    );

    let a = GroundSubset::new(4, [1, 3])?;
    println!("\nprojection: {a} under {gamma} = {}", a.project(&gamma)?);

    let pi = OrderedPartition::merge_pair(4, 3, 4)?;
    let q = GroundSubset::new(3, [1, 3])?;
    println!("fiber of {q} under the top merge {pi}:");
    for member in preimage_subsets(&pi, &q)? {
        println!("  {member}");
    }

    let s = GroundSubset::new(3, [1, 2, 3])?;
    println!("\ngap insertion at 2: {s} becomes {}", s.insert_gap(2)?);
    println!(
        "shift up: {} becomes {}",
        GroundSubset::new(3, [1, 3])?,
        GroundSubset::new(3, [1, 3])?.shift_up()?
    );
    let h = GroundSubset::new(4, [1, 3])?;
    println!(
        "holes of {h}: {:?}, first hole {}",
        h.holes(),
        h.first_hole()?
    );
    Ok(())
}
