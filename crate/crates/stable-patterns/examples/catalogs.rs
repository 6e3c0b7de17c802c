//! The three classification catalogs at one level, and the classifier that
//! inverts them.
//!
//! Run with: cargo run --example catalogs

use stable_patterns::ground::GroundSubset;
use stable_patterns::pattern::Pattern;
use stable_patterns::standard::{
    classify, hereditary_catalog, standard_catalog, usl_catalog, Classification,
};

fn main() -> stable_patterns::Result<()> {
    let m = 4;
    let standard = standard_catalog(m)?;
    let hereditary = hereditary_catalog(m)?;
    let usl = usl_catalog(m)?;
    println!(
        "level {m}: {} standard, {} hereditary, {} with unique stable lifts",
        standard.len(),
        hereditary.len(),
        usl.len()
    );

    println!("\nhereditary catalog at level {m}:");
    for (pattern, class) in hereditary.entries() {
        let unique = if usl.contains(pattern) {
            "unique lift"
        } else {
            "branching"
        };
        println!("  [{unique:>11}] {class}: {pattern}");
    }

    // Classification is a total function: catalog members return their
    // canonical label, everything else reports nonstandard.
    let phi = stable_patterns::standard::phi_pattern(m)?;
    println!("\nclassify {phi}: {:?}", classify(&phi)?);
    let odd = Pattern::from_subsets(
        m,
        [GroundSubset::new(m, [1])?, GroundSubset::new(m, [1, 2])?],
    )?;
    match classify(&odd)? {
        Classification::Standard(class) => println!("classify {odd}: {class}"),
        Classification::Nonstandard => println!("classify {odd}: nonstandard"),
    }
    Ok(())
}
