//! The interchange formats: subsets are sorted integer arrays, partitions
//! arrays of blocks, patterns an {m, n, vectors} object, classification
//! labels a {family, params, m} object, oracles an array of entries. These
//! are the same files the command-line frontend reads and writes.
//!
//! Run with: cargo run --example json_io

use stable_patterns::ground::OrderedPartition;
use stable_patterns::pattern::Pattern;
use stable_patterns::ramsey::DrOracle;
use stable_patterns::standard::{classify, phi_pattern, Classification};

fn main() -> stable_patterns::Result<()> {
    let phi = phi_pattern(3)?;
    let json = serde_json::to_string_pretty(&phi).unwrap();
    println!("pattern file for {phi}:\n{json}");
    let back: Pattern = serde_json::from_str(&json).unwrap();
    assert_eq!(back, phi);

    let partition: OrderedPartition = serde_json::from_str("[[1,3],[2]]").unwrap();
    println!("\npartition [[1,3],[2]] parses as {partition}");

    if let Classification::Standard(class) = classify(&phi)? {
        println!(
            "\nclassification label:\n{}",
            serde_json::to_string_pretty(&class).unwrap()
        );
    }

    let oracle: DrOracle = serde_json::from_str(r#"[{"k":2,"m":4,"r":7,"n":6}]"#).unwrap();
    println!(
        "\noracle table round-trips: {}",
        serde_json::to_string(&oracle).unwrap()
    );

    // Malformed input is rejected with position information.
    let err = serde_json::from_str::<Pattern>(r#"{"m":2,"n":1,"vectors":[[[5]]]}"#).unwrap_err();
    println!("\nout-of-range member rejected: {err}");
    Ok(())
}
