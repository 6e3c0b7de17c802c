//! Cross-module structure: the families jointly cover the hereditary
//! catalog, grid parameterizations are distinct except for the documented
//! boundary coincidences, and the frontend is deterministic.

use std::collections::{BTreeMap, BTreeSet};

use stable_patterns::cli;
use stable_patterns::family::{families_on_grid, family_pattern, FamilyParams, PatternFamily};
use stable_patterns::pattern::Pattern;
use stable_patterns::standard::hereditary_catalog;

fn fam(id: u8, q: Option<u8>, l: Option<u8>, j: Option<u8>, jp: Option<u8>) -> PatternFamily {
    PatternFamily::new(
        id,
        FamilyParams {
            q,
            l,
            j,
            j_prime: jp,
        },
    )
    .unwrap()
}

/// The non-composite families reproduce exactly the non-composite items of
/// the hereditary catalog, at each level: families 1-6 and 11-18 on one
/// side, and an independent construction of the catalog items they cite on
/// the other.
#[test]
fn noncomposite_families_reproduce_their_catalog_items() {
    use stable_patterns::standard::{a1_pattern, a_pattern, full_pattern, phi_pattern};
    for m in 3u8..=6 {
        let mut family_values: BTreeSet<Pattern> = BTreeSet::new();
        let cap = m + 1; // clamping makes larger parameters redundant
        for id in [1u8, 2, 16, 17] {
            family_values.insert(family_pattern(&fam(id, None, None, None, None), m).unwrap());
        }
        for j in 1..=cap {
            for id in [3u8, 4, 5, 6, 11, 12, 18] {
                family_values
                    .insert(family_pattern(&fam(id, None, None, Some(j), None), m).unwrap());
            }
        }
        for id in [13u8, 14, 15] {
            for j in 2..=cap {
                for jp in 1..j {
                    family_values.insert(
                        family_pattern(&fam(id, None, None, Some(j), Some(jp)), m).unwrap(),
                    );
                }
            }
        }

        // Independent construction of the cited catalog items.
        let mut items: BTreeSet<Pattern> = BTreeSet::new();
        let full = full_pattern(m).unwrap();
        let phi = phi_pattern(m).unwrap();
        items.insert(full.clone());
        items.insert(phi.clone());
        for j in 1..=m {
            items.insert(a_pattern(j, m).unwrap());
            items.insert(a1_pattern(j, m).unwrap());
        }
        for j in 1..=m - 2 {
            items.insert(a_pattern(j, m).unwrap().union(&full).unwrap());
            items.insert(a_pattern(j, m).unwrap().union(&phi).unwrap());
            items.insert(a1_pattern(j, m).unwrap().union(&full).unwrap());
            items.insert(a1_pattern(j, m).unwrap().union(&phi).unwrap());
        }
        for j in 2..=m {
            for jp in 1..j {
                let joined = a1_pattern(j, m)
                    .unwrap()
                    .union(&a_pattern(jp, m).unwrap())
                    .unwrap();
                items.insert(joined.clone());
                if j + 2 <= m {
                    items.insert(joined.union(&full).unwrap());
                    items.insert(joined.union(&phi).unwrap());
                }
            }
        }
        assert_eq!(
            family_values, items,
            "non-composite family values differ from their catalog items at m={m}"
        );
        let catalog = hereditary_catalog(m).unwrap().pattern_set();
        assert!(family_values.is_subset(&catalog));
    }
}

/// The composite families stay inside the hereditary catalog but leave out
/// the boundary chains with a cardinality part equal to the threshold
/// (`j = l`): those catalog entries are not levels of any listed family.
#[test]
fn composite_boundary_chains_are_hereditary_but_unlisted() {
    use stable_patterns::standard::{a_pattern, d_pattern};
    // Level values of the boundary chain with threshold 2 and offset 1.
    for m in 4u8..=6 {
        let boundary = a_pattern(2, m)
            .unwrap()
            .union(&d_pattern(m - 3, m - 1, m).unwrap())
            .unwrap();
        assert!(
            hereditary_catalog(m).unwrap().contains(&boundary),
            "boundary chain value missing from the catalog at m={m}"
        );
        let cap = m + 1;
        let mut listed = false;
        for q in 1..=cap {
            listed |= family_pattern(&fam(7, Some(q), None, None, None), m).unwrap() == boundary;
            for j in 1..=cap {
                listed |=
                    family_pattern(&fam(9, Some(q), None, Some(j), None), m).unwrap() == boundary;
            }
            for l in (q + 1)..=cap {
                listed |=
                    family_pattern(&fam(8, Some(q), Some(l), None, None), m).unwrap() == boundary;
                for j in 1..l {
                    listed |= family_pattern(&fam(10, Some(q), Some(l), Some(j), None), m).unwrap()
                        == boundary;
                }
            }
        }
        assert!(
            !listed,
            "the boundary chain unexpectedly appears among the listed families at m={m}"
        );
    }
}

/// Distinct grid parameterizations generate distinct level traces, except
/// for the boundary coincidences where two items name the same generator.
#[test]
fn grid_families_are_distinct_up_to_known_coincidences() {
    let mut classes: BTreeMap<Vec<Pattern>, Vec<PatternFamily>> = BTreeMap::new();
    for family in families_on_grid(3) {
        let trace: Vec<Pattern> = (3..=7)
            .map(|m| family_pattern(&family, m).unwrap())
            .collect();
        classes.entry(trace).or_default().push(family);
    }
    let expected_coincidences: BTreeSet<Vec<PatternFamily>> = [
        // The one-bound anchored join with the segments is the segments.
        vec![
            fam(2, None, None, None, None),
            fam(12, None, None, Some(1), None),
        ],
        // Threshold family 8 at l = q + 2 replays family 7.
        vec![
            fam(7, Some(1), None, None, None),
            fam(8, Some(1), Some(3), None, None),
        ],
        // And likewise 10 at l = q + 2 replays 9.
        vec![
            fam(9, Some(1), None, Some(1), None),
            fam(10, Some(1), Some(3), Some(1), None),
        ],
        vec![
            fam(9, Some(1), None, Some(2), None),
            fam(10, Some(1), Some(3), Some(2), None),
        ],
    ]
    .into();
    let mut seen_coincidences = BTreeSet::new();
    for (_, mut members) in classes {
        members.sort();
        if members.len() > 1 {
            seen_coincidences.insert(members);
        }
    }
    assert_eq!(seen_coincidences, expected_coincidences);
}

/// Two runs of the full verification sweep at a small bound produce
/// identical output and both succeed.
#[test]
fn frontend_verification_sweep_is_deterministic() {
    let args: Vec<String> = ["verify", "--suite", "all", "--max-m", "4", "--json"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let first = cli::run(&args);
    let second = cli::run(&args);
    assert_eq!(first.code, 0, "{}", first.output);
    assert_eq!(second.code, 0);
    let strip = |text: &str| {
        // Elapsed time is the only nondeterministic field.
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        v["result"].as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip(&first.output), strip(&second.output));
}

/// Every report type round-trips through its JSON form: serializing the
/// reparsed value reproduces the original document byte for byte.
#[test]
fn reports_round_trip_through_json() {
    use stable_patterns::family::{check_coherence, CoherenceReport};
    use stable_patterns::ground::GroundSubset;
    use stable_patterns::ramsey::{
        find_stabilizing_partition, sdr, DrOracle, SdrOutcome, StabilizerResult,
    };
    use stable_patterns::stability::{
        explore_stable, hereditary_up_to, is_k_stable, usl_up_to, ExploreReport, LiftChainReport,
        StabilityReport,
    };
    use stable_patterns::standard::{a_pattern, classify, phi_pattern, Classification};
    use stable_patterns::verify::{run_suite, SuiteId, SuiteResult};

    fn fixpoint<T: serde::Serialize + serde::de::DeserializeOwned>(value: &T) {
        let json = serde_json::to_string(value).unwrap();
        let back: T = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    let phi = phi_pattern(3).unwrap();
    fixpoint::<StabilityReport>(&is_k_stable(&phi, 3).unwrap());
    let truncated = Pattern::from_subsets(
        3,
        [
            GroundSubset::new(3, [1]).unwrap(),
            GroundSubset::new(3, [1, 2]).unwrap(),
        ],
    )
    .unwrap();
    fixpoint::<StabilityReport>(&is_k_stable(&truncated, 3).unwrap());
    fixpoint::<LiftChainReport>(&hereditary_up_to(&phi, 5).unwrap());
    fixpoint::<LiftChainReport>(&usl_up_to(&a_pattern(3, 3).unwrap(), 5).unwrap());
    fixpoint::<Classification>(&classify(&phi).unwrap());
    fixpoint::<Classification>(&classify(&truncated).unwrap());
    fixpoint::<ExploreReport>(&explore_stable(3, 1, u64::MAX).unwrap());
    fixpoint::<SdrOutcome>(&sdr(4, &[7, 127], &DrOracle::MPlusK).unwrap());
    fixpoint::<SuiteResult>(&run_suite(SuiteId::Prop213, None).unwrap());
    fixpoint::<CoherenceReport>(&check_coherence(&fam(2, None, None, None, None), 5).unwrap());

    let result = find_stabilizing_partition(&phi_pattern(5).unwrap(), 3, None).unwrap();
    let json = serde_json::to_string(&result).unwrap();
    let back: StabilizerResult = serde_json::from_str(&json).unwrap();
    assert_eq!(back, result);
    // The reparsed result still passes its independent recheck.
    assert!(back.verify(&phi_pattern(5).unwrap()).unwrap());
}

/// The machine envelope carries the command name, a result, and a failures
/// array for every command.
#[test]
fn frontend_json_envelope_shape() {
    let args: Vec<String> = ["count", "--m", "4", "--n", "1", "--json"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let out = cli::run(&args);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
    assert_eq!(v["command"], "count");
    assert_eq!(v["result"]["count"], "32767");
    assert!(v["failures"].as_array().unwrap().is_empty());
}
