//! Named verification suites.
//!
//! Each suite re-derives one classification statement by exhaustive
//! computation at desk scale and reports every violated instance as a
//! failure with a machine-readable counterexample. The suite names are the
//! stable identifiers the command-line `verify` subcommand accepts, so CI
//! output maps one-to-one onto the statement labels used throughout the
//! project.
//!
//! The `check_*` functions at the bottom are the smaller exhaustive
//! properties (projection fibers, decomposition and propagation rules, the
//! amalgamation identity, the group-action laws) that the integration suite
//! runs alongside the named suites.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::json;

use crate::ground::{enumerate_partitions, preimage_subsets, GroundSubset, OrderedPartition};
use crate::pattern::{count_patterns, enumerate_patterns, Pattern, Permutation};
use crate::ramsey::sample_pattern;
use crate::stability::{
    enumerate_stable, hereditary_up_to, is_k_stable, usl_up_to, verify_lift_set_displays,
    ChainFailure, EnumerationMethod,
};
use crate::standard::{
    a1_pattern, a_pattern, d_pattern, d_pattern_alt, full_pattern, hereditary_catalog, phi_pattern,
    standard_catalog, usl_catalog,
};
use crate::{family, Error, Result};

/// A violated check instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Failure {
    pub statement: String,
    pub counterexample: serde_json::Value,
}

/// Outcome of one suite run; the exit contract is "failures empty".
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: String,
    pub checks_run: u64,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Serialize for SuiteResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SuiteResult", 4)?;
        s.serialize_field("suite", &self.suite)?;
        s.serialize_field("checks_run", &self.checks_run)?;
        s.serialize_field("failures", &self.failures)?;
        s.serialize_field("elapsed_ms", &(self.elapsed.as_millis() as u64))?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for SuiteResult {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            suite: String,
            checks_run: u64,
            failures: Vec<Failure>,
            elapsed_ms: u64,
        }
        let repr = Repr::deserialize(deserializer)?;
        Ok(SuiteResult {
            suite: repr.suite,
            checks_run: repr.checks_run,
            failures: repr.failures,
            elapsed: Duration::from_millis(repr.elapsed_ms),
        })
    }
}

/// Running tally for a suite body.
#[derive(Default)]
pub struct CheckOutcome {
    pub checks: u64,
    pub failures: Vec<Failure>,
}

impl CheckOutcome {
    fn check(&mut self, ok: bool, statement: impl FnOnce() -> (String, serde_json::Value)) {
        self.checks += 1;
        if !ok {
            let (statement, counterexample) = statement();
            self.failures.push(Failure {
                statement,
                counterexample,
            });
        }
    }

    fn absorb(&mut self, other: CheckOutcome) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// The suites the `verify` subcommand knows by name.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteId {
    Prop213,
    Thm212,
    Thm214,
    Thm216,
    Thm219,
    Thm222,
    Lem217,
    Lem223,
    Families,
    All,
}

impl SuiteId {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "prop2.13" => SuiteId::Prop213,
            "thm2.12" => SuiteId::Thm212,
            "thm2.14" => SuiteId::Thm214,
            "thm2.16" => SuiteId::Thm216,
            "thm2.19" => SuiteId::Thm219,
            "thm2.22" => SuiteId::Thm222,
            "lem2.17" => SuiteId::Lem217,
            "lem2.23" => SuiteId::Lem223,
            "families" => SuiteId::Families,
            "all" => SuiteId::All,
            other => {
                return Err(Error::usage(format!(
                    "unknown suite {other}; expected one of prop2.13, thm2.12, thm2.14, \
                     thm2.16, thm2.19, thm2.22, lem2.17, lem2.23, families, all"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::Prop213 => "prop2.13",
            SuiteId::Thm212 => "thm2.12",
            SuiteId::Thm214 => "thm2.14",
            SuiteId::Thm216 => "thm2.16",
            SuiteId::Thm219 => "thm2.19",
            SuiteId::Thm222 => "thm2.22",
            SuiteId::Lem217 => "lem2.17",
            SuiteId::Lem223 => "lem2.23",
            SuiteId::Families => "families",
            SuiteId::All => "all",
        }
    }

    fn default_bound(&self) -> u8 {
        match self {
            SuiteId::Prop213 => 3,
            SuiteId::Thm212 => 7,
            SuiteId::Thm214 => 6,
            SuiteId::Thm216 => 5,
            SuiteId::Thm219 => 6,
            SuiteId::Thm222 => 5,
            SuiteId::Lem217 => 8,
            SuiteId::Lem223 => 6,
            SuiteId::Families => 7,
            SuiteId::All => 0, // per-suite defaults apply
        }
    }
}

/// Runs one named suite. `max_m` overrides the suite's default sweep bound
/// (for `all`, it caps every sub-suite).
pub fn run_suite(id: SuiteId, max_m: Option<u8>) -> Result<SuiteResult> {
    let start = Instant::now();
    let outcome = match id {
        SuiteId::Prop213 => suite_level3_reproduction()?,
        SuiteId::Thm212 => suite_projection_identities(max_m.unwrap_or(7))?,
        SuiteId::Thm214 => suite_enumeration_agreement(max_m.unwrap_or(6))?,
        SuiteId::Thm216 => suite_hereditary_classification(max_m.unwrap_or(5))?,
        SuiteId::Thm219 => suite_permutation_rigidity(max_m.unwrap_or(6))?,
        SuiteId::Thm222 => suite_unique_lift_classification(max_m.unwrap_or(5))?,
        SuiteId::Lem217 => suite_composite_identities(max_m.unwrap_or(8))?,
        SuiteId::Lem223 => suite_lift_set_displays(max_m.unwrap_or(6))?,
        SuiteId::Families => suite_family_coherence(max_m.unwrap_or(7))?,
        SuiteId::All => {
            let mut all = CheckOutcome::default();
            for sub in [
                SuiteId::Prop213,
                SuiteId::Thm212,
                SuiteId::Thm214,
                SuiteId::Thm216,
                SuiteId::Thm219,
                SuiteId::Thm222,
                SuiteId::Lem217,
                SuiteId::Lem223,
                SuiteId::Families,
            ] {
                let bound = match max_m {
                    Some(cap) => cap.min(sub.default_bound()),
                    None => sub.default_bound(),
                };
                let result = run_suite(sub, Some(bound))?;
                all.checks += result.checks_run;
                for mut f in result.failures {
                    f.statement = format!("[{}] {}", sub.name(), f.statement);
                    all.failures.push(f);
                }
            }
            all
        }
    };
    Ok(SuiteResult {
        suite: id.name().to_string(),
        checks_run: outcome.checks,
        failures: outcome.failures,
        elapsed: start.elapsed(),
    })
}

fn one_hole_sets(m: u8, min_hole: u8) -> Vec<GroundSubset> {
    (min_hole..=m)
        .map(|d| GroundSubset::new(m, (1..=m).filter(|&e| e != d)).unwrap())
        .collect()
}

fn selections(pool: &[GroundSubset]) -> Vec<Vec<GroundSubset>> {
    (0..(1u32 << pool.len()))
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| *s)
                .collect()
        })
        .collect()
}

/// Brute-force scan of every 3-level pattern against the catalog.
pub fn suite_level3_reproduction() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    let brute = enumerate_stable(3, 1, EnumerationMethod::Brute, None)?;
    let catalog = standard_catalog(3)?.pattern_set();
    for p in enumerate_patterns(3, 1, None)? {
        let stable = brute.contains(&p);
        let listed = catalog.contains(&p);
        out.check(stable == listed, || {
            (
                format!(
                    "pattern {p} is {} but {} the catalog",
                    if stable { "stable" } else { "unstable" },
                    if listed { "inside" } else { "outside" }
                ),
                json!({ "pattern": p }),
            )
        });
    }
    out.check(brute.len() == 20, || {
        (
            format!(
                "expected 20 stable patterns at level 3, found {}",
                brute.len()
            ),
            json!({ "count": brute.len() }),
        )
    });
    Ok(out)
}

/// The ten projection identities, for every one-merge partition and every
/// valid parameter, at levels `3..=max_m`.
pub fn suite_projection_identities(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 3..=max_m {
        // (label, source at m, expected image at m-1)
        let mut cases: Vec<(String, Pattern, Pattern)> = vec![
            ("full".into(), full_pattern(m)?, full_pattern(m - 1)?),
            (
                "initial segments".into(),
                phi_pattern(m)?,
                phi_pattern(m - 1)?,
            ),
            (
                format!("bound {m}"),
                a_pattern(m, m)?,
                a_pattern(m - 1, m - 1)?,
            ),
            (
                format!("anchored bound {m}"),
                a1_pattern(m, m)?,
                a1_pattern(m - 1, m - 1)?,
            ),
        ];
        for j in 1..m {
            cases.push((format!("bound {j}"), a_pattern(j, m)?, a_pattern(j, m - 1)?));
            cases.push((
                format!("anchored bound {j}"),
                a1_pattern(j, m)?,
                a1_pattern(j, m - 1)?,
            ));
        }
        for r in 2..m {
            for s in (r + 2)..m {
                cases.push((
                    format!("composite ({r},{s})"),
                    d_pattern(r, s, m)?,
                    d_pattern(r - 1, s - 1, m - 1)?,
                ));
            }
        }
        let anchored_base = a1_pattern(m - 2, m)?.union(&full_pattern(m)?)?;
        for nu in selections(&one_hole_sets(m, 2)) {
            cases.push((
                format!("anchored bound {} + {} holes + full", m - 2, nu.len()),
                anchored_base.with_extra_subsets(nu)?,
                a1_pattern(m - 1, m - 1)?,
            ));
        }
        let plain_base = a_pattern(m - 2, m)?.union(&full_pattern(m)?)?;
        let plain_no_full = a_pattern(m - 2, m)?;
        for nu in selections(&one_hole_sets(m, 1)) {
            cases.push((
                format!("bound {} + {} holes + full", m - 2, nu.len()),
                plain_base.with_extra_subsets(nu.clone())?,
                a_pattern(m - 1, m - 1)?,
            ));
            if nu.len() == usize::from(m) - 1 {
                cases.push((
                    format!("bound {} + large selection", m - 2),
                    plain_no_full.with_extra_subsets(nu)?,
                    a_pattern(m - 1, m - 1)?,
                ));
            }
        }
        for gamma in enumerate_partitions(m, m - 1)? {
            for (label, source, expected) in &cases {
                let induced = source.induce(&gamma)?;
                out.check(induced == *expected, || {
                    (
                        format!("projection identity [{label}] fails at m={m} under {gamma}"),
                        json!({
                            "source": source,
                            "gamma": gamma,
                            "induced": induced,
                            "expected": expected,
                        }),
                    )
                });
            }
        }
    }
    Ok(out)
}

/// Enumeration routes agree with each other and with the catalog: brute
/// force wherever the pattern count fits the default budget, lift-based
/// growth everywhere, at levels `3..=max_m`.
pub fn suite_enumeration_agreement(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 3..=max_m {
        let lift = enumerate_stable(m, 1, EnumerationMethod::Lift, None)?;
        let catalog = standard_catalog(m)?.pattern_set();
        out.check(lift == catalog, || {
            (
                format!("lift enumeration differs from the catalog at m={m}"),
                set_difference_json(&lift, &catalog),
            )
        });
        let feasible = count_patterns(m, 1)?
            <= num_bigint::BigUint::from(crate::pattern::DEFAULT_PATTERN_BUDGET);
        if feasible {
            let brute = enumerate_stable(m, 1, EnumerationMethod::Brute, None)?;
            out.check(brute == lift, || {
                (
                    format!("brute-force enumeration differs from lift enumeration at m={m}"),
                    set_difference_json(&brute, &lift),
                )
            });
        }
    }
    Ok(out)
}

fn set_difference_json(left: &BTreeSet<Pattern>, right: &BTreeSet<Pattern>) -> serde_json::Value {
    let only_left: Vec<&Pattern> = left.difference(right).collect();
    let only_right: Vec<&Pattern> = right.difference(left).collect();
    json!({ "only_left": only_left, "only_right": only_right })
}

/// Chain filtering of the stable patterns reproduces the hereditary catalog
/// at levels `3..=max_m` (chains probed three levels up).
pub fn suite_hereditary_classification(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 3..=max_m {
        let stable = enumerate_stable(m, 1, EnumerationMethod::Lift, None)?;
        let mut filtered = BTreeSet::new();
        for p in &stable {
            out.checks += 1;
            if hereditary_up_to(p, m + 3)?.verdict {
                filtered.insert(p.clone());
            }
        }
        let catalog = hereditary_catalog(m)?.pattern_set();
        out.check(filtered == catalog, || {
            (
                format!("chain filtering differs from the hereditary catalog at m={m}"),
                set_difference_json(&filtered, &catalog),
            )
        });
    }
    Ok(out)
}

/// Hereditary patterns are rigid under relabeling: a permuted image that is
/// again hereditary is the pattern itself, at levels `3..=max_m`.
pub fn suite_permutation_rigidity(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 3..=max_m {
        let catalog = hereditary_catalog(m)?.pattern_set();
        let permutations = Permutation::all(m);
        for p in &catalog {
            for sigma in &permutations {
                let image = p.apply(sigma)?;
                out.check(!catalog.contains(&image) || image == *p, || {
                    (
                        format!("hereditary pattern {p} maps to a different hereditary pattern"),
                        json!({ "pattern": p, "sigma": sigma_images(sigma), "image": image }),
                    )
                });
            }
        }
    }
    Ok(out)
}

fn sigma_images(sigma: &Permutation) -> Vec<u8> {
    (1..=sigma.degree()).map(|i| sigma.image(i)).collect()
}

/// Unique-lift filtering reproduces its catalog at levels `3..=max_m`, and
/// every hereditary pattern outside it branches at its first lift level.
pub fn suite_unique_lift_classification(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 3..=max_m {
        let stable = enumerate_stable(m, 1, EnumerationMethod::Lift, None)?;
        let mut filtered = BTreeSet::new();
        for p in &stable {
            out.checks += 1;
            if usl_up_to(p, m + 3)?.verdict {
                filtered.insert(p.clone());
            }
        }
        let catalog = usl_catalog(m)?.pattern_set();
        out.check(filtered == catalog, || {
            (
                format!("unique-lift filtering differs from the catalog at m={m}"),
                set_difference_json(&filtered, &catalog),
            )
        });
        for p in hereditary_catalog(m)?.pattern_set().difference(&catalog) {
            let report = usl_up_to(p, m + 3)?;
            let branches_immediately = matches!(
                report.failure,
                Some(ChainFailure::MultipleStableLifts { level, count, .. })
                    if level == m && count >= 2
            );
            out.check(branches_immediately, || {
                (
                    format!("excluded hereditary pattern {p} does not branch at its first level"),
                    json!({ "pattern": p, "report": report }),
                )
            });
        }
    }
    Ok(out)
}

/// The two composite-family routes agree and the two absorption identities
/// hold, for every valid index with ground size up to `max_m`.
pub fn suite_composite_identities(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 3..=max_m {
        let strict: Vec<(u8, u8)> = (2..m)
            .flat_map(|r| ((r + 2)..m).map(move |s| (r, s)))
            .collect();
        for &(r, s) in &strict {
            let direct = d_pattern(r, s, m)?;
            let alt = d_pattern_alt(r, s, m)?;
            out.check(direct == alt, || {
                (
                    format!("composite routes disagree at (r={r}, s={s}, m={m})"),
                    json!({ "direct": direct, "alternative": alt }),
                )
            });
        }
        for &(r1, s1) in &strict {
            for &(r2, s2) in &strict {
                let union = d_pattern(r1, s1, m)?.union(&d_pattern(r2, s2, m)?)?;
                let merged = d_pattern(r1.min(r2), s1.min(s2), m)?;
                out.check(union == merged, || {
                    (
                        format!(
                            "composite union ({r1},{s1}) + ({r2},{s2}) is not \
                             ({},{}) at m={m}",
                            r1.min(r2),
                            s1.min(s2)
                        ),
                        json!({ "union": union, "merged": merged }),
                    )
                });
            }
        }
        for s in 1..m {
            let left = d_pattern(s, s + 1, m)?;
            let right = d_pattern(s - 1, s + 1, m)?;
            out.check(left == right, || {
                (
                    format!("adjacent composite identity fails at (s={s}, m={m})"),
                    json!({ "left": left, "right": right }),
                )
            });
        }
    }
    Ok(out)
}

/// The computed surviving lift sets match their closed-form displays for
/// base levels `3..=max_m`.
pub fn suite_lift_set_displays(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 3..=max_m {
        let report = verify_lift_set_displays(m, m + 3)?;
        for check in report.checks {
            out.check(check.matches, || {
                (
                    format!("lift set of the {} base differs at m={m}", check.item),
                    json!({
                        "base": check.base,
                        "computed": check.computed,
                        "expected": check.expected,
                    }),
                )
            });
        }
    }
    Ok(out)
}

/// Every family on the default grid is coherent up to `max_level` and lands
/// inside the hereditary catalogs.
pub fn suite_family_coherence(max_level: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for fam in family::families_on_grid(3) {
        let report = family::check_coherence(&fam, max_level)?;
        out.checks += report.projection_checks + report.membership_checks;
        for failure in report.failures {
            out.failures.push(Failure {
                statement: format!("{fam} fails coherence"),
                counterexample: serde_json::to_value(&failure).unwrap(),
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Exhaustive small-scale properties used by the integration suite.
// ---------------------------------------------------------------------------

/// Round trip between projection and its fibers, exhaustively for ground
/// sizes up to `max_s`: every subset sits in the fiber over its projection,
/// and every fiber member projects back.
pub fn check_galois(max_s: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for s in 1..=max_s {
        for k in 1..=s {
            for gamma in enumerate_partitions(s, k)? {
                for bits in 1..(1u32 << s) {
                    let a = GroundSubset::new(s, (1..=s).filter(|e| bits & (1 << (e - 1)) != 0))?;
                    let q = a.project(&gamma)?;
                    let fiber = preimage_subsets(&gamma, &q)?;
                    out.check(fiber.contains(&a), || {
                        (
                            format!("{a} missing from its own fiber under {gamma}"),
                            json!({ "gamma": gamma, "subset": a }),
                        )
                    });
                    for b in &fiber {
                        out.check(b.project(&gamma).unwrap() == q, || {
                            (
                                format!("fiber member {b} does not project back to {q}"),
                                json!({ "gamma": gamma, "member": b, "expected": q }),
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The fiber over a subset avoiding the merged-low index is exactly the gap
/// insertion, for all one-merge partitions up to ground `max_m + 1`.
pub fn check_merge_fiber_lemma(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 1..=max_m {
        for i in 1..=m {
            for j in (i + 1)..=(m + 1) {
                let gamma = OrderedPartition::merge_pair(m + 1, i, j)?;
                for bits in 1..(1u32 << m) {
                    if bits & (1 << (i - 1)) != 0 {
                        continue;
                    }
                    let q = GroundSubset::new(m, (1..=m).filter(|e| bits & (1 << (e - 1)) != 0))?;
                    let fiber = preimage_subsets(&gamma, &q)?;
                    let expected = vec![q.insert_gap(j)?];
                    out.check(fiber == expected, || {
                        (
                            format!(
                                "fiber over {q} under merge ({i},{j}) is not the gap insertion"
                            ),
                            json!({ "gamma": gamma, "q": q, "fiber": fiber }),
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The fiber over a subset containing the top element under the top merge is
/// the three-element family {itself, moved up, extended up}.
pub fn check_top_fiber_triples(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 1..=max_m {
        let gamma = OrderedPartition::merge_pair(m + 1, m, m + 1)?;
        for bits in 1..(1u32 << m) {
            if bits & (1 << (m - 1)) == 0 {
                continue;
            }
            let p = GroundSubset::new(m, (1..=m).filter(|e| bits & (1 << (e - 1)) != 0))?;
            let fiber: BTreeSet<GroundSubset> = preimage_subsets(&gamma, &p)?.into_iter().collect();
            let widened = p.widen(m + 1)?;
            let extended = widened.union(&GroundSubset::new(m + 1, [m + 1])?);
            let moved =
                GroundSubset::new(m + 1, extended.members().into_iter().filter(|&e| e != m))?;
            let expected: BTreeSet<GroundSubset> = [widened, moved, extended].into();
            out.check(fiber == expected, || {
                (
                    format!("top-merge fiber over {p} is not its three-element family"),
                    json!({ "p": p, "fiber": fiber, "expected": expected }),
                )
            });
        }
    }
    Ok(out)
}

/// Projection commutes with amalgamation, exhaustively up to ground `max_s`.
pub fn check_projection_amalgamation(max_s: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for s in 2..=max_s {
        for k in 1..=s {
            for gamma in enumerate_partitions(s, k)? {
                for k2 in 1..=k {
                    for beta in enumerate_partitions(k, k2)? {
                        let merged = gamma.amalgamate(&beta)?;
                        for bits in 1..(1u32 << s) {
                            let a = GroundSubset::new(
                                s,
                                (1..=s).filter(|e| bits & (1 << (e - 1)) != 0),
                            )?;
                            let direct = a.project(&merged)?;
                            let staged = a.project(&gamma)?.project(&beta)?;
                            out.check(direct == staged, || {
                                (
                                    format!(
                                        "projection under {merged} differs from staged \
                                         projection of {a}"
                                    ),
                                    json!({
                                        "gamma": gamma,
                                        "beta": beta,
                                        "subset": a,
                                        "direct": direct,
                                        "staged": staged,
                                    }),
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A pattern is the union, over its top-merge projection, of its fiber
/// pieces; exhaustively for all patterns up to ground `max_level`.
pub fn check_fiber_decomposition(max_level: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m1 in 2..=max_level {
        let m = m1 - 1;
        let pi = OrderedPartition::merge_pair(m1, m, m1)?;
        for p in enumerate_patterns(m1, 1, None)? {
            let projected = p.induce(&pi)?;
            let mut rebuilt: BTreeSet<GroundSubset> = BTreeSet::new();
            for q in projected.subsets() {
                for member in preimage_subsets(&pi, &q)? {
                    if p.contains_subset(&member) {
                        rebuilt.insert(member);
                    }
                }
            }
            let original: BTreeSet<GroundSubset> = p.subsets().into_iter().collect();
            out.check(rebuilt == original, || {
                (
                    format!("fiber decomposition fails for {p}"),
                    json!({ "pattern": p, "rebuilt": rebuilt }),
                )
            });
        }
    }
    Ok(out)
}

/// Singleton fibers of projected members are forced into the pattern,
/// exhaustively for all patterns up to ground `max_level`.
pub fn check_forced_membership(max_level: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for s in 2..=max_level {
        let merges = enumerate_partitions(s, s - 1)?;
        for p in enumerate_patterns(s, 1, None)? {
            for gamma in &merges {
                let projected = p.induce(gamma)?;
                for q in projected.subsets() {
                    let fiber = preimage_subsets(gamma, &q)?;
                    if let [only] = fiber.as_slice() {
                        out.check(p.contains_subset(only), || {
                            (
                                format!("singleton fiber {only} over {q} missing from {p}"),
                                json!({ "pattern": p, "gamma": gamma, "q": q }),
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The one-merge criterion for stability, both directions, exhaustively for
/// all patterns up to ground `max_level`: a pattern is stable at its level
/// exactly when all one-merge projections coincide and the common projection
/// is stable one level down.
pub fn check_one_merge_criterion(max_level: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for s in 3..=max_level {
        let merges = enumerate_partitions(s, s - 1)?;
        for p in enumerate_patterns(s, 1, None)? {
            let stable = is_k_stable(&p, s)?.verdict;
            let first = p.induce(&merges[0])?;
            let constant = merges[1..]
                .iter()
                .all(|gamma| p.induce(gamma).unwrap() == first);
            let criterion =
                constant && (first.ground_size() < 2 || is_k_stable(&first, s - 1)?.verdict);
            out.check(stable == criterion, || {
                (
                    format!("one-merge criterion disagrees with the definition for {p}"),
                    json!({ "pattern": p, "stable": stable, "criterion": criterion }),
                )
            });
        }
    }
    Ok(out)
}

/// Induced patterns of stable patterns are stable, exhaustively for stable
/// patterns up to ground `max_m`.
pub fn check_induced_stability(max_m: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 3..=max_m {
        for p in enumerate_stable(m, 1, EnumerationMethod::Lift, None)? {
            for k in 2..m {
                for gamma in enumerate_partitions(m, k)? {
                    let induced = p.induce(&gamma)?;
                    out.check(is_k_stable(&induced, k)?.verdict, || {
                        (
                            format!("induced pattern of stable {p} is unstable under {gamma}"),
                            json!({ "pattern": p, "gamma": gamma, "induced": induced }),
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

fn band(subsets: &[GroundSubset], holes: u32, first_at_least: u8) -> BTreeSet<GroundSubset> {
    subsets
        .iter()
        .filter(|s| {
            u32::from(s.ground_size()) - s.len() == holes
                && s.first_hole().map(|h| h >= first_at_least).unwrap_or(false)
        })
        .copied()
        .collect()
}

fn exact_band(subsets: &[GroundSubset], holes: u32, first: u8) -> BTreeSet<GroundSubset> {
    subsets
        .iter()
        .filter(|s| {
            u32::from(s.ground_size()) - s.len() == holes
                && s.first_hole().map(|h| h == first).unwrap_or(false)
        })
        .copied()
        .collect()
}

fn full_band(m: u8, holes: u32, first_at_least: u8) -> BTreeSet<GroundSubset> {
    let mut out = BTreeSet::new();
    for bits in 1..(1u32 << m) {
        let s = GroundSubset::new(m, (1..=m).filter(|e| bits & (1 << (e - 1)) != 0)).unwrap();
        if u32::from(m) - s.len() == holes
            && s.first_hole().map(|h| h >= first_at_least).unwrap_or(false)
        {
            out.insert(s);
        }
    }
    out
}

/// Hole-band propagation: when the projection of a stable pattern first
/// meets an h-hole band at first-hole `l`, the pattern's own (h+1)-hole part
/// is the full band from `l`, and the projection's h-hole part is the full
/// band from `l`. Exhaustive over stable patterns up to ground `max_level`.
pub fn check_hole_propagation(max_level: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m1 in 4..=max_level {
        let m = m1 - 1;
        let pi = OrderedPartition::merge_pair(m1, m, m1)?;
        for p in enumerate_stable(m1, 1, EnumerationMethod::Lift, None)? {
            let projected = p.induce(&pi)?;
            let projected_subsets = projected.subsets();
            let pattern_subsets = p.subsets();
            for h in 1..m {
                for l in 1..=(m + 1 - h) {
                    let hypothesis_low =
                        (1..l).all(|i| exact_band(&projected_subsets, h.into(), i).is_empty());
                    let hypothesis_hit = !exact_band(&projected_subsets, h.into(), l).is_empty();
                    if !(hypothesis_low && hypothesis_hit) {
                        continue;
                    }
                    let upper = band(&pattern_subsets, (h + 1).into(), 1);
                    let expected_upper = full_band(m1, (h + 1).into(), l);
                    out.check(upper == expected_upper, || {
                        (
                            format!("hole propagation (h={h}, l={l}) fails upward for {p}"),
                            json!({ "pattern": p, "upper": upper, "expected": expected_upper }),
                        )
                    });
                    let lower = band(&projected_subsets, h.into(), 1);
                    let expected_lower = full_band(m, h.into(), l);
                    out.check(lower == expected_lower, || {
                        (
                            format!("hole propagation (h={h}, l={l}) fails downward for {p}"),
                            json!({ "projection": projected, "lower": lower }),
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Cardinality-bound propagation: a bound contained in the projection of a
/// stable pattern is contained, one level up, in the pattern. Exhaustive
/// over stable patterns up to ground `max_level`.
pub fn check_bound_propagation(max_level: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m1 in 4..=max_level {
        let m = m1 - 1;
        let pi = OrderedPartition::merge_pair(m1, m, m1)?;
        for p in enumerate_stable(m1, 1, EnumerationMethod::Lift, None)? {
            let projected = p.induce(&pi)?;
            let proj_set: BTreeSet<GroundSubset> = projected.subsets().into_iter().collect();
            let up_set: BTreeSet<GroundSubset> = p.subsets().into_iter().collect();
            for j in 1..m {
                let low_bound: BTreeSet<GroundSubset> =
                    a_pattern(j, m)?.subsets().into_iter().collect();
                if low_bound.is_subset(&proj_set) {
                    let up_bound: BTreeSet<GroundSubset> =
                        a_pattern(j, m1)?.subsets().into_iter().collect();
                    out.check(up_bound.is_subset(&up_set), || {
                        (
                            format!("bound {j} fails to propagate into {p}"),
                            json!({ "pattern": p, "j": j }),
                        )
                    });
                }
                let low_anchored: BTreeSet<GroundSubset> =
                    a1_pattern(j, m)?.subsets().into_iter().collect();
                if low_anchored.is_subset(&proj_set) {
                    let up_anchored: BTreeSet<GroundSubset> =
                        a1_pattern(j, m1)?.subsets().into_iter().collect();
                    out.check(up_anchored.is_subset(&up_set), || {
                        (
                            format!("anchored bound {j} fails to propagate into {p}"),
                            json!({ "pattern": p, "j": j }),
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Tail propagation for one-hole parts: when the projection's one-hole part
/// is the tail band from `e >= 3`, the pattern's one-hole part is the tail
/// band from `e + 1`, and a full projection forces the full set upward.
pub fn check_tail_propagation(max_level: u8) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m1 in 4..=max_level {
        let m = m1 - 1;
        let pi = OrderedPartition::merge_pair(m1, m, m1)?;
        for p in enumerate_stable(m1, 1, EnumerationMethod::Lift, None)? {
            let projected = p.induce(&pi)?;
            let one_hole = band(&projected.subsets(), 1, 1);
            if one_hole.is_empty() {
                continue;
            }
            let e = one_hole
                .iter()
                .map(|s| s.first_hole().unwrap())
                .min()
                .unwrap();
            if e < 3 || one_hole != full_band(m, 1, e) {
                continue;
            }
            let upper = band(&p.subsets(), 1, 1);
            let expected = full_band(m1, 1, e + 1);
            out.check(upper == expected, || {
                (
                    format!("tail propagation fails for {p} (e={e})"),
                    json!({ "pattern": p, "upper": upper, "expected": expected }),
                )
            });
            if projected.contains_subset(&GroundSubset::full(m)) {
                out.check(p.contains_subset(&GroundSubset::full(m1)), || {
                    (
                        format!("full set fails to propagate into {p}"),
                        json!({ "pattern": p }),
                    )
                });
            }
        }
    }
    Ok(out)
}

/// The amalgamation identity on induced patterns, for seeded sample patterns
/// at each ground size up to `max_m`: staged induction equals induction by
/// the amalgamated partition.
pub fn check_amalgamation_identity(max_m: u8, samples: u64, seed: u64) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 2..=max_m {
        for index in 0..samples {
            let p = sample_pattern(m, 1, seed, u64::from(m) << 32 | index)?;
            for k in 1..=m {
                for gamma in enumerate_partitions(m, k)? {
                    for k2 in 1..=k {
                        for beta in enumerate_partitions(k, k2)? {
                            let staged = p.induce(&gamma)?.induce(&beta)?;
                            let direct = p.induce(&gamma.amalgamate(&beta)?)?;
                            out.check(staged == direct, || {
                                (
                                    format!(
                                        "staged induction of {p} under {gamma} then {beta} \
                                         differs from the amalgamated induction"
                                    ),
                                    json!({
                                        "pattern": p,
                                        "gamma": gamma,
                                        "beta": beta,
                                        "staged": staged,
                                        "direct": direct,
                                    }),
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Identity and composition laws of the relabeling action on seeded sample
/// patterns.
pub fn check_action_laws(max_m: u8, samples: u64, seed: u64) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for m in 2..=max_m {
        let all = Permutation::all(m);
        for index in 0..samples {
            let p = sample_pattern(m, 1, seed ^ 0xAC71, u64::from(m) << 32 | index)?;
            out.check(p.apply(&Permutation::identity(m))? == p, || {
                (
                    format!("identity action moves {p}"),
                    json!({ "pattern": p }),
                )
            });
            for sigma in all.iter().take(8) {
                for tau in all.iter().rev().take(8) {
                    let composed = p.apply(&sigma.compose(tau)?)?;
                    let staged = p.apply(tau)?.apply(sigma)?;
                    out.check(composed == staged, || {
                        (
                            format!("action of a composite relabeling differs on {p}"),
                            json!({
                                "pattern": p,
                                "sigma": sigma_images(sigma),
                                "tau": sigma_images(tau),
                            }),
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Everything the integration suite runs under the "small lemma" umbrella.
pub fn check_all_small_properties() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    out.absorb(check_galois(6)?);
    out.absorb(check_merge_fiber_lemma(6)?);
    out.absorb(check_top_fiber_triples(6)?);
    out.absorb(check_projection_amalgamation(6)?);
    out.absorb(check_fiber_decomposition(4)?);
    out.absorb(check_forced_membership(4)?);
    out.absorb(check_one_merge_criterion(4)?);
    out.absorb(check_induced_stability(5)?);
    out.absorb(check_hole_propagation(5)?);
    out.absorb(check_bound_propagation(5)?);
    out.absorb(check_tail_propagation(5)?);
    out.absorb(check_amalgamation_identity(5, 12, 0xBEEF)?);
    out.absorb(check_action_laws(5, 6, 0xACE)?);
    Ok(out)
}
