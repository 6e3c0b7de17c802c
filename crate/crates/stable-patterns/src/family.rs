//! The eighteen level-indexed pattern families.
//!
//! Each family assigns to every ground size `m` a hereditary stable pattern,
//! coherently: inducing the level-`m'` pattern by any partition into `m`
//! blocks returns the level-`m` pattern. Families are the combinatorial
//! fingerprints that the classification attaches to minimal subspaces; here
//! they are plain generators, checked by [`check_coherence`] and matched
//! against observed traces by [`identify_family`].
//!
//! Cardinality parameters are clamped to the ground size (`bound j` over
//! `{1..m}` with `j > m` means every subset), which is what makes the
//! generators total in `m`. Families 7-10 switch from the anchored-everything
//! pattern to a composite family once the ground size passes their threshold;
//! the switch level lands on the composite family's `r = 0` boundary, which
//! collapses back to the anchored pattern, so the two branches agree there.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ground::{enumerate_partitions, OrderedPartition};
use crate::pattern::Pattern;
use crate::standard::{
    a1_pattern, a_pattern, d_pattern, full_pattern, hereditary_catalog, phi_pattern,
};
use crate::{Error, Result};

/// Parameters a family may carry; which ones are required depends on the id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FamilyParams {
    pub q: Option<u8>,
    pub l: Option<u8>,
    pub j: Option<u8>,
    pub j_prime: Option<u8>,
}

/// One of the eighteen families, with validated parameters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PatternFamily {
    id: u8,
    params: FamilyParams,
}

impl PatternFamily {
    pub fn new(id: u8, params: FamilyParams) -> Result<Self> {
        let spec = signature(id)?;
        let check = |name: &str, value: Option<u8>, wanted: bool| -> Result<()> {
            match (value, wanted) {
                (Some(v), true) if v >= 1 => Ok(()),
                (Some(_), true) => Err(Error::usage(format!(
                    "family {id}: parameter {name} must be at least 1"
                ))),
                (None, true) => Err(Error::usage(format!(
                    "family {id} requires parameter {name}"
                ))),
                (Some(_), false) => Err(Error::usage(format!(
                    "family {id} takes no parameter {name}"
                ))),
                (None, false) => Ok(()),
            }
        };
        check("q", params.q, spec.q)?;
        check("l", params.l, spec.l)?;
        check("j", params.j, spec.j)?;
        check("j_prime", params.j_prime, spec.j_prime)?;
        if let (Some(q), Some(l)) = (params.q, params.l) {
            if l <= q {
                return Err(Error::usage(format!("family {id} needs l > q")));
            }
        }
        if id == 10 {
            let (l, j) = (params.l.unwrap(), params.j.unwrap());
            if j >= l {
                return Err(Error::usage("family 10 needs j < l".into()));
            }
        }
        if matches!(id, 13..=15) {
            let (j, jp) = (params.j.unwrap(), params.j_prime.unwrap());
            if jp >= j {
                return Err(Error::usage(format!("family {id} needs j' < j")));
            }
        }
        Ok(Self { id, params })
    }

    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }
}

struct ParamSignature {
    q: bool,
    l: bool,
    j: bool,
    j_prime: bool,
}

fn signature(id: u8) -> Result<ParamSignature> {
    let sig = |q, l, j, j_prime| ParamSignature { q, l, j, j_prime };
    Ok(match id {
        1 | 2 | 16 | 17 => sig(false, false, false, false),
        3 | 4 | 5 | 6 | 11 | 12 | 18 => sig(false, false, true, false),
        7 => sig(true, false, false, false),
        8 => sig(true, true, false, false),
        9 => sig(true, false, true, false),
        10 => sig(true, true, true, false),
        13..=15 => sig(false, false, true, true),
        _ => {
            return Err(Error::usage(format!(
                "family id must be between 1 and 18, got {id}"
            )))
        }
    })
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family {}", self.id)?;
        let named = [
            ("q", self.params.q),
            ("l", self.params.l),
            ("j", self.params.j),
            ("j'", self.params.j_prime),
        ];
        let mut sep = '(';
        for (name, value) in named {
            if let Some(v) = value {
                write!(f, "{sep}{name}={v}")?;
                sep = ',';
            }
        }
        if sep == ',' {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Serialize for PatternFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut params = BTreeMap::new();
        if let Some(q) = self.params.q {
            params.insert("q", q);
        }
        if let Some(l) = self.params.l {
            params.insert("l", l);
        }
        if let Some(j) = self.params.j {
            params.insert("j", j);
        }
        if let Some(jp) = self.params.j_prime {
            params.insert("j_prime", jp);
        }
        let mut s = serializer.serialize_struct("PatternFamily", 2)?;
        s.serialize_field("id", &self.id)?;
        s.serialize_field("params", &params)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for PatternFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            id: u8,
            #[serde(default)]
            params: BTreeMap<String, u8>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut params = FamilyParams::default();
        for (k, v) in &repr.params {
            match k.as_str() {
                "q" => params.q = Some(*v),
                "l" => params.l = Some(*v),
                "j" => params.j = Some(*v),
                "j_prime" => params.j_prime = Some(*v),
                other => return Err(D::Error::custom(format!("unknown parameter {other}"))),
            }
        }
        PatternFamily::new(repr.id, params).map_err(D::Error::custom)
    }
}

fn clamped_a(j: u8, m: u8) -> Result<Pattern> {
    a_pattern(j.min(m), m)
}

fn clamped_a1(j: u8, m: u8) -> Result<Pattern> {
    a1_pattern(j.min(m), m)
}

/// The family's pattern at ground size `m >= 1`.
pub fn family_pattern(family: &PatternFamily, m: u8) -> Result<Pattern> {
    if m < 1 {
        return Err(Error::usage("family levels start at m = 1".into()));
    }
    let p = family.params;
    let q = p.q.unwrap_or(0);
    let l = p.l.unwrap_or(0);
    let j = p.j.unwrap_or(0);
    let jp = p.j_prime.unwrap_or(0);
    // The composite branch of families 7-10: anchored-everything up to the
    // threshold, then the composite family with indices sliding with m.
    let composite = |threshold: u8, s_offset: u8, m: u8| -> Result<Pattern> {
        if m <= threshold {
            a1_pattern(m, m)
        } else {
            d_pattern(m - threshold - 1, m - s_offset, m)
        }
    };
    match family.id {
        1 => full_pattern(m),
        2 => phi_pattern(m),
        3 => clamped_a(j, m),
        4 => clamped_a(j, m)?.union(&full_pattern(m)?),
        5 => clamped_a(j, m)?.union(&phi_pattern(m)?),
        6 => clamped_a1(j, m),
        7 => composite(q + 2, q, m),
        8 => composite(l, q, m),
        9 => clamped_a(j, m)?.union(&composite(q + 2, q, m)?),
        10 => clamped_a(j, m)?.union(&composite(l, q, m)?),
        11 => clamped_a1(j, m)?.union(&full_pattern(m)?),
        12 => clamped_a1(j, m)?.union(&phi_pattern(m)?),
        13 => clamped_a1(j, m)?.union(&clamped_a(jp, m)?),
        14 => clamped_a1(j, m)?
            .union(&clamped_a(jp, m)?)?
            .union(&full_pattern(m)?),
        15 => clamped_a1(j, m)?
            .union(&clamped_a(jp, m)?)?
            .union(&phi_pattern(m)?),
        16 => a_pattern(m, m),
        17 => a1_pattern(m, m),
        18 => a1_pattern(m, m)?.union(&clamped_a(j, m)?),
        other => Err(Error::usage(format!("family id {other} out of range"))),
    }
}

/// A coherence violation found by [`check_coherence`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CoherenceFailure {
    /// Inducing the upper level did not return the lower level.
    Projection {
        upper_level: u8,
        lower_level: u8,
        gamma: OrderedPartition,
        induced: Pattern,
        expected: Pattern,
    },
    /// A level's pattern is missing from the hereditary catalog.
    Membership { level: u8, pattern: Pattern },
}

/// Result of a coherence check; failures are report entries, never errors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub family: PatternFamily,
    pub max_level: u8,
    pub projection_checks: u64,
    pub membership_checks: u64,
    pub failures: Vec<CoherenceFailure>,
    pub coherent: bool,
}

/// Verifies, for all `3 <= m < m' <= max_level` and every partition of
/// `{1..m'}` into `m` blocks, that the induced upper pattern equals the lower
/// one, and that each level's pattern belongs to the hereditary catalog.
pub fn check_coherence(family: &PatternFamily, max_level: u8) -> Result<CoherenceReport> {
    if max_level < 3 {
        return Err(Error::usage("coherence checking starts at level 3".into()));
    }
    let mut report = CoherenceReport {
        family: *family,
        max_level,
        projection_checks: 0,
        membership_checks: 0,
        failures: Vec::new(),
        coherent: true,
    };
    let levels: Vec<Pattern> = (3..=max_level)
        .map(|m| family_pattern(family, m))
        .collect::<Result<_>>()?;
    for m in 3..=max_level {
        let catalog = hereditary_catalog(m)?;
        let pattern = &levels[(m - 3) as usize];
        report.membership_checks += 1;
        if !catalog.contains(pattern) {
            report.failures.push(CoherenceFailure::Membership {
                level: m,
                pattern: pattern.clone(),
            });
        }
    }
    for upper in 4..=max_level {
        for lower in 3..upper {
            let expected = &levels[(lower - 3) as usize];
            let source = &levels[(upper - 3) as usize];
            for gamma in enumerate_partitions(upper, lower)? {
                report.projection_checks += 1;
                let induced = source.induce(&gamma)?;
                if induced != *expected {
                    report.failures.push(CoherenceFailure::Projection {
                        upper_level: upper,
                        lower_level: lower,
                        gamma,
                        induced,
                        expected: expected.clone(),
                    });
                }
            }
        }
    }
    report.coherent = report.failures.is_empty();
    Ok(report)
}

/// Default parameter grid: every family with parameters up to `cap`
/// (subject to side conditions), in `(id, params)` order.
pub fn families_on_grid(cap: u8) -> Vec<PatternFamily> {
    let mut out = Vec::new();
    let mut push = |id: u8, params: FamilyParams| {
        out.push(PatternFamily::new(id, params).expect("grid parameters are valid"));
    };
    for id in [1u8, 2, 16, 17] {
        push(id, FamilyParams::default());
    }
    for id in [3u8, 4, 5, 6, 11, 12, 18] {
        for j in 1..=cap {
            push(
                id,
                FamilyParams {
                    j: Some(j),
                    ..Default::default()
                },
            );
        }
    }
    for q in 1..=cap {
        push(
            7,
            FamilyParams {
                q: Some(q),
                ..Default::default()
            },
        );
    }
    for q in 1..=cap {
        for l in (q + 1)..=cap {
            push(
                8,
                FamilyParams {
                    q: Some(q),
                    l: Some(l),
                    ..Default::default()
                },
            );
        }
    }
    for q in 1..=cap {
        for j in 1..=cap {
            push(
                9,
                FamilyParams {
                    q: Some(q),
                    j: Some(j),
                    ..Default::default()
                },
            );
        }
    }
    for q in 1..=cap {
        for l in (q + 1)..=cap {
            for j in 1..l {
                push(
                    10,
                    FamilyParams {
                        q: Some(q),
                        l: Some(l),
                        j: Some(j),
                        ..Default::default()
                    },
                );
            }
        }
    }
    for id in [13u8, 14, 15] {
        for j in 2..=cap {
            for jp in 1..j {
                push(
                    id,
                    FamilyParams {
                        j: Some(j),
                        j_prime: Some(jp),
                        ..Default::default()
                    },
                );
            }
        }
    }
    out.sort();
    out
}

/// Outcome of matching a trace against the family grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identification {
    /// All grid matches generate the same family; this is the least of them.
    Identified(PatternFamily),
    /// No grid family matches, or the trace is too short to separate
    /// genuinely different matches.
    Unknown,
}

/// Matches a trace of consecutive-level patterns against the family grid.
///
/// Grid parameterizations that coincide as generators (checked on levels
/// `3..=7`) count as one family; if the trace is matched by generators from
/// more than one such class it is reported as unknown rather than guessed.
pub fn identify_family(trace: &[Pattern], grid_cap: u8) -> Result<Identification> {
    if trace.is_empty() {
        return Err(Error::usage(
            "an identification trace must be nonempty".into(),
        ));
    }
    let start = trace[0].ground_size();
    for (i, p) in trace.iter().enumerate() {
        if p.dimension() != 1 {
            return Err(Error::usage(
                "identification traces hold one-dimensional patterns".into(),
            ));
        }
        if p.ground_size() != start + i as u8 {
            return Err(Error::usage(format!(
                "trace levels must be consecutive; entry {i} has ground {} instead of {}",
                p.ground_size(),
                start + i as u8
            )));
        }
    }
    let separation_top = (start + trace.len() as u8 - 1).max(7);
    let mut matches: Vec<(Vec<Pattern>, PatternFamily)> = Vec::new();
    'candidates: for family in families_on_grid(grid_cap) {
        for (i, p) in trace.iter().enumerate() {
            if family_pattern(&family, start + i as u8)? != *p {
                continue 'candidates;
            }
        }
        let fingerprint: Vec<Pattern> = (3..=separation_top)
            .map(|m| family_pattern(&family, m))
            .collect::<Result<_>>()?;
        matches.push((fingerprint, family));
    }
    let Some((fingerprint, least)) = matches.first().cloned() else {
        return Ok(Identification::Unknown);
    };
    if matches.iter().all(|(f, _)| *f == fingerprint) {
        Ok(Identification::Identified(least))
    } else {
        Ok(Identification::Unknown)
    }
}
