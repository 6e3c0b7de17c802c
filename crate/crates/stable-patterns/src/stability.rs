//! Stability checking and the lift machinery.
//!
//! A pattern over `{1..m}` is k-stable when, for every block count
//! `2 <= k' <= k`, all partitions with that many blocks induce the same
//! pattern. A *stable lift* of an m-stable pattern `q` is an (m+1)-stable
//! pattern whose induced pattern under every one-merge partition is `q`;
//! iterating lifts level by level decides the hereditary and unique-lift
//! classifications and powers the lift-based enumeration of all stable
//! patterns.
//!
//! Lift search works on the fiber decomposition of the one-merge projection
//! that joins the top two elements: each base vector with a top-element
//! component has a three-element fiber per such component, vectors without
//! one lift uniquely. A candidate lift picks a nonempty piece of every
//! fiber; it survives exactly when each member's projection under every
//! one-merge partition lands in the base (a per-member filter) and every
//! base vector is hit under every one-merge partition (a monotone covering
//! condition). The search enumerates covering-complete member sets
//! depth-first, pruning a prefix as soon as even taking all remaining
//! members cannot complete the cover; for monotone constraints that prune is
//! exact, so the walk only visits prefixes that extend to solutions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ground::{for_each_partition, mask_full, OrderedPartition};
use crate::pattern::{count_patterns, enumerate_patterns, Pattern};
use crate::standard;
use crate::{Error, Result};

/// Verdict of a stability check, with enough evidence to recheck it: a
/// witness pair of partitions inducing different patterns on failure, or the
/// common induced pattern per block count on success.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: bool,
    pub k_checked: u8,
    pub witness: Option<(OrderedPartition, OrderedPartition)>,
    pub induced: Vec<(u8, Pattern)>,
}

impl Serialize for StabilityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("StabilityReport", 4)?;
        s.serialize_field("verdict", &self.verdict)?;
        s.serialize_field("k", &self.k_checked)?;
        s.serialize_field("witness", &self.witness)?;
        let induced: serde_json::Map<String, serde_json::Value> = self
            .induced
            .iter()
            .map(|(k, p)| (k.to_string(), serde_json::to_value(p).unwrap()))
            .collect();
        s.serialize_field("induced", &induced)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for StabilityReport {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            verdict: bool,
            k: u8,
            witness: Option<(OrderedPartition, OrderedPartition)>,
            induced: std::collections::BTreeMap<String, Pattern>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let induced = repr
            .induced
            .into_iter()
            .map(|(k, p)| {
                k.parse::<u8>()
                    .map(|k| (k, p))
                    .map_err(|e| D::Error::custom(format!("bad block count {k}: {e}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(StabilityReport {
            verdict: repr.verdict,
            k_checked: repr.k,
            witness: repr.witness,
            induced,
        })
    }
}

/// Checks k-stability by scanning every partition with `2..=k` blocks in
/// canonical order. On failure the witness pair is `(mismatching partition,
/// reference partition)` where the reference is the first partition of that
/// block count.
pub fn is_k_stable(p: &Pattern, k: u8) -> Result<StabilityReport> {
    let m = p.ground_size();
    if k < 2 || k > m {
        return Err(Error::usage(format!(
            "stability level needs 2 <= k <= m, got k={k}, m={m}"
        )));
    }
    let mut induced = Vec::new();
    for block_count in 2..=k {
        let mut reference: Option<(OrderedPartition, Pattern)> = None;
        let mut witness = None;
        let _ = for_each_partition(m, block_count, |alpha| {
            let image = p.induce(alpha).expect("ground sizes match");
            match &reference {
                None => {
                    reference = Some((alpha.clone(), image));
                    std::ops::ControlFlow::Continue(())
                }
                Some((first, expected)) => {
                    if image != *expected {
                        witness = Some((alpha.clone(), first.clone()));
                        std::ops::ControlFlow::Break(())
                    } else {
                        std::ops::ControlFlow::Continue(())
                    }
                }
            }
        })?;
        if let Some(pair) = witness {
            return Ok(StabilityReport {
                verdict: false,
                k_checked: k,
                witness: Some(pair),
                induced: Vec::new(),
            });
        }
        let (_, image) = reference.expect("at least one partition exists");
        induced.push((block_count, image));
    }
    Ok(StabilityReport {
        verdict: true,
        k_checked: k,
        witness: None,
        induced,
    })
}

/// Full stability at the pattern's own level. Levels below 2 have no
/// partitions to disagree on.
pub fn is_stable(p: &Pattern) -> Result<bool> {
    if p.ground_size() < 2 {
        return Ok(true);
    }
    Ok(is_k_stable(p, p.ground_size())?.verdict)
}

/// Projection of a subset mask under the one-merge partition joining `i < j`
/// (1-based).
fn merge_project(c: u32, i: u8, j: u8) -> u32 {
    let low = c & mask_full(j - 1);
    let high = (c & !mask_full(j)) >> 1;
    let pair = (1 << (i - 1)) | (1 << (j - 1));
    let merged = if c & pair != 0 { 1 << (i - 1) } else { 0 };
    (low & !(1 << (i - 1))) | merged | high
}

/// One constraint per (one-merge partition, base vector) pair, packed into a
/// word bitset.
#[derive(Clone)]
struct CoverSet(Vec<u64>);

impl CoverSet {
    fn zero(words: usize) -> Self {
        CoverSet(vec![0; words])
    }

    fn set(&mut self, bit: usize) {
        self.0[bit / 64] |= 1 << (bit % 64);
    }

    fn union_with(&mut self, other: &CoverSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn union_covers(&self, other: &CoverSet, target: &CoverSet) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .zip(&target.0)
            .all(|((a, b), t)| (a | b) & t == *t)
    }
}

struct LiftProblem {
    m1: u8,
    n: u8,
    elements: Vec<(Vec<u32>, CoverSet)>,
    suffix: Vec<CoverSet>,
    target: CoverSet,
}

/// Outcome of one lift enumeration; `complete` is false only when a node
/// budget ran out.
struct LiftOutcome {
    lifts: Vec<Pattern>,
    complete: bool,
    nodes: u64,
}

fn build_lift_problem(q: &Pattern) -> LiftProblem {
    let m = q.ground_size();
    let m1 = m + 1;
    let n = q.dimension();
    let top_bit = 1u32 << (m - 1);
    let up_bit = 1u32 << m;

    let base_vectors: Vec<&Vec<u32>> = q.mask_vectors().iter().collect();
    let index: HashMap<&Vec<u32>, usize> = base_vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();
    let t = base_vectors.len();

    let merges: Vec<(u8, u8)> = (1..=m1)
        .flat_map(|i| ((i + 1)..=m1).map(move |j| (i, j)))
        .collect();
    let constraints = merges.len() * t;
    let words = constraints.div_ceil(64);
    let mut target = CoverSet::zero(words);
    for bit in 0..constraints {
        target.set(bit);
    }

    // The fiber of a base vector: componentwise, a component holding the top
    // element expands to {itself, moved up, extended up}.
    let mut elements: Vec<(Vec<u32>, CoverSet)> = Vec::new();
    for v in &base_vectors {
        let mut fibers: Vec<Vec<u32>> = vec![vec![]];
        for &c in v.iter() {
            let choices: Vec<u32> = if c & top_bit != 0 {
                vec![c, (c | up_bit) & !top_bit, c | up_bit]
            } else {
                vec![c]
            };
            let mut next = Vec::with_capacity(fibers.len() * choices.len());
            for f in &fibers {
                for &choice in &choices {
                    let mut w = f.clone();
                    w.push(choice);
                    next.push(w);
                }
            }
            fibers = next;
        }
        'member: for w in fibers {
            let mut cover = CoverSet::zero(words);
            for (g, &(i, j)) in merges.iter().enumerate() {
                let projected: Vec<u32> = w.iter().map(|&c| merge_project(c, i, j)).collect();
                match index.get(&projected) {
                    Some(&v_idx) => cover.set(g * t + v_idx),
                    None => continue 'member, // projects outside the base
                }
            }
            elements.push((w, cover));
        }
    }
    elements.sort_by(|a, b| a.0.cmp(&b.0));

    let mut suffix = vec![CoverSet::zero(words); elements.len() + 1];
    for i in (0..elements.len()).rev() {
        let mut s = suffix[i + 1].clone();
        s.union_with(&elements[i].1);
        suffix[i] = s;
    }

    LiftProblem {
        m1,
        n,
        elements,
        suffix,
        target,
    }
}

impl LiftProblem {
    /// Depth-first enumeration of covering-complete member sets, in
    /// canonical member order with inclusion tried first. Stops after
    /// `limit` solutions or `budget` visited nodes when given.
    fn enumerate(&self, limit: Option<usize>, budget: Option<u64>) -> LiftOutcome {
        let mut out = LiftOutcome {
            lifts: Vec::new(),
            complete: true,
            nodes: 0,
        };
        let zero = CoverSet::zero(self.target.0.len());
        let mut chosen: Vec<usize> = Vec::new();
        self.walk(0, &zero, &mut chosen, limit, budget, &mut out);
        out.lifts.sort_unstable();
        out
    }

    fn walk(
        &self,
        idx: usize,
        covered: &CoverSet,
        chosen: &mut Vec<usize>,
        limit: Option<usize>,
        budget: Option<u64>,
        out: &mut LiftOutcome,
    ) -> bool {
        if let Some(cap) = limit {
            if out.lifts.len() >= cap {
                return false;
            }
        }
        if let Some(cap) = budget {
            if out.nodes >= cap {
                out.complete = false;
                return false;
            }
        }
        out.nodes += 1;
        if !covered.union_covers(&self.suffix[idx], &self.target) {
            return true;
        }
        if idx == self.elements.len() {
            let vectors: BTreeSet<Vec<u32>> =
                chosen.iter().map(|&i| self.elements[i].0.clone()).collect();
            out.lifts
                .push(Pattern::from_masks(self.m1, self.n, vectors));
            return true;
        }
        let mut with = covered.clone();
        with.union_with(&self.elements[idx].1);
        chosen.push(idx);
        let keep_going = self.walk(idx + 1, &with, chosen, limit, budget, out);
        chosen.pop();
        if !keep_going {
            return false;
        }
        self.walk(idx + 1, covered, chosen, limit, budget, out)
    }
}

fn lift_solutions(q: &Pattern, limit: Option<usize>, budget: Option<u64>) -> LiftOutcome {
    build_lift_problem(q).enumerate(limit, budget)
}

/// All stable lifts of `q`: the (m+1)-stable patterns inducing `q` under
/// every one-merge partition.
///
/// With `require_stable_base` set an unstable base is a domain error; unset,
/// the survivors of the one-merge filter are additionally stability-checked
/// (an unstable base admits none, since a stable lift's induced patterns are
/// stable).
pub fn stable_lifts(q: &Pattern, require_stable_base: bool) -> Result<Vec<Pattern>> {
    if q.ground_size() + 1 > crate::ground::MAX_GROUND {
        return Err(Error::usage(
            "lift would exceed the ground-size limit".into(),
        ));
    }
    let base_stable = is_stable(q)?;
    if require_stable_base && !base_stable {
        return Err(Error::domain(format!(
            "base pattern {q} is not stable at its own level"
        )));
    }
    let mut lifts = lift_solutions(q, None, None).lifts;
    if !base_stable {
        lifts.retain(|p| is_stable(p).unwrap_or(false));
    }
    Ok(lifts)
}

/// How `enumerate_stable` collects the stable patterns at one level.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumerationMethod {
    /// Scan every pattern and filter by the stability definition.
    Brute,
    /// Grow from level 2 (where every pattern is vacuously stable) by
    /// repeated stable lifts, deduplicating per level.
    Lift,
}

/// The set of all m-stable m_n-patterns.
pub fn enumerate_stable(
    m: u8,
    n: u8,
    method: EnumerationMethod,
    budget: Option<u64>,
) -> Result<BTreeSet<Pattern>> {
    match method {
        EnumerationMethod::Brute => {
            let mut out = BTreeSet::new();
            for p in enumerate_patterns(m, n, budget)? {
                if m < 2 || is_k_stable(&p, m)?.verdict {
                    out.insert(p);
                }
            }
            Ok(out)
        }
        EnumerationMethod::Lift => {
            if n != 1 {
                return Err(Error::Unsupported(
                    "lift-based enumeration is defined for dimension 1".into(),
                ));
            }
            if m < 2 {
                return Err(Error::usage(
                    "lift-based enumeration starts from level 2".into(),
                ));
            }
            let mut level: BTreeSet<Pattern> = enumerate_patterns(2, 1, None)?.collect();
            for _ in 2..m {
                let mut next = BTreeSet::new();
                for q in &level {
                    next.extend(lift_solutions(q, None, None).lifts);
                }
                level = next;
            }
            Ok(level)
        }
    }
}

/// One step of a lift chain; the pattern projects to its base under every
/// one-merge partition at its level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftNode {
    pub pattern: Pattern,
    pub base: Pattern,
    pub depth: u8,
}

impl LiftNode {
    pub fn verify(&self) -> bool {
        let m1 = self.pattern.ground_size();
        if m1 != self.base.ground_size() + 1 || self.depth != m1 {
            return false;
        }
        (1..=m1).all(|i| {
            ((i + 1)..=m1).all(|j| {
                let gamma = OrderedPartition::merge_pair(m1, i, j).unwrap();
                self.pattern.induce(&gamma).unwrap() == self.base
            })
        })
    }
}

/// Why a lift-chain analysis stopped short of its target level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ChainFailure {
    /// The pattern at `level` admits no stable lift.
    NoStableLift { level: u8, pattern: Pattern },
    /// The pattern at `level` admits several stable lifts.
    MultipleStableLifts {
        level: u8,
        pattern: Pattern,
        count: usize,
    },
}

/// Outcome of a hereditary or unique-lift analysis up to a finite level.
/// A true verdict carries a witnessing chain; a false verdict is exact and
/// carries the obstruction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftChainReport {
    pub verdict: bool,
    pub base_level: u8,
    pub target_level: u8,
    pub chain: Vec<LiftNode>,
    pub failure: Option<ChainFailure>,
}

impl fmt::Display for LiftChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.verdict {
            write!(
                f,
                "chain reaches level {} from level {}",
                self.target_level, self.base_level
            )
        } else {
            match &self.failure {
                Some(ChainFailure::NoStableLift { level, .. }) => {
                    write!(f, "no stable lift at level {level}")
                }
                Some(ChainFailure::MultipleStableLifts { level, count, .. }) => {
                    write!(f, "{count} stable lifts at level {level}")
                }
                None => write!(f, "no chain"),
            }
        }
    }
}

fn require_stable(p: &Pattern) -> Result<()> {
    if !is_stable(p)? {
        return Err(Error::domain(format!(
            "pattern {p} is not stable at its own level"
        )));
    }
    Ok(())
}

/// Decides whether a stable pattern extends through stable lifts all the way
/// to `depth`. A chain of one-step lifts witnesses every projection from the
/// higher levels because any partition factors through successive merges, so
/// a true verdict means the pattern survives to `depth` exactly; a false
/// verdict is final (no chain exists at all).
pub fn hereditary_up_to(p: &Pattern, depth: u8) -> Result<LiftChainReport> {
    let m = p.ground_size();
    if depth < m {
        return Err(Error::usage(format!(
            "chain target {depth} is below the pattern's level {m}"
        )));
    }
    require_stable(p)?;
    let mut memo: HashMap<Pattern, Option<Vec<Pattern>>> = HashMap::new();
    let chain = find_chain(p, depth, &mut memo);
    Ok(match chain {
        Some(rest) => {
            let mut nodes = Vec::new();
            let mut base = p.clone();
            for lifted in rest {
                nodes.push(LiftNode {
                    depth: lifted.ground_size(),
                    base: base.clone(),
                    pattern: lifted.clone(),
                });
                base = lifted;
            }
            LiftChainReport {
                verdict: true,
                base_level: m,
                target_level: depth,
                chain: nodes,
                failure: None,
            }
        }
        None => LiftChainReport {
            verdict: false,
            base_level: m,
            target_level: depth,
            chain: Vec::new(),
            failure: Some(ChainFailure::NoStableLift {
                level: m,
                pattern: p.clone(),
            }),
        },
    })
}

fn find_chain(
    p: &Pattern,
    depth: u8,
    memo: &mut HashMap<Pattern, Option<Vec<Pattern>>>,
) -> Option<Vec<Pattern>> {
    if p.ground_size() == depth {
        return Some(Vec::new());
    }
    if let Some(cached) = memo.get(p) {
        return cached.clone();
    }
    let mut found = None;
    for lift in lift_solutions(p, None, None).lifts {
        if let Some(mut rest) = find_chain(&lift, depth, memo) {
            rest.insert(0, lift);
            found = Some(rest);
            break;
        }
    }
    memo.insert(p.clone(), found.clone());
    found
}

/// Decides whether a stable pattern has exactly one stable lift at every
/// level up to `depth`, following the then-unique chain.
pub fn usl_up_to(p: &Pattern, depth: u8) -> Result<LiftChainReport> {
    let m = p.ground_size();
    if depth < m {
        return Err(Error::usage(format!(
            "chain target {depth} is below the pattern's level {m}"
        )));
    }
    require_stable(p)?;
    let mut chain = Vec::new();
    let mut current = p.clone();
    for level in m..depth {
        let lifts = lift_solutions(&current, None, None).lifts;
        match lifts.len() {
            0 => {
                return Ok(LiftChainReport {
                    verdict: false,
                    base_level: m,
                    target_level: depth,
                    chain,
                    failure: Some(ChainFailure::NoStableLift {
                        level,
                        pattern: current,
                    }),
                })
            }
            1 => {
                let lifted = lifts.into_iter().next().unwrap();
                chain.push(LiftNode {
                    depth: lifted.ground_size(),
                    base: current.clone(),
                    pattern: lifted.clone(),
                });
                current = lifted;
            }
            count => {
                return Ok(LiftChainReport {
                    verdict: false,
                    base_level: m,
                    target_level: depth,
                    chain,
                    failure: Some(ChainFailure::MultipleStableLifts {
                        level,
                        pattern: current,
                        count,
                    }),
                })
            }
        }
    }
    Ok(LiftChainReport {
        verdict: true,
        base_level: m,
        target_level: depth,
        chain,
        failure: None,
    })
}

/// One compared lift set: the computed side filters the stable lifts of the
/// base by survival to `depth`; the expected side is built directly from the
/// catalog constructors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftSetCheck {
    pub item: String,
    pub base: Pattern,
    pub computed: BTreeSet<Pattern>,
    pub expected: BTreeSet<Pattern>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftSetsReport {
    pub m: u8,
    pub depth: u8,
    pub checks: Vec<LiftSetCheck>,
    pub all_match: bool,
}

/// Computes the surviving lift sets of the three unbounded-cardinality
/// bases (`j = m` plain, anchored, and anchored joined with a bound) and
/// compares them against their closed-form lists.
pub fn verify_lift_set_displays(m: u8, depth: u8) -> Result<LiftSetsReport> {
    if m < 3 {
        return Err(Error::usage("lift-set displays start at m = 3".into()));
    }
    let m1 = m + 1;
    let full1 = standard::full_pattern(m1)?;
    let surviving = |base: &Pattern| -> Result<BTreeSet<Pattern>> {
        let mut kept = BTreeSet::new();
        for lift in stable_lifts(base, true)? {
            if hereditary_up_to(&lift, depth)?.verdict {
                kept.insert(lift);
            }
        }
        Ok(kept)
    };
    let mut checks = Vec::new();

    // Plain unbounded base.
    {
        let base = standard::a_pattern(m, m)?;
        let am1 = standard::a_pattern(m - 1, m1)?;
        let mut expected: BTreeSet<Pattern> = BTreeSet::new();
        expected.insert(standard::a_pattern(m, m1)?);
        expected.insert(standard::a_pattern(m1, m1)?);
        expected.insert(am1.union(&standard::a1_pattern(m, m1)?)?);
        expected.insert(am1.union(&full1)?);
        for l in 2..=m1 {
            expected.insert(standard::d_pattern(1, l, m1)?.union(&am1)?);
        }
        let computed = surviving(&base)?;
        checks.push(LiftSetCheck {
            item: "plain unbounded".into(),
            matches: computed == expected,
            base,
            computed,
            expected,
        });
    }

    // Anchored unbounded base.
    {
        let base = standard::a1_pattern(m, m)?;
        let mut expected: BTreeSet<Pattern> = BTreeSet::new();
        expected.insert(standard::a1_pattern(m, m1)?);
        expected.insert(standard::a1_pattern(m1, m1)?);
        expected.insert(standard::a1_pattern(m - 1, m1)?.union(&full1)?);
        for l in 3..=m1 {
            expected.insert(standard::d_pattern(1, l, m1)?);
        }
        let computed = surviving(&base)?;
        checks.push(LiftSetCheck {
            item: "anchored unbounded".into(),
            matches: computed == expected,
            base,
            computed,
            expected,
        });
    }

    // Anchored unbounded joined with each admissible bound.
    for j in 1..=m - 2 {
        let aj1 = standard::a_pattern(j, m1)?;
        let base = standard::a1_pattern(m, m)?.union(&standard::a_pattern(j, m)?)?;
        let mut expected: BTreeSet<Pattern> = BTreeSet::new();
        expected.insert(standard::a1_pattern(m, m1)?.union(&aj1)?);
        expected.insert(
            standard::a1_pattern(m - 1, m1)?
                .union(&aj1)?
                .union(&full1)?,
        );
        expected.insert(standard::a1_pattern(m1, m1)?.union(&aj1)?);
        for l in 3..=m1 {
            expected.insert(standard::d_pattern(1, l, m1)?.union(&aj1)?);
        }
        let computed = surviving(&base)?;
        checks.push(LiftSetCheck {
            item: format!("anchored unbounded + bound {j}"),
            matches: computed == expected,
            base,
            computed,
            expected,
        });
    }

    let all_match = checks.iter().all(|c| c.matches);
    Ok(LiftSetsReport {
        m,
        depth,
        checks,
        all_match,
    })
}

/// Result of a budgeted exploration: the stable patterns found so far and
/// whether the search space was exhausted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExploreReport {
    pub patterns: BTreeSet<Pattern>,
    pub complete: bool,
    pub candidates_tested: u64,
}

/// Budgeted exploration of the stable patterns in dimension 2 (and the
/// dimension-1 delegate). For `(3, 2)` this grows lifts from the complete
/// level-2 base of 511 patterns and stops when the node budget runs out;
/// exhaustion is a reported state, not an error.
pub fn explore_stable(m: u8, n: u8, node_budget: u64) -> Result<ExploreReport> {
    match (m, n) {
        (_, 1) => {
            let patterns = enumerate_stable(m, 1, EnumerationMethod::Lift, None)?;
            Ok(ExploreReport {
                patterns,
                complete: true,
                candidates_tested: 0,
            })
        }
        (2, 2) => {
            let patterns: BTreeSet<Pattern> = enumerate_patterns(2, 2, None)?.collect();
            Ok(ExploreReport {
                patterns,
                complete: true,
                candidates_tested: count_patterns(2, 2)?.try_into().unwrap_or(u64::MAX),
            })
        }
        (3, 2) => {
            let bases = enumerate_patterns(2, 2, None)?;
            let mut found = BTreeSet::new();
            let mut used = 0u64;
            let mut complete = true;
            for base in bases {
                if used >= node_budget {
                    complete = false;
                    break;
                }
                let outcome = lift_solutions(&base, None, Some(node_budget - used));
                used += outcome.nodes;
                found.extend(outcome.lifts);
                if !outcome.complete {
                    complete = false;
                    break;
                }
            }
            Ok(ExploreReport {
                patterns: found,
                complete,
                candidates_tested: used,
            })
        }
        _ => Err(Error::Unsupported(format!(
            "exploration supports dimension 1, or dimension 2 with m <= 3; got m={m}, n={n}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSubset;
    use crate::standard::{
        a1_pattern, a_pattern, d_pattern, full_pattern, phi_pattern, standard_catalog,
    };

    fn p1(m: u8, subsets: &[&[u8]]) -> Pattern {
        Pattern::from_subsets(
            m,
            subsets
                .iter()
                .map(|s| GroundSubset::new(m, s.iter().copied()).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn initial_segments_are_stable() {
        let report = is_k_stable(&phi_pattern(3).unwrap(), 3).unwrap();
        assert!(report.verdict);
        assert_eq!(report.induced.len(), 2);
        assert_eq!(report.induced[0].1, phi_pattern(2).unwrap());
    }

    #[test]
    fn truncated_segments_fail_with_canonical_witness() {
        let p = p1(3, &[&[1], &[1, 2]]);
        let report = is_k_stable(&p, 3).unwrap();
        assert!(!report.verdict);
        let (bad, reference) = report.witness.unwrap();
        assert_eq!(bad, OrderedPartition::merge_pair(3, 1, 2).unwrap());
        assert_eq!(reference, OrderedPartition::merge_pair(3, 2, 3).unwrap());
    }

    #[test]
    fn two_level_patterns_are_vacuously_stable() {
        for p in enumerate_patterns(2, 1, None).unwrap() {
            assert!(is_k_stable(&p, 2).unwrap().verdict);
        }
    }

    #[test]
    fn stability_level_bounds_are_checked() {
        let p = phi_pattern(3).unwrap();
        assert!(is_k_stable(&p, 1).is_err());
        assert!(is_k_stable(&p, 4).is_err());
    }

    #[test]
    fn lifts_of_short_chain_match_the_known_five() {
        let lifts = stable_lifts(&phi_pattern(2).unwrap(), true).unwrap();
        let expected = vec![
            p1(3, &[&[1], &[1, 2], &[1, 3]]),             // anchored bound 2
            p1(3, &[&[1], &[1, 2], &[1, 3], &[1, 2, 3]]), // anchored bound 3
            p1(3, &[&[1], &[1, 2], &[1, 2, 3]]),          // initial segments
            p1(3, &[&[1], &[1, 3], &[1, 2, 3]]),
            p1(3, &[&[1], &[1, 2, 3]]),
        ];
        let expected: BTreeSet<Pattern> = expected.into_iter().collect();
        assert_eq!(lifts.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(lifts.len(), 5);
    }

    #[test]
    fn lift_of_full_pair_is_full_triple() {
        let lifts = stable_lifts(&p1(2, &[&[1, 2]]), true).unwrap();
        assert_eq!(lifts, vec![p1(3, &[&[1, 2, 3]])]);
    }

    #[test]
    fn displaced_singleton_has_no_lift() {
        let lifts = stable_lifts(&p1(2, &[&[2]]), true).unwrap();
        assert!(lifts.is_empty());
    }

    #[test]
    fn unstable_base_is_rejected_or_empty() {
        let p = p1(3, &[&[1], &[1, 2]]);
        assert!(stable_lifts(&p, true).is_err());
        assert_eq!(stable_lifts(&p, false).unwrap(), Vec::<Pattern>::new());
    }

    #[test]
    fn level_three_enumeration_matches_catalog() {
        let brute = enumerate_stable(3, 1, EnumerationMethod::Brute, None).unwrap();
        assert_eq!(brute.len(), 20);
        let lift = enumerate_stable(3, 1, EnumerationMethod::Lift, None).unwrap();
        assert_eq!(brute, lift);
        assert_eq!(brute, standard_catalog(3).unwrap().pattern_set());
    }

    #[test]
    fn brute_refuses_over_budget() {
        assert!(matches!(
            enumerate_stable(5, 1, EnumerationMethod::Brute, None),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn chain_examples() {
        assert!(
            hereditary_up_to(&phi_pattern(3).unwrap(), 6)
                .unwrap()
                .verdict
        );
        assert!(
            hereditary_up_to(&a1_pattern(3, 3).unwrap(), 6)
                .unwrap()
                .verdict
        );
        let doomed = a_pattern(1, 3)
            .unwrap()
            .union(&p1(3, &[&[2, 3], &[1, 2]]))
            .unwrap();
        let report = hereditary_up_to(&doomed, 4).unwrap();
        assert!(!report.verdict);
        assert!(hereditary_up_to(&p1(3, &[&[1], &[1, 2]]), 5).is_err());
    }

    #[test]
    fn chain_nodes_recheck() {
        let report = hereditary_up_to(&phi_pattern(3).unwrap(), 6).unwrap();
        assert_eq!(report.chain.len(), 3);
        for node in &report.chain {
            assert!(node.verify());
        }
        assert_eq!(report.chain[2].pattern, phi_pattern(6).unwrap());
    }

    #[test]
    fn unique_lift_examples() {
        assert!(usl_up_to(&phi_pattern(3).unwrap(), 6).unwrap().verdict);
        assert!(usl_up_to(&a_pattern(1, 3).unwrap(), 6).unwrap().verdict);
        let report = usl_up_to(&a_pattern(3, 3).unwrap(), 4).unwrap();
        assert!(!report.verdict);
        match report.failure.unwrap() {
            ChainFailure::MultipleStableLifts { level, count, .. } => {
                assert_eq!(level, 3);
                assert!(count >= 2);
            }
            other => panic!("unexpected failure {other:?}"),
        }
    }

    #[test]
    fn lift_set_displays_match_at_level_three() {
        let report = verify_lift_set_displays(3, 6).unwrap();
        assert!(report.all_match, "{report:?}");
        // The anchored unbounded base keeps exactly five lifts.
        let anchored = &report.checks[1];
        assert_eq!(anchored.computed.len(), 5);
        assert!(anchored.computed.contains(&a1_pattern(3, 4).unwrap()));
        assert!(anchored.computed.contains(&a1_pattern(4, 4).unwrap()));
        assert!(anchored.computed.contains(
            &a1_pattern(2, 4)
                .unwrap()
                .union(&full_pattern(4).unwrap())
                .unwrap()
        ));
        assert!(anchored.computed.contains(&d_pattern(1, 3, 4).unwrap()));
        assert!(anchored.computed.contains(&d_pattern(1, 4, 4).unwrap()));
        // The plain unbounded base keeps the joined-with-anchored lift.
        let plain = &report.checks[0];
        assert!(plain.computed.contains(
            &a_pattern(2, 4)
                .unwrap()
                .union(&a1_pattern(3, 4).unwrap())
                .unwrap()
        ));
    }

    #[test]
    fn exploration_contract_cases() {
        let base = explore_stable(2, 2, u64::MAX).unwrap();
        assert!(base.complete);
        assert_eq!(base.patterns.len(), 511);

        let partial = explore_stable(3, 2, 50).unwrap();
        assert!(!partial.complete);

        let delegate = explore_stable(3, 1, u64::MAX).unwrap();
        assert!(delegate.complete);
        assert_eq!(delegate.patterns.len(), 20);
    }

    #[test]
    fn explored_two_dimensional_lifts_are_stable() {
        // Whatever the budget lets through must pass the definition check.
        let partial = explore_stable(3, 2, 20_000).unwrap();
        assert!(!partial.patterns.is_empty());
        for p in partial.patterns.iter().take(50) {
            assert!(is_k_stable(p, 3).unwrap().verdict);
        }
    }
}
