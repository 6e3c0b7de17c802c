//! Patterns: nonempty sets of n-tuples of nonempty subsets of `{1..m}`,
//! the action of ordered partitions (induction) and of the symmetric group,
//! exact counting, and deterministic exhaustive generation.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ground::{mask_full, subset_from_members, GroundSubset, OrderedPartition};
use crate::{Error, Result};

/// Default ceiling on exhaustive pattern scans.
pub const DEFAULT_PATTERN_BUDGET: u64 = 1 << 20;

/// An m_n-pattern. Vectors are stored canonically: each component is a
/// subset bitmask, vectors are compared componentwise by mask value, and the
/// set is deduplicated. Every component is nonempty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    m: u8,
    n: u8,
    vectors: BTreeSet<Vec<u32>>,
}

impl Pattern {
    /// Builds a pattern from vectors of subsets, canonicalizing as it goes.
    pub fn new(m: u8, n: u8, vectors: Vec<Vec<GroundSubset>>) -> Result<Self> {
        if n < 1 {
            return Err(Error::usage("pattern dimension must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for v in &vectors {
            if v.len() != n as usize {
                return Err(Error::usage(format!(
                    "vector has {} components, expected {n}",
                    v.len()
                )));
            }
            let mut masks = Vec::with_capacity(n as usize);
            for c in v {
                if c.ground_size() != m {
                    return Err(Error::usage(format!(
                        "component {c} is not over ground {{1..{m}}}"
                    )));
                }
                if c.is_empty() {
                    return Err(Error::usage("pattern components must be nonempty".into()));
                }
                masks.push(c.bits());
            }
            set.insert(masks);
        }
        if set.is_empty() {
            return Err(Error::usage(
                "a pattern must contain at least one vector".into(),
            ));
        }
        Ok(Self { m, n, vectors: set })
    }

    /// One-dimensional pattern from a collection of subsets.
    pub fn from_subsets(m: u8, subsets: impl IntoIterator<Item = GroundSubset>) -> Result<Self> {
        Self::new(m, 1, subsets.into_iter().map(|s| vec![s]).collect())
    }

    pub(crate) fn from_masks(m: u8, n: u8, vectors: BTreeSet<Vec<u32>>) -> Self {
        debug_assert!(!vectors.is_empty());
        debug_assert!(vectors
            .iter()
            .all(|v| v.len() == n as usize && v.iter().all(|&c| c != 0 && c <= mask_full(m))));
        Self { m, n, vectors }
    }

    pub(crate) fn from_masks_n1(m: u8, masks: impl IntoIterator<Item = u32>) -> Self {
        Self::from_masks(m, 1, masks.into_iter().map(|c| vec![c]).collect())
    }

    pub fn ground_size(&self) -> u8 {
        self.m
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub(crate) fn mask_vectors(&self) -> &BTreeSet<Vec<u32>> {
        &self.vectors
    }

    /// For one-dimensional patterns, the member subsets in canonical order.
    pub fn subsets(&self) -> Vec<GroundSubset> {
        debug_assert_eq!(self.n, 1);
        self.vectors
            .iter()
            .map(|v| GroundSubset::from_bits(self.m, v[0]))
            .collect()
    }

    pub fn vectors(&self) -> Vec<Vec<GroundSubset>> {
        self.vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&c| GroundSubset::from_bits(self.m, c))
                    .collect()
            })
            .collect()
    }

    pub fn contains_subset(&self, s: &GroundSubset) -> bool {
        debug_assert_eq!(self.n, 1);
        s.ground_size() == self.m && self.vectors.contains(&vec![s.bits()])
    }

    /// The induced pattern under `gamma`: every component of every vector is
    /// replaced by its block-hit set, and duplicates collapse. For tuples the
    /// product-intersection membership rule factorizes componentwise, which
    /// is what this computes.
    pub fn induce(&self, gamma: &OrderedPartition) -> Result<Pattern> {
        if gamma.ground_size() != self.m {
            return Err(Error::usage(format!(
                "cannot induce a pattern over {{1..{}}} with a partition of {{1..{}}}",
                self.m,
                gamma.ground_size()
            )));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|&c| gamma.project_bits(c)).collect())
            .collect();
        Ok(Pattern::from_masks(gamma.block_count(), self.n, vectors))
    }

    /// Relabels every component through the permutation.
    pub fn apply(&self, sigma: &Permutation) -> Result<Pattern> {
        if sigma.degree() != self.m {
            return Err(Error::usage(format!(
                "permutation degree {} does not match ground size {}",
                sigma.degree(),
                self.m
            )));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|&c| sigma.map_bits(c)).collect())
            .collect();
        Ok(Pattern::from_masks(self.m, self.n, vectors))
    }

    /// Set union of two patterns over the same ground and dimension.
    pub fn union(&self, other: &Pattern) -> Result<Pattern> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::usage(
                "pattern union needs matching ground size and dimension".into(),
            ));
        }
        let vectors = self.vectors.union(&other.vectors).cloned().collect();
        Ok(Pattern::from_masks(self.m, self.n, vectors))
    }

    /// One-dimensional union with extra subsets; the extra collection may be
    /// empty.
    pub fn with_extra_subsets(
        &self,
        subsets: impl IntoIterator<Item = GroundSubset>,
    ) -> Result<Pattern> {
        if self.n != 1 {
            return Err(Error::usage(
                "subset union applies to one-dimensional patterns".into(),
            ));
        }
        let mut vectors = self.vectors.clone();
        for s in subsets {
            if s.ground_size() != self.m || s.is_empty() {
                return Err(Error::usage(format!(
                    "extra subset {s} is empty or not over ground {{1..{}}}",
                    self.m
                )));
            }
            vectors.insert(vec![s.bits()]);
        }
        Ok(Pattern::from_masks(self.m, 1, vectors))
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if self.n == 1 {
                write!(f, "{}", GroundSubset::from_bits(self.m, v[0]))?;
            } else {
                write!(f, "(")?;
                for (j, &c) in v.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", GroundSubset::from_bits(self.m, c))?;
                }
                write!(f, ")")?;
            }
        }
        write!(f, "}}")
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let vectors: Vec<Vec<Vec<u8>>> = self
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&c| GroundSubset::from_bits(self.m, c).members())
                    .collect()
            })
            .collect();
        let mut s = serializer.serialize_struct("Pattern", 3)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("vectors", &vectors)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            m: u8,
            n: u8,
            vectors: Vec<Vec<Vec<u8>>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let vectors = repr
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| subset_from_members::<D::Error>(repr.m, c))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Pattern::new(repr.m, repr.n, vectors).map_err(D::Error::custom)
    }
}

/// A permutation of `{1..m}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// `images[i-1]` is the image of `i`; must be a bijection.
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let m = images.len() as u8;
        let mut seen = vec![false; m as usize];
        for &img in &images {
            if img < 1 || img > m || seen[img as usize - 1] {
                return Err(Error::usage(format!(
                    "images {images:?} are not a bijection on {{1..{m}}}"
                )));
            }
            seen[img as usize - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(m: u8) -> Self {
        Self {
            images: (1..=m).collect(),
        }
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(m: u8, i: u8, j: u8) -> Result<Self> {
        if !(1 <= i && i < j && j <= m) {
            return Err(Error::usage(format!(
                "transposition needs 1 <= i < j <= {m}, got ({i},{j})"
            )));
        }
        let mut images: Vec<u8> = (1..=m).collect();
        images.swap(i as usize - 1, j as usize - 1);
        Ok(Self { images })
    }

    pub fn degree(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn image(&self, i: u8) -> u8 {
        self.images[i as usize - 1]
    }

    /// Composition acting left-to-right on points: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::usage("permutation degrees differ".into()));
        }
        Ok(Permutation {
            images: (1..=self.degree())
                .map(|i| self.image(other.image(i)))
                .collect(),
        })
    }

    pub(crate) fn map_bits(&self, bits: u32) -> u32 {
        let mut out = 0u32;
        let mut rest = bits;
        while rest != 0 {
            let e = rest.trailing_zeros() as u8 + 1;
            rest &= rest - 1;
            out |= 1 << (self.image(e) - 1);
        }
        out
    }

    /// Every permutation of `{1..m}` in lexicographic image order.
    pub fn all(m: u8) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(m as usize);
        let mut used = vec![false; m as usize];
        fn rec(m: u8, images: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if images.len() == m as usize {
                out.push(Permutation {
                    images: images.clone(),
                });
                return;
            }
            for v in 1..=m {
                if !used[v as usize - 1] {
                    used[v as usize - 1] = true;
                    images.push(v);
                    rec(m, images, used, out);
                    images.pop();
                    used[v as usize - 1] = false;
                }
            }
        }
        rec(m, &mut images, &mut used, &mut out);
        out
    }
}

/// Exact number of m_n-patterns: `2^((2^m - 1)^n) - 1`; the empty collection
/// is excluded.
pub fn count_patterns(m: u8, n: u8) -> Result<BigUint> {
    if m < 1 || n < 1 {
        return Err(Error::usage("pattern counting needs m, n >= 1".into()));
    }
    let exponent = universe_size_checked(m, n)?;
    Ok((BigUint::one() << exponent) - BigUint::one())
}

fn universe_size_checked(m: u8, n: u8) -> Result<u64> {
    let base = (1u128 << m) - 1;
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(base)
            .ok_or_else(|| Error::usage(format!("vector universe for m={m}, n={n} overflows")))?;
    }
    u64::try_from(acc)
        .map_err(|_| Error::usage(format!("vector universe for m={m}, n={n} overflows")))
}

/// The full vector universe for `(m, n)` in canonical order: all n-tuples of
/// nonempty subset masks, componentwise lexicographic.
pub(crate) fn vector_universe(m: u8, n: u8) -> Vec<Vec<u32>> {
    let subsets: Vec<u32> = (1..=mask_full(m)).collect();
    let mut universe: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(universe.len() * subsets.len());
        for v in &universe {
            for &s in &subsets {
                let mut w = v.clone();
                w.push(s);
                next.push(w);
            }
        }
        universe = next;
    }
    universe
}

/// Deterministic exhaustive enumeration of all m_n-patterns.
///
/// Pattern index `i` (starting at 1) selects the vectors whose bits are set
/// in `i`, reading the canonical vector universe from the least significant
/// bit. Refuses to start when the total count exceeds the budget; disjoint
/// index ranges can be enumerated independently with [`PatternRange`].
pub fn enumerate_patterns(m: u8, n: u8, budget: Option<u64>) -> Result<PatternRange> {
    let budget = budget.unwrap_or(DEFAULT_PATTERN_BUDGET);
    let count = count_patterns(m, n)?;
    let within: u64 = count
        .clone()
        .try_into()
        .map_err(|_| Error::budget(format!("enumeration of {m}_{n}-patterns"), &count, budget))?;
    if within > budget {
        return Err(Error::budget(
            format!("enumeration of {m}_{n}-patterns"),
            &count,
            budget,
        ));
    }
    PatternRange::new(m, n, 1, within)
}

/// Iterator over a contiguous index range of the exhaustive enumeration.
#[derive(Debug)]
pub struct PatternRange {
    m: u8,
    n: u8,
    universe: Vec<Vec<u32>>,
    next: u64,
    last: u64,
}

impl PatternRange {
    /// Enumerates indices `first..=last` (1-based, inclusive).
    pub fn new(m: u8, n: u8, first: u64, last: u64) -> Result<Self> {
        let size = universe_size_checked(m, n)?;
        if size > 63 {
            return Err(Error::usage(format!(
                "indexed enumeration supports at most 63 universe vectors, got {size}"
            )));
        }
        if first < 1 || last > (1u64 << size) - 1 {
            return Err(Error::usage("pattern index range out of bounds".into()));
        }
        Ok(Self {
            m,
            n,
            universe: vector_universe(m, n),
            next: first,
            last,
        })
    }

    fn pattern_at(&self, index: u64) -> Pattern {
        let mut vectors = BTreeSet::new();
        let mut bits = index;
        while bits != 0 {
            let pos = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            vectors.insert(self.universe[pos].clone());
        }
        Pattern::from_masks(self.m, self.n, vectors)
    }
}

impl Iterator for PatternRange {
    type Item = Pattern;

    fn next(&mut self) -> Option<Pattern> {
        if self.next > self.last {
            return None;
        }
        let p = self.pattern_at(self.next);
        self.next += 1;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn p1(m: u8, subsets: &[&[u8]]) -> Pattern {
        Pattern::from_subsets(
            m,
            subsets
                .iter()
                .map(|s| GroundSubset::new(m, s.iter().copied()).unwrap()),
        )
        .unwrap()
    }

    fn op(blocks: &[&[u8]]) -> OrderedPartition {
        let s = blocks.iter().flat_map(|b| b.iter()).copied().max().unwrap();
        OrderedPartition::new(
            s,
            blocks
                .iter()
                .map(|b| GroundSubset::new(s, b.iter().copied()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn induce_initial_segments_drop_a_level() {
        let phi3 = standard::phi_pattern(3).unwrap();
        let phi2 = standard::phi_pattern(2).unwrap();
        assert_eq!(phi3.induce(&op(&[&[1, 2], &[3]])).unwrap(), phi2);
    }

    #[test]
    fn induce_relabels_singleton() {
        let p = p1(3, &[&[2]]);
        let gamma = OrderedPartition::merge_pair(3, 1, 2).unwrap();
        assert_eq!(p.induce(&gamma).unwrap(), p1(2, &[&[1]]));
    }

    #[test]
    fn induce_small_sets_drop_a_level() {
        let a13 = standard::a_pattern(1, 3).unwrap();
        let a12 = standard::a_pattern(1, 2).unwrap();
        assert_eq!(a13.induce(&op(&[&[1, 3], &[2]])).unwrap(), a12);
    }

    #[test]
    fn induce_rejects_ground_mismatch() {
        let p = p1(3, &[&[1]]);
        assert!(p.induce(&op(&[&[1], &[2]])).is_err());
    }

    #[test]
    fn permutation_action_examples() {
        let phi3 = standard::phi_pattern(3).unwrap();
        assert_eq!(phi3.apply(&Permutation::identity(3)).unwrap(), phi3);

        let p = p1(2, &[&[1]]);
        let swap = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(p.apply(&swap).unwrap(), p1(2, &[&[2]]));

        let a13 = standard::a_pattern(1, 3).unwrap();
        let sigma = Permutation::transposition(3, 1, 3).unwrap();
        assert_eq!(a13.apply(&sigma).unwrap(), a13);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![2, 1, 3]).is_ok());
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_patterns(1, 1).unwrap(), BigUint::from(1u8));
        assert_eq!(count_patterns(3, 1).unwrap(), BigUint::from(127u8));
        assert_eq!(count_patterns(2, 2).unwrap(), BigUint::from(511u16));
        assert!(count_patterns(0, 1).is_err());
    }

    #[test]
    fn enumerate_counts_match_formula() {
        for (m, n) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)] {
            let count = count_patterns(m, n).unwrap();
            let listed: Vec<Pattern> = enumerate_patterns(m, n, None).unwrap().collect();
            assert_eq!(BigUint::from(listed.len()), count, "m={m} n={n}");
            let dedup: BTreeSet<&Pattern> = listed.iter().collect();
            assert_eq!(dedup.len(), listed.len());
        }
    }

    #[test]
    fn enumerate_refuses_over_budget() {
        let err = enumerate_patterns(5, 1, None).unwrap_err();
        match err {
            Error::Budget { required, .. } => {
                assert_eq!(required, "2147483647");
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn range_splitting_covers_everything_once() {
        let whole: Vec<Pattern> = enumerate_patterns(2, 1, None).unwrap().collect();
        let lo: Vec<Pattern> = PatternRange::new(2, 1, 1, 3).unwrap().collect();
        let hi: Vec<Pattern> = PatternRange::new(2, 1, 4, 7).unwrap().collect();
        let stitched: Vec<Pattern> = lo.into_iter().chain(hi).collect();
        assert_eq!(stitched, whole);
    }

    #[test]
    fn canonical_form_is_stable() {
        let a = p1(3, &[&[1, 2], &[1]]);
        let b = p1(3, &[&[1], &[1, 2], &[1]]);
        assert_eq!(a, b);
        let rebuilt = Pattern::new(3, 1, a.vectors()).unwrap();
        assert_eq!(rebuilt, a);
    }

    #[test]
    fn pattern_rejects_empty_parts() {
        assert!(Pattern::from_subsets(3, vec![GroundSubset::empty(3)]).is_err());
        assert!(Pattern::new(3, 1, vec![]).is_err());
    }

    #[test]
    fn pattern_json_round_trip() {
        let phi3 = standard::phi_pattern(3).unwrap();
        let json = serde_json::to_string(&phi3).unwrap();
        assert_eq!(json, r#"{"m":3,"n":1,"vectors":[[[1]],[[1,2]],[[1,2,3]]]}"#);
        let back: Pattern = serde_json::from_str(&json).unwrap();
        assert_eq!(back, phi3);
        // Out-of-range member.
        assert!(serde_json::from_str::<Pattern>(r#"{"m":2,"n":1,"vectors":[[[3]]]}"#).is_err());
        // Empty component.
        assert!(serde_json::from_str::<Pattern>(r#"{"m":2,"n":1,"vectors":[[[]]]}"#).is_err());
    }
}
