//! Subset and ordered-partition calculus over finite ground sets.
//!
//! The ground set of size `m` is `{1, 2, ..., m}`. Subsets are kept in a
//! canonical sorted form (internally a bitmask indexed by element value), and
//! partitions are kept naturally ordered: blocks sorted by their minimum
//! element. Everything here is an immutable value and every operation is a
//! pure function.

use std::fmt;
use std::ops::ControlFlow;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Largest ground size the bitmask representation accepts.
pub const MAX_GROUND: u8 = 30;

/// A subset of the ground set `{1..m}`.
///
/// May be empty: intermediate calculus needs the empty set (for example the
/// shift of the empty set is the empty set), but patterns reject empty
/// components at their own boundary.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSubset {
    m: u8,
    bits: u32,
}

impl GroundSubset {
    /// Builds a subset of `{1..m}` from member values.
    pub fn new(m: u8, members: impl IntoIterator<Item = u8>) -> Result<Self> {
        check_ground(m)?;
        let mut bits = 0u32;
        for e in members {
            if e < 1 || e > m {
                return Err(Error::usage(format!(
                    "element {e} outside ground set {{1..{m}}}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Self { m, bits })
    }

    /// The empty subset of `{1..m}`.
    pub fn empty(m: u8) -> Self {
        Self { m, bits: 0 }
    }

    /// The full ground set `{1..m}`.
    pub fn full(m: u8) -> Self {
        Self {
            m,
            bits: mask_full(m),
        }
    }

    pub(crate) fn from_bits(m: u8, bits: u32) -> Self {
        debug_assert!(bits & !mask_full(m) == 0);
        Self { m, bits }
    }

    pub fn ground_size(&self) -> u8 {
        self.m
    }

    pub(crate) fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == mask_full(self.m)
    }

    pub fn contains(&self, e: u8) -> bool {
        e >= 1 && e <= self.m && self.bits & (1 << (e - 1)) != 0
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<u8> {
        (1..=self.m).filter(|&e| self.contains(e)).collect()
    }

    /// `A ↦ A⁺`: every member incremented, landing in `{1..m+1}`.
    /// The empty set maps to the empty set.
    pub fn shift_up(&self) -> Result<Self> {
        check_ground(self.m + 1)?;
        Ok(Self {
            m: self.m + 1,
            bits: self.bits << 1,
        })
    }

    /// `A ↦ A⁻`: every member decremented, landing in `{1..m-1}`.
    /// Requires `1 ∉ A`.
    pub fn shift_down(&self) -> Result<Self> {
        if self.contains(1) {
            return Err(Error::domain(
                "cannot shift down a subset containing 1".to_string(),
            ));
        }
        Ok(Self {
            m: self.m.saturating_sub(1),
            bits: self.bits >> 1,
        })
    }

    /// The gap insertion `D_j`: members below `j` are kept, members at or
    /// above `j` are incremented, so `j` itself is absent from the result
    /// (which lives over `{1..m+1}`).
    pub fn insert_gap(&self, j: u8) -> Result<Self> {
        if j < 1 || j > self.m + 1 {
            return Err(Error::usage(format!(
                "gap index {j} outside 1..={}",
                self.m + 1
            )));
        }
        check_ground(self.m + 1)?;
        let below = self.bits & mask_full(j - 1);
        let at_or_above = self.bits & !mask_full(j - 1);
        Ok(Self {
            m: self.m + 1,
            bits: below | (at_or_above << 1),
        })
    }

    /// Block-hit projection under `gamma`: the set of indices of blocks that
    /// meet this subset. Requires a nonempty subset.
    pub fn project(&self, gamma: &OrderedPartition) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::domain("cannot project the empty subset".to_string()));
        }
        if gamma.ground_size() != self.m {
            return Err(Error::usage(format!(
                "partition of {{1..{}}} cannot project a subset of {{1..{}}}",
                gamma.ground_size(),
                self.m
            )));
        }
        Ok(Self {
            m: gamma.block_count(),
            bits: gamma.project_bits(self.bits),
        })
    }

    /// The holes: elements of `{1..m}` missing from this subset, ascending.
    pub fn holes(&self) -> Vec<u8> {
        (1..=self.m).filter(|&e| !self.contains(e)).collect()
    }

    /// The smallest hole. Errors when the subset is the full ground set.
    pub fn first_hole(&self) -> Result<u8> {
        let complement = !self.bits & mask_full(self.m);
        if complement == 0 {
            return Err(Error::domain(
                "the full ground set has no holes".to_string(),
            ));
        }
        Ok(complement.trailing_zeros() as u8 + 1)
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        Self {
            m: self.m,
            bits: self.bits | other.bits,
        }
    }

    /// Reinterprets the subset over a larger ground set without moving members.
    pub fn widen(&self, m: u8) -> Result<Self> {
        if m < self.m {
            return Err(Error::usage(format!(
                "cannot widen ground {} to smaller ground {m}",
                self.m
            )));
        }
        check_ground(m)?;
        Ok(Self { m, bits: self.bits })
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.members().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for GroundSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(serializer)
    }
}

/// Subsets deserialize from a plain member array; the ground size must be
/// supplied by the surrounding context, so only partitions and patterns
/// implement `Deserialize` directly.
pub(crate) fn subset_from_members<E: serde::de::Error>(
    m: u8,
    members: &[u8],
) -> std::result::Result<GroundSubset, E> {
    GroundSubset::new(m, members.iter().copied()).map_err(E::custom)
}

/// A naturally ordered partition of `{1..s}` into nonempty blocks:
/// blocks are pairwise disjoint, cover the ground set, and are listed in
/// increasing order of their minimum element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    s: u8,
    blocks: Vec<GroundSubset>,
}

impl OrderedPartition {
    pub fn new(s: u8, blocks: Vec<GroundSubset>) -> Result<Self> {
        check_ground(s)?;
        if blocks.is_empty() {
            return Err(Error::usage("a partition needs at least one block".into()));
        }
        let mut seen = 0u32;
        let mut prev_min = 0u32;
        for block in &blocks {
            if block.ground_size() != s {
                return Err(Error::usage(format!(
                    "block {block} is not over ground {{1..{s}}}"
                )));
            }
            if block.is_empty() {
                return Err(Error::usage("partition blocks must be nonempty".into()));
            }
            if seen & block.bits() != 0 {
                return Err(Error::usage("partition blocks must be disjoint".into()));
            }
            let min = block.bits().trailing_zeros() + 1;
            if min <= prev_min {
                return Err(Error::usage(
                    "blocks must be ordered by minimum element".into(),
                ));
            }
            prev_min = min;
            seen |= block.bits();
        }
        if seen != mask_full(s) {
            return Err(Error::usage(format!(
                "blocks must cover the ground set {{1..{s}}}"
            )));
        }
        Ok(Self { s, blocks })
    }

    /// The merge partition `γ_{i,j}`: `i` and `j` share a block, every other
    /// element is a singleton. Lives in `Π(s, s-1)`.
    pub fn merge_pair(s: u8, i: u8, j: u8) -> Result<Self> {
        if !(1 <= i && i < j && j <= s) {
            return Err(Error::usage(format!(
                "merge pair needs 1 <= i < j <= {s}, got ({i},{j})"
            )));
        }
        check_ground(s)?;
        let mut blocks = Vec::with_capacity(s as usize - 1);
        for e in 1..=s {
            if e == j {
                continue;
            }
            let bits = if e == i {
                (1 << (i - 1)) | (1 << (j - 1))
            } else {
                1 << (e - 1)
            };
            blocks.push(GroundSubset::from_bits(s, bits));
        }
        Ok(Self { s, blocks })
    }

    pub fn ground_size(&self) -> u8 {
        self.s
    }

    pub fn block_count(&self) -> u8 {
        self.blocks.len() as u8
    }

    pub fn blocks(&self) -> &[GroundSubset] {
        &self.blocks
    }

    /// Bitmask of block indices hit by `bits` (index `j` as bit `j-1`).
    pub(crate) fn project_bits(&self, bits: u32) -> u32 {
        let mut hit = 0u32;
        for (idx, block) in self.blocks.iter().enumerate() {
            if block.bits() & bits != 0 {
                hit |= 1 << idx;
            }
        }
        hit
    }

    /// The amalgamated partition `γ_β`: groups this partition's blocks
    /// according to `beta`, which must partition `{1..k}` where `k` is this
    /// partition's block count.
    pub fn amalgamate(&self, beta: &OrderedPartition) -> Result<Self> {
        if beta.ground_size() != self.block_count() {
            return Err(Error::usage(format!(
                "amalgamation needs a partition of the {} block indices, got ground {}",
                self.block_count(),
                beta.ground_size()
            )));
        }
        let blocks = beta
            .blocks
            .iter()
            .map(|b| {
                let mut bits = 0u32;
                for idx in b.members() {
                    bits |= self.blocks[idx as usize - 1].bits();
                }
                GroundSubset::from_bits(self.s, bits)
            })
            .collect();
        let merged = Self::new(self.s, blocks)?;
        debug_assert!(merged.is_naturally_ordered());
        Ok(merged)
    }

    pub fn is_naturally_ordered(&self) -> bool {
        self.blocks
            .windows(2)
            .all(|w| w[0].bits().trailing_zeros() < w[1].bits().trailing_zeros())
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for OrderedPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let arrays: Vec<Vec<u8>> = self.blocks.iter().map(|b| b.members()).collect();
        arrays.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrderedPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let arrays: Vec<Vec<u8>> = Vec::deserialize(deserializer)?;
        let s = arrays.iter().flatten().copied().max().unwrap_or(0);
        let blocks = arrays
            .iter()
            .map(|a| subset_from_members::<D::Error>(s, a))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        OrderedPartition::new(s, blocks).map_err(D::Error::custom)
    }
}

fn check_ground(m: u8) -> Result<()> {
    if m > MAX_GROUND {
        return Err(Error::usage(format!(
            "ground size {m} exceeds the supported maximum {MAX_GROUND}"
        )));
    }
    Ok(())
}

pub(crate) fn mask_full(m: u8) -> u32 {
    if m == 0 {
        0
    } else {
        (1u32 << m) - 1
    }
}

/// Walks `Π(s, k)` in the canonical order: partitions compared as their
/// block sequences, blocks compared as ascending member lists. The first
/// partition visited is `({1},{2},...,{k-1},{k..s})`.
///
/// The walker stops early when the callback breaks; this is what the budgeted
/// scans use to avoid materializing large partition families.
pub fn for_each_partition<F>(s: u8, k: u8, mut f: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&OrderedPartition) -> ControlFlow<()>,
{
    if s < 1 || k < 1 || k > s {
        return Err(Error::usage(format!(
            "partition parameters need 1 <= k <= s, got s={s} k={k}"
        )));
    }
    check_ground(s)?;
    let mut blocks: Vec<GroundSubset> = Vec::with_capacity(k as usize);
    let mut walker = Walker {
        s,
        f: &mut f,
        blocks: &mut blocks,
    };
    walker.descend(mask_full(s), k)
}

struct Walker<'a, F> {
    s: u8,
    f: &'a mut F,
    blocks: &'a mut Vec<GroundSubset>,
}

impl<F> Walker<'_, F>
where
    F: FnMut(&OrderedPartition) -> ControlFlow<()>,
{
    /// Emits all partitions of `remaining` into `k` blocks, appending to the
    /// current block prefix.
    fn descend(&mut self, remaining: u32, k: u8) -> Result<ControlFlow<()>> {
        if k == 0 {
            debug_assert_eq!(remaining, 0);
            let partition = OrderedPartition {
                s: self.s,
                blocks: self.blocks.clone(),
            };
            return Ok((self.f)(&partition));
        }
        let first = remaining.trailing_zeros(); // zero-based
        self.grow(remaining, k, 1 << first, first)
    }

    /// Extends the block under construction (currently `block`, maximum
    /// zero-based element `max`) in member-list order: recurse with the block
    /// as-is first, then with each larger element appended.
    fn grow(&mut self, remaining: u32, k: u8, block: u32, max: u32) -> Result<ControlFlow<()>> {
        let rest = remaining & !block;
        let rest_len = rest.count_ones();
        // Close the block here only if the leftover elements can still form
        // k-1 nonempty blocks.
        if (k == 1 && rest == 0) || (k > 1 && rest_len >= u32::from(k) - 1) {
            self.blocks.push(GroundSubset::from_bits(self.s, block));
            let flow = self.descend(rest, k - 1)?;
            self.blocks.pop();
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        let mut candidates = rest
            & !(if max >= 31 {
                u32::MAX
            } else {
                (1 << (max + 1)) - 1
            });
        while candidates != 0 {
            let e = candidates.trailing_zeros();
            candidates &= candidates - 1;
            if self.grow(remaining, k, block | (1 << e), e)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Materializes `Π(s, k)` in the canonical order.
pub fn enumerate_partitions(s: u8, k: u8) -> Result<Vec<OrderedPartition>> {
    let mut out = Vec::new();
    let _ = for_each_partition(s, k, |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// All nonempty subsets `A ⊆ {1..s}` with `A_γ = q`, i.e. the fiber of the
/// block-hit projection over `q`. Each such `A` picks a nonempty subset of
/// every block indexed by `q` and nothing from the other blocks.
pub fn preimage_subsets(gamma: &OrderedPartition, q: &GroundSubset) -> Result<Vec<GroundSubset>> {
    if q.is_empty() {
        return Err(Error::domain(
            "the projection fiber of the empty subset is not defined".to_string(),
        ));
    }
    if q.ground_size() != gamma.block_count() {
        return Err(Error::usage(format!(
            "fiber query over {} blocks against a partition with {} blocks",
            q.ground_size(),
            gamma.block_count()
        )));
    }
    let hit_blocks: Vec<&GroundSubset> = q
        .members()
        .iter()
        .map(|&j| &gamma.blocks()[j as usize - 1])
        .collect();
    let mut fibers = vec![0u32];
    for block in hit_blocks {
        let choices = nonempty_subsets_of(block.bits());
        let mut next = Vec::with_capacity(fibers.len() * choices.len());
        for f in &fibers {
            for c in &choices {
                next.push(f | c);
            }
        }
        fibers = next;
    }
    fibers.sort_unstable();
    Ok(fibers
        .into_iter()
        .map(|bits| GroundSubset::from_bits(gamma.ground_size(), bits))
        .collect())
}

fn nonempty_subsets_of(bits: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity((1usize << bits.count_ones()) - 1);
    // Standard subset-of-mask walk.
    let mut sub = bits;
    loop {
        if sub != 0 {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    out
}

/// Stirling number of the second kind, saturating at `u128::MAX`; used for
/// budget checks before partition scans.
pub fn stirling2(s: u8, k: u8) -> u128 {
    if k > s {
        return 0;
    }
    if k == 0 {
        return u128::from(s == 0);
    }
    let mut row = vec![0u128; k as usize + 1];
    row[0] = 1;
    for _ in 1..=s {
        for j in (1..=k as usize).rev() {
            row[j] = (j as u128)
                .saturating_mul(row[j])
                .saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(m: u8, members: &[u8]) -> GroundSubset {
        GroundSubset::new(m, members.iter().copied()).unwrap()
    }

    fn op(blocks: &[&[u8]]) -> OrderedPartition {
        let s = blocks.iter().flat_map(|b| b.iter()).copied().max().unwrap();
        OrderedPartition::new(s, blocks.iter().map(|b| gs(s, b)).collect()).unwrap()
    }

    #[test]
    fn enumerate_two_of_two_is_discrete() {
        let all = enumerate_partitions(2, 2).unwrap();
        assert_eq!(all, vec![op(&[&[1], &[2]])]);
    }

    #[test]
    fn enumerate_three_into_two_in_canonical_order() {
        let all = enumerate_partitions(3, 2).unwrap();
        assert_eq!(
            all,
            vec![
                op(&[&[1], &[2, 3]]),
                op(&[&[1, 2], &[3]]),
                op(&[&[1, 3], &[2]]),
            ]
        );
    }

    #[test]
    fn enumerate_four_into_two_has_seven() {
        assert_eq!(enumerate_partitions(4, 2).unwrap().len(), 7);
    }

    #[test]
    fn first_partition_splits_singletons_then_tail() {
        let all = enumerate_partitions(5, 3).unwrap();
        assert_eq!(all[0], op(&[&[1], &[2], &[3, 4, 5]]));
    }

    #[test]
    fn enumerate_rejects_bad_parameters() {
        assert!(enumerate_partitions(3, 0).is_err());
        assert!(enumerate_partitions(3, 4).is_err());
    }

    #[test]
    fn amalgamate_identity_gamma() {
        let gamma = op(&[&[1], &[2], &[3]]);
        let beta = op(&[&[1, 2], &[3]]);
        assert_eq!(gamma.amalgamate(&beta).unwrap(), op(&[&[1, 2], &[3]]));
    }

    #[test]
    fn amalgamate_hand_evaluated() {
        let gamma = op(&[&[1, 3], &[2], &[4]]);
        let beta = op(&[&[1], &[2, 3]]);
        assert_eq!(gamma.amalgamate(&beta).unwrap(), op(&[&[1, 3], &[2, 4]]));
    }

    #[test]
    fn amalgamate_single_block_merges_everything() {
        let gamma = op(&[&[1], &[2, 3]]);
        let beta = OrderedPartition::new(2, vec![gs(2, &[1, 2])]).unwrap();
        assert_eq!(
            gamma.amalgamate(&beta).unwrap(),
            OrderedPartition::new(3, vec![gs(3, &[1, 2, 3])]).unwrap()
        );
    }

    #[test]
    fn amalgamate_rejects_block_count_mismatch() {
        let gamma = op(&[&[1], &[2, 3]]);
        let beta = op(&[&[1], &[2], &[3]]);
        assert!(gamma.amalgamate(&beta).is_err());
    }

    #[test]
    fn merge_pair_examples() {
        assert_eq!(
            OrderedPartition::merge_pair(3, 1, 3).unwrap(),
            op(&[&[1, 3], &[2]])
        );
        assert_eq!(
            OrderedPartition::merge_pair(4, 3, 4).unwrap(),
            op(&[&[1], &[2], &[3, 4]])
        );
        assert_eq!(
            OrderedPartition::merge_pair(4, 1, 2).unwrap(),
            op(&[&[1, 2], &[3], &[4]])
        );
        assert!(OrderedPartition::merge_pair(4, 2, 2).is_err());
        assert!(OrderedPartition::merge_pair(4, 0, 2).is_err());
        assert!(OrderedPartition::merge_pair(4, 2, 5).is_err());
    }

    #[test]
    fn shift_up_examples() {
        assert_eq!(gs(3, &[1, 3]).shift_up().unwrap(), gs(4, &[2, 4]));
        assert_eq!(
            GroundSubset::empty(2).shift_up().unwrap(),
            GroundSubset::empty(3)
        );
        assert_eq!(gs(1, &[1]).shift_up().unwrap(), gs(2, &[2]));
    }

    #[test]
    fn shift_down_examples() {
        assert_eq!(gs(4, &[2, 4]).shift_down().unwrap(), gs(3, &[1, 3]));
        assert_eq!(gs(2, &[2]).shift_down().unwrap(), gs(1, &[1]));
        assert!(gs(2, &[1, 2]).shift_down().is_err());
    }

    #[test]
    fn insert_gap_examples() {
        assert_eq!(gs(3, &[1, 2, 3]).insert_gap(2).unwrap(), gs(4, &[1, 3, 4]));
        assert_eq!(gs(2, &[1, 2]).insert_gap(1).unwrap(), gs(3, &[2, 3]));
        assert_eq!(gs(3, &[1, 3]).insert_gap(4).unwrap(), gs(4, &[1, 3]));
        assert!(gs(3, &[1]).insert_gap(0).is_err());
        assert!(gs(3, &[1]).insert_gap(5).is_err());
    }

    #[test]
    fn project_examples() {
        assert_eq!(
            gs(3, &[2]).project(&op(&[&[1, 3], &[2]])).unwrap(),
            gs(2, &[2])
        );
        assert_eq!(
            gs(4, &[1, 3]).project(&op(&[&[1], &[2], &[3, 4]])).unwrap(),
            gs(3, &[1, 3])
        );
        assert_eq!(
            gs(3, &[2])
                .project(&OrderedPartition::new(3, vec![gs(3, &[1, 2, 3])]).unwrap())
                .unwrap(),
            gs(1, &[1])
        );
        assert!(GroundSubset::empty(3)
            .project(&op(&[&[1, 3], &[2]]))
            .is_err());
    }

    #[test]
    fn preimage_of_merge_pair_top() {
        // Fiber over {1,3} of the merge of the top two elements.
        let gamma = OrderedPartition::merge_pair(4, 3, 4).unwrap();
        let fiber = preimage_subsets(&gamma, &gs(3, &[1, 3])).unwrap();
        assert_eq!(
            fiber,
            vec![gs(4, &[1, 3]), gs(4, &[1, 4]), gs(4, &[1, 3, 4])]
        );
    }

    #[test]
    fn preimage_singleton_cases() {
        let gamma = OrderedPartition::merge_pair(3, 1, 3).unwrap();
        assert_eq!(
            preimage_subsets(&gamma, &gs(2, &[2])).unwrap(),
            vec![gs(3, &[2])]
        );
        let gamma = OrderedPartition::merge_pair(3, 1, 2).unwrap();
        assert_eq!(
            preimage_subsets(&gamma, &gs(2, &[2])).unwrap(),
            vec![gs(3, &[3])]
        );
        assert!(preimage_subsets(&gamma, &GroundSubset::empty(2)).is_err());
    }

    #[test]
    fn holes_and_first_hole() {
        assert_eq!(gs(4, &[1, 3]).holes(), vec![2, 4]);
        assert_eq!(gs(4, &[1, 3]).first_hole().unwrap(), 2);
        assert_eq!(gs(3, &[1, 2, 3]).holes(), Vec::<u8>::new());
        assert!(gs(3, &[1, 2, 3]).first_hole().is_err());
        assert_eq!(gs(3, &[2, 3]).holes(), vec![1]);
        assert_eq!(gs(3, &[2, 3]).first_hole().unwrap(), 1);
    }

    #[test]
    fn partition_counts_match_recurrence() {
        // Independent oracle: the classical two-term recurrence.
        fn s2(n: u8, k: u8) -> u64 {
            if k == 0 || k > n {
                return u64::from(n == 0 && k == 0);
            }
            if n == k {
                return 1;
            }
            u64::from(k) * s2(n - 1, k) + s2(n - 1, k - 1)
        }
        for s in 1..=7u8 {
            for k in 1..=s {
                let listed = enumerate_partitions(s, k).unwrap();
                assert_eq!(listed.len() as u64, s2(s, k), "s={s} k={k}");
                assert_eq!(listed.len() as u128, stirling2(s, k));
                // No duplicates, all naturally ordered.
                for p in &listed {
                    assert!(p.is_naturally_ordered());
                }
                let mut sorted = listed.clone();
                sorted.dedup();
                assert_eq!(sorted.len(), listed.len());
            }
        }
    }

    #[test]
    fn partition_json_round_trip() {
        let p = op(&[&[1, 3], &[2]]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[[1,3],[2]]");
        let back: OrderedPartition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<OrderedPartition>("[[1,3],[3]]").is_err());
        assert!(serde_json::from_str::<OrderedPartition>("[[2,3],[1]]").is_err());
    }
}
