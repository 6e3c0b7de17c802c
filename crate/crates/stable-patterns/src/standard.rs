//! Constructors and complete catalogs for the classified one-dimensional
//! patterns, plus the inverse classifier.
//!
//! Three catalogs are exposed, one per classification level:
//! [`standard_catalog`] (every stable pattern), [`hereditary_catalog`] (stable
//! patterns that stay liftable at every higher level) and [`usl_catalog`]
//! (hereditary patterns whose stable lift is unique at every level). Catalog
//! entries are deduplicated by realized pattern; when several items realize
//! the same pattern the entry keeps the least item in `(item, parameters)`
//! order, which honors the coincidence remarks attached to the item list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ground::{mask_full, GroundSubset};
use crate::pattern::Pattern;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Mask-level builders. A `j = 0` cardinality bound yields the empty family,
// which the composite items need at ground size 2.
// ---------------------------------------------------------------------------

fn a_masks(j: u8, m: u8) -> Vec<u32> {
    (1..=mask_full(m))
        .filter(|b| b.count_ones() <= u32::from(j))
        .collect()
}

fn a1_masks(j: u8, m: u8) -> Vec<u32> {
    (1..=mask_full(m))
        .filter(|b| b & 1 != 0 && b.count_ones() <= u32::from(j))
        .collect()
}

fn phi_masks(m: u8) -> Vec<u32> {
    (1..=m).map(mask_full).collect()
}

/// Subsets with exactly `h` holes, first hole at least `l`. `h = 0` yields
/// the full ground set alone.
fn h_masks(h: u8, l: u8, m: u8) -> Vec<u32> {
    if h == 0 {
        return vec![mask_full(m)];
    }
    let mut out = Vec::new();
    let window = mask_full(m) & !mask_full(l - 1); // positions l..m
                                                   // Walk all sub-masks of the window with popcount h; each is a hole set.
    let mut sub = window;
    loop {
        if sub.count_ones() == u32::from(h) {
            out.push(mask_full(m) & !sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & window;
    }
    out.sort_unstable();
    out
}

/// Subsets with exactly `h` holes, first hole exactly `l`.
fn eh_masks(h: u8, l: u8, m: u8) -> Vec<u32> {
    if h == 0 {
        return vec![mask_full(m)];
    }
    h_masks(h, l, m)
        .into_iter()
        .filter(|b| b & (1 << (l - 1)) == 0)
        .collect()
}

/// The composite family: sets containing 1 of cardinality at most `m-r-1`,
/// the `h`-hole bands for `h = 1..r` with first hole at least `s-h+1`, and
/// the full set. Sound for `0 <= r <= m-1` and `r < s <= m`.
fn d_masks(r: u8, s: u8, m: u8) -> Vec<u32> {
    let mut set: BTreeSet<u32> = a1_masks(m - r - 1, m).into_iter().collect();
    for h in 1..=r {
        set.extend(h_masks(h, s - h + 1, m));
    }
    set.insert(mask_full(m));
    set.into_iter().collect()
}

fn check_m(m: u8) -> Result<()> {
    if m < 1 {
        return Err(Error::usage("ground size must be at least 1".into()));
    }
    if m > 16 {
        return Err(Error::usage(format!(
            "catalog constructors support ground sizes up to 16, got {m}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Public constructors.
// ---------------------------------------------------------------------------

/// The one-element pattern holding the full ground set.
pub fn full_pattern(m: u8) -> Result<Pattern> {
    check_m(m)?;
    Ok(Pattern::from_masks_n1(m, [mask_full(m)]))
}

/// All initial segments `{1}, {1,2}, ..., {1..m}`.
pub fn phi_pattern(m: u8) -> Result<Pattern> {
    check_m(m)?;
    Ok(Pattern::from_masks_n1(m, phi_masks(m)))
}

/// All nonempty subsets of cardinality at most `j`; requires `1 <= j <= m`.
pub fn a_pattern(j: u8, m: u8) -> Result<Pattern> {
    check_m(m)?;
    if j < 1 || j > m {
        return Err(Error::usage(format!(
            "cardinality bound needs 1 <= j <= m, got j={j}, m={m}"
        )));
    }
    Ok(Pattern::from_masks_n1(m, a_masks(j, m)))
}

/// All subsets of cardinality at most `j` that contain 1; `1 <= j <= m`.
pub fn a1_pattern(j: u8, m: u8) -> Result<Pattern> {
    check_m(m)?;
    if j < 1 || j > m {
        return Err(Error::usage(format!(
            "cardinality bound needs 1 <= j <= m, got j={j}, m={m}"
        )));
    }
    Ok(Pattern::from_masks_n1(m, a1_masks(j, m)))
}

/// Subsets with exactly `h` holes and first hole at least `l`.
/// `h = 0` gives the one-element family holding the full set.
pub fn h_family(h: u8, l: u8, m: u8) -> Result<Pattern> {
    check_m(m)?;
    if l < 1 || l > m || u16::from(h) + u16::from(l) > u16::from(m) + 1 {
        return Err(Error::usage(format!(
            "hole band needs 1 <= l <= m and h + l <= m + 1, got h={h}, l={l}, m={m}"
        )));
    }
    if h == m {
        return Err(Error::domain(
            "a band with m holes contains only the empty subset".into(),
        ));
    }
    Ok(Pattern::from_masks_n1(m, h_masks(h, l, m)))
}

/// Subsets with exactly `h` holes and first hole exactly `l`.
pub fn eh_family(h: u8, l: u8, m: u8) -> Result<Pattern> {
    check_m(m)?;
    if l < 1 || l > m || u16::from(h) + u16::from(l) > u16::from(m) + 1 {
        return Err(Error::usage(format!(
            "hole band needs 1 <= l <= m and h + l <= m + 1, got h={h}, l={l}, m={m}"
        )));
    }
    if h == m {
        return Err(Error::domain(
            "a band with m holes contains only the empty subset".into(),
        ));
    }
    Ok(Pattern::from_masks_n1(m, eh_masks(h, l, m)))
}

/// The composite catalog family with parameters `(r, s)`.
///
/// Sound for `0 <= r <= m-1`, `r < s <= m`; the strict catalog item uses
/// `2 <= r < r+1 < s < m` and the boundary values reduce to other items
/// (`r = 0` collapses to the anchored family with the full set, `s = m` to an
/// anchored family joined with the initial segments).
pub fn d_pattern(r: u8, s: u8, m: u8) -> Result<Pattern> {
    check_m(m)?;
    if r >= m || s <= r || s > m {
        return Err(Error::usage(format!(
            "composite family needs 0 <= r < s <= m and r < m, got r={r}, s={s}, m={m}"
        )));
    }
    Ok(Pattern::from_masks_n1(m, d_masks(r, s, m)))
}

/// The alternative route to the composite family: every set of the form
/// `{1..l}` joined with at most `m - s` further elements, together with the
/// anchored sets of cardinality at most `m - r - 1`. Only defined on the
/// strict index range `2 <= r < r+1 < s < m`.
pub fn d_pattern_alt(r: u8, s: u8, m: u8) -> Result<Pattern> {
    check_m(m)?;
    if !(2 <= r && r + 1 < s && s < m) {
        return Err(Error::usage(format!(
            "alternative composite form needs 2 <= r < r+1 < s < m, got r={r}, s={s}, m={m}"
        )));
    }
    let mut set: BTreeSet<u32> = a1_masks(m - r - 1, m).into_iter().collect();
    let extras_budget = u32::from(m - s);
    for l in 1..=m {
        let segment = mask_full(l);
        for extra in 0..=mask_full(m) {
            if extra.count_ones() <= extras_budget {
                set.insert(segment | extra);
            }
        }
    }
    Ok(Pattern::from_masks_n1(m, set))
}

// ---------------------------------------------------------------------------
// Classification labels.
// ---------------------------------------------------------------------------

/// The seventeen catalog items. Variant order matches item numbering, so the
/// derived ordering picks the least item as canonical for coincident
/// realizations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FamilyKind {
    /// (1) `{full}`.
    FullSet,
    /// (2) all initial segments.
    Phi,
    /// (3) cardinality at most `j`.
    A { j: u8 },
    /// (4) cardinality at most `j`, plus the full set.
    APlusFull { j: u8 },
    /// (5) cardinality at most `j`, plus all initial segments.
    APlusPhi { j: u8 },
    /// (6) anchored sets (containing 1) of cardinality at most `j`.
    A1 { j: u8 },
    /// (7) anchored sets of cardinality at most `m-2`, a proper nonempty
    /// collection of one-hole sets with hole at least 2, and the full set.
    A1NFull { nu: BTreeSet<GroundSubset> },
    /// (8) sets of cardinality at most `m-2` plus `m-1` of the one-hole sets
    /// (not the anchored selection).
    ANLarge { nu: BTreeSet<GroundSubset> },
    /// (9) sets of cardinality at most `m-2`, a proper nonempty selection of
    /// one-hole sets (not the anchored selection), and the full set.
    ANFull { nu: BTreeSet<GroundSubset> },
    /// (10) the composite family.
    D { r: u8, s: u8 },
    /// (11) the composite family joined with a cardinality bound.
    DPlusA { r: u8, s: u8, j: u8 },
    /// (12) anchored cardinality bound plus the full set.
    A1Full { j: u8 },
    /// (13) anchored cardinality bound plus all initial segments.
    A1Phi { j: u8 },
    /// (14) anchored bound `j` plus plain bound `j' < j`.
    A1A { j: u8, j_prime: u8 },
    /// (15) item (14) plus the full set.
    A1AFull { j: u8, j_prime: u8 },
    /// (16) item (14) plus all initial segments.
    A1APhi { j: u8, j_prime: u8 },
    /// (17) plain bound `j`, anchored bound `m-2`, a proper nonempty
    /// selection of one-hole sets with hole at least 2, and the full set.
    AA1NFull { j: u8, nu: BTreeSet<GroundSubset> },
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::FullSet => "FullSet",
            FamilyKind::Phi => "Phi",
            FamilyKind::A { .. } => "A",
            FamilyKind::APlusFull { .. } => "APlusFull",
            FamilyKind::APlusPhi { .. } => "APlusPhi",
            FamilyKind::A1 { .. } => "A1",
            FamilyKind::A1NFull { .. } => "A1NFull",
            FamilyKind::ANLarge { .. } => "ANLarge",
            FamilyKind::ANFull { .. } => "ANFull",
            FamilyKind::D { .. } => "D",
            FamilyKind::DPlusA { .. } => "DPlusA",
            FamilyKind::A1Full { .. } => "A1Full",
            FamilyKind::A1Phi { .. } => "A1Phi",
            FamilyKind::A1A { .. } => "A1A",
            FamilyKind::A1AFull { .. } => "A1AFull",
            FamilyKind::A1APhi { .. } => "A1APhi",
            FamilyKind::AA1NFull { .. } => "AA1NFull",
        }
    }
}

/// A classification label: a catalog item with its parameters at a concrete
/// ground size. `realize` reconstructs the pattern it names.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PatternClass {
    m: u8,
    kind: FamilyKind,
}

impl PatternClass {
    pub fn new(m: u8, kind: FamilyKind) -> Result<Self> {
        let class = Self { m, kind };
        class.validate()?;
        Ok(class)
    }

    pub fn ground_size(&self) -> u8 {
        self.m
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    fn validate(&self) -> Result<()> {
        let m = self.m;
        check_m(m)?;
        let bad = |cond: &str| {
            Err(Error::usage(format!(
                "class {:?} at m={m} violates: {cond}",
                self.kind.name()
            )))
        };
        let check_nu = |nu: &BTreeSet<GroundSubset>, min_hole: u8| -> Result<()> {
            for s in nu {
                if s.ground_size() != m || s.len() != u32::from(m) - 1 {
                    return Err(Error::usage(format!(
                        "selection member {s} is not a one-hole subset of {{1..{m}}}"
                    )));
                }
                if s.first_hole()? < min_hole {
                    return Err(Error::usage(format!(
                        "selection member {s} has hole below {min_hole}"
                    )));
                }
            }
            Ok(())
        };
        match &self.kind {
            FamilyKind::FullSet | FamilyKind::Phi => Ok(()),
            FamilyKind::A { j } | FamilyKind::A1 { j } => {
                if *j < 1 || *j > m {
                    return bad("1 <= j <= m");
                }
                Ok(())
            }
            FamilyKind::APlusFull { j }
            | FamilyKind::APlusPhi { j }
            | FamilyKind::A1Full { j }
            | FamilyKind::A1Phi { j } => {
                if m < 3 || *j < 1 || *j > m - 2 {
                    return bad("1 <= j <= m - 2");
                }
                Ok(())
            }
            FamilyKind::A1NFull { nu } => {
                check_nu(nu, 2)?;
                if nu.is_empty() || nu.len() >= usize::from(m) - 1 {
                    return bad("selection must be nonempty and proper among hole >= 2 sets");
                }
                Ok(())
            }
            FamilyKind::ANLarge { nu } => {
                check_nu(nu, 1)?;
                if nu.len() != usize::from(m) - 1 {
                    return bad("selection must have exactly m - 1 members");
                }
                if nu.iter().all(|s| s.contains(1)) {
                    return bad("the all-anchored selection belongs to item (14)");
                }
                Ok(())
            }
            FamilyKind::ANFull { nu } => {
                check_nu(nu, 1)?;
                if nu.is_empty() || nu.len() >= usize::from(m) {
                    return bad("selection must be nonempty and proper");
                }
                if nu.len() == usize::from(m) - 1 && nu.iter().all(|s| s.contains(1)) {
                    return bad("the all-anchored selection belongs to item (14)");
                }
                Ok(())
            }
            FamilyKind::D { r, s } => {
                if !(2 <= *r && r + 1 < *s && *s < m) {
                    return bad("2 <= r < r+1 < s < m");
                }
                Ok(())
            }
            FamilyKind::DPlusA { r, s, j } => {
                if !(2 <= *r && r + 1 < *s && *s < m) {
                    return bad("2 <= r < r+1 < s < m");
                }
                if *j < 1 || *j > m - r - 1 {
                    return bad("1 <= j <= m - r - 1");
                }
                Ok(())
            }
            FamilyKind::A1A { j, j_prime } => {
                if !(2 <= *j && *j <= m && *j_prime >= 1 && j_prime < j) {
                    return bad("2 <= j <= m and 1 <= j' < j");
                }
                Ok(())
            }
            FamilyKind::A1AFull { j, j_prime } | FamilyKind::A1APhi { j, j_prime } => {
                if m < 4 || !(2 <= *j && *j <= m - 2 && *j_prime >= 1 && j_prime < j) {
                    return bad("2 <= j <= m - 2 and 1 <= j' < j");
                }
                Ok(())
            }
            FamilyKind::AA1NFull { j, nu } => {
                if m < 4 || *j < 1 || *j + 2 >= m {
                    return bad("1 <= j < m - 2");
                }
                check_nu(nu, 2)?;
                if nu.is_empty() || nu.len() >= usize::from(m) - 1 {
                    return bad("selection must be nonempty and proper among hole >= 2 sets");
                }
                Ok(())
            }
        }
    }

    /// Reconstructs the labeled pattern.
    pub fn realize(&self) -> Pattern {
        let m = self.m;
        let full = mask_full(m);
        let nu_masks = |nu: &BTreeSet<GroundSubset>| nu.iter().map(|s| s.bits()).collect();
        let masks: BTreeSet<u32> = match &self.kind {
            FamilyKind::FullSet => [full].into(),
            FamilyKind::Phi => phi_masks(m).into_iter().collect(),
            FamilyKind::A { j } => a_masks(*j, m).into_iter().collect(),
            FamilyKind::APlusFull { j } => {
                let mut s: BTreeSet<u32> = a_masks(*j, m).into_iter().collect();
                s.insert(full);
                s
            }
            FamilyKind::APlusPhi { j } => {
                let mut s: BTreeSet<u32> = a_masks(*j, m).into_iter().collect();
                s.extend(phi_masks(m));
                s
            }
            FamilyKind::A1 { j } => a1_masks(*j, m).into_iter().collect(),
            FamilyKind::A1NFull { nu } => {
                let mut s: BTreeSet<u32> = a1_masks(m - 2, m).into_iter().collect();
                s.extend::<Vec<u32>>(nu_masks(nu));
                s.insert(full);
                s
            }
            FamilyKind::ANLarge { nu } => {
                let mut s: BTreeSet<u32> = a_masks(m - 2, m).into_iter().collect();
                s.extend::<Vec<u32>>(nu_masks(nu));
                s
            }
            FamilyKind::ANFull { nu } => {
                let mut s: BTreeSet<u32> = a_masks(m - 2, m).into_iter().collect();
                s.extend::<Vec<u32>>(nu_masks(nu));
                s.insert(full);
                s
            }
            FamilyKind::D { r, s } => d_masks(*r, *s, m).into_iter().collect(),
            FamilyKind::DPlusA { r, s, j } => {
                let mut set: BTreeSet<u32> = d_masks(*r, *s, m).into_iter().collect();
                set.extend(a_masks(*j, m));
                set
            }
            FamilyKind::A1Full { j } => {
                let mut s: BTreeSet<u32> = a1_masks(*j, m).into_iter().collect();
                s.insert(full);
                s
            }
            FamilyKind::A1Phi { j } => {
                let mut s: BTreeSet<u32> = a1_masks(*j, m).into_iter().collect();
                s.extend(phi_masks(m));
                s
            }
            FamilyKind::A1A { j, j_prime } => {
                let mut s: BTreeSet<u32> = a1_masks(*j, m).into_iter().collect();
                s.extend(a_masks(*j_prime, m));
                s
            }
            FamilyKind::A1AFull { j, j_prime } => {
                let mut s: BTreeSet<u32> = a1_masks(*j, m).into_iter().collect();
                s.extend(a_masks(*j_prime, m));
                s.insert(full);
                s
            }
            FamilyKind::A1APhi { j, j_prime } => {
                let mut s: BTreeSet<u32> = a1_masks(*j, m).into_iter().collect();
                s.extend(a_masks(*j_prime, m));
                s.extend(phi_masks(m));
                s
            }
            FamilyKind::AA1NFull { j, nu } => {
                let mut s: BTreeSet<u32> = a_masks(*j, m).into_iter().collect();
                s.extend(a1_masks(m - 2, m));
                s.extend::<Vec<u32>>(nu_masks(nu));
                s.insert(full);
                s
            }
        };
        Pattern::from_masks_n1(m, masks)
    }
}

impl fmt::Display for PatternClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        match &self.kind {
            FamilyKind::FullSet => write!(f, "FullSet(m={m})"),
            FamilyKind::Phi => write!(f, "Phi(m={m})"),
            FamilyKind::A { j } => write!(f, "A(j={j}, m={m})"),
            FamilyKind::APlusFull { j } => write!(f, "APlusFull(j={j}, m={m})"),
            FamilyKind::APlusPhi { j } => write!(f, "APlusPhi(j={j}, m={m})"),
            FamilyKind::A1 { j } => write!(f, "A1(j={j}, m={m})"),
            FamilyKind::A1NFull { nu } => write!(f, "A1NFull(|nu|={}, m={m})", nu.len()),
            FamilyKind::ANLarge { nu } => write!(f, "ANLarge(|nu|={}, m={m})", nu.len()),
            FamilyKind::ANFull { nu } => write!(f, "ANFull(|nu|={}, m={m})", nu.len()),
            FamilyKind::D { r, s } => write!(f, "D(r={r}, s={s}, m={m})"),
            FamilyKind::DPlusA { r, s, j } => write!(f, "DPlusA(r={r}, s={s}, j={j}, m={m})"),
            FamilyKind::A1Full { j } => write!(f, "A1Full(j={j}, m={m})"),
            FamilyKind::A1Phi { j } => write!(f, "A1Phi(j={j}, m={m})"),
            FamilyKind::A1A { j, j_prime } => write!(f, "A1A(j={j}, j'={j_prime}, m={m})"),
            FamilyKind::A1AFull { j, j_prime } => {
                write!(f, "A1AFull(j={j}, j'={j_prime}, m={m})")
            }
            FamilyKind::A1APhi { j, j_prime } => {
                write!(f, "A1APhi(j={j}, j'={j_prime}, m={m})")
            }
            FamilyKind::AA1NFull { j, nu } => {
                write!(f, "AA1NFull(j={j}, |nu|={}, m={m})", nu.len())
            }
        }
    }
}

impl Serialize for PatternClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut params = serde_json::Map::new();
        let mut nu: Option<&BTreeSet<GroundSubset>> = None;
        match &self.kind {
            FamilyKind::FullSet | FamilyKind::Phi => {}
            FamilyKind::A { j }
            | FamilyKind::APlusFull { j }
            | FamilyKind::APlusPhi { j }
            | FamilyKind::A1 { j }
            | FamilyKind::A1Full { j }
            | FamilyKind::A1Phi { j } => {
                params.insert("j".into(), (*j).into());
            }
            FamilyKind::A1NFull { nu: n }
            | FamilyKind::ANLarge { nu: n }
            | FamilyKind::ANFull { nu: n } => {
                nu = Some(n);
            }
            FamilyKind::D { r, s } => {
                params.insert("r".into(), (*r).into());
                params.insert("s".into(), (*s).into());
            }
            FamilyKind::DPlusA { r, s, j } => {
                params.insert("r".into(), (*r).into());
                params.insert("s".into(), (*s).into());
                params.insert("j".into(), (*j).into());
            }
            FamilyKind::A1A { j, j_prime }
            | FamilyKind::A1AFull { j, j_prime }
            | FamilyKind::A1APhi { j, j_prime } => {
                params.insert("j".into(), (*j).into());
                params.insert("j_prime".into(), (*j_prime).into());
            }
            FamilyKind::AA1NFull { j, nu: n } => {
                params.insert("j".into(), (*j).into());
                nu = Some(n);
            }
        }
        let fields = if nu.is_some() { 4 } else { 3 };
        let mut s = serializer.serialize_struct("PatternClass", fields)?;
        s.serialize_field("family", self.kind.name())?;
        s.serialize_field("params", &params)?;
        s.serialize_field("m", &self.m)?;
        if let Some(n) = nu {
            let arrays: Vec<Vec<u8>> = n.iter().map(|g| g.members()).collect();
            s.serialize_field("nu", &arrays)?;
        }
        s.end()
    }
}

impl<'de> Deserialize<'de> for PatternClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            family: String,
            #[serde(default)]
            params: BTreeMap<String, u8>,
            m: u8,
            #[serde(default)]
            nu: Option<Vec<Vec<u8>>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let get = |k: &str| -> std::result::Result<u8, D::Error> {
            repr.params
                .get(k)
                .copied()
                .ok_or_else(|| D::Error::custom(format!("missing parameter {k}")))
        };
        let nu_set = || -> std::result::Result<BTreeSet<GroundSubset>, D::Error> {
            let arrays = repr
                .nu
                .as_ref()
                .ok_or_else(|| D::Error::custom("missing nu selection"))?;
            arrays
                .iter()
                .map(|a| GroundSubset::new(repr.m, a.iter().copied()).map_err(D::Error::custom))
                .collect()
        };
        let kind = match repr.family.as_str() {
            "FullSet" => FamilyKind::FullSet,
            "Phi" => FamilyKind::Phi,
            "A" => FamilyKind::A { j: get("j")? },
            "APlusFull" => FamilyKind::APlusFull { j: get("j")? },
            "APlusPhi" => FamilyKind::APlusPhi { j: get("j")? },
            "A1" => FamilyKind::A1 { j: get("j")? },
            "A1NFull" => FamilyKind::A1NFull { nu: nu_set()? },
            "ANLarge" => FamilyKind::ANLarge { nu: nu_set()? },
            "ANFull" => FamilyKind::ANFull { nu: nu_set()? },
            "D" => FamilyKind::D {
                r: get("r")?,
                s: get("s")?,
            },
            "DPlusA" => FamilyKind::DPlusA {
                r: get("r")?,
                s: get("s")?,
                j: get("j")?,
            },
            "A1Full" => FamilyKind::A1Full { j: get("j")? },
            "A1Phi" => FamilyKind::A1Phi { j: get("j")? },
            "A1A" => FamilyKind::A1A {
                j: get("j")?,
                j_prime: get("j_prime")?,
            },
            "A1AFull" => FamilyKind::A1AFull {
                j: get("j")?,
                j_prime: get("j_prime")?,
            },
            "A1APhi" => FamilyKind::A1APhi {
                j: get("j")?,
                j_prime: get("j_prime")?,
            },
            "AA1NFull" => FamilyKind::AA1NFull {
                j: get("j")?,
                nu: nu_set()?,
            },
            other => return Err(D::Error::custom(format!("unknown family {other}"))),
        };
        PatternClass::new(repr.m, kind).map_err(D::Error::custom)
    }
}

/// Classifier verdict.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "class")]
pub enum Classification {
    Standard(PatternClass),
    Nonstandard,
}

// ---------------------------------------------------------------------------
// Catalogs.
// ---------------------------------------------------------------------------

/// Which classification level a catalog lists.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatalogLevel {
    Standard,
    Hereditary,
    UniqueStableLift,
}

/// A deduplicated catalog of classified patterns at one ground size.
#[derive(Clone, Debug)]
pub struct Catalog {
    m: u8,
    level: CatalogLevel,
    entries: BTreeMap<Pattern, PatternClass>,
}

impl Catalog {
    pub fn ground_size(&self) -> u8 {
        self.m
    }

    pub fn level(&self) -> CatalogLevel {
        self.level
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        self.entries.contains_key(p)
    }

    pub fn class_of(&self, p: &Pattern) -> Option<&PatternClass> {
        self.entries.get(p)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Pattern, &PatternClass)> {
        self.entries.iter()
    }

    pub fn patterns(&self) -> impl Iterator<Item = &Pattern> {
        self.entries.keys()
    }

    pub fn pattern_set(&self) -> BTreeSet<Pattern> {
        self.entries.keys().cloned().collect()
    }
}

fn one_hole_sets(m: u8, min_hole: u8) -> Vec<GroundSubset> {
    (min_hole..=m)
        .map(|d| GroundSubset::from_bits(m, mask_full(m) & !(1 << (d - 1))))
        .collect()
}

/// Every subset of `pool` selected by mask bits, as a selection set.
fn selection(pool: &[GroundSubset], mask: u32) -> BTreeSet<GroundSubset> {
    pool.iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, s)| *s)
        .collect()
}

fn insert_entry(entries: &mut BTreeMap<Pattern, PatternClass>, class: PatternClass) {
    let pattern = class.realize();
    match entries.get_mut(&pattern) {
        Some(existing) => {
            if class < *existing {
                *existing = class;
            }
        }
        None => {
            entries.insert(pattern, class);
        }
    }
}

/// Full item sweep for the standard catalog; `m >= 1`. Degenerate ranges at
/// small `m` simply contribute nothing (or, at `m = 2`, the two selection
/// items with an empty cardinality part, which is exactly what makes every
/// 2-level pattern standard).
fn build_standard(m: u8) -> Result<BTreeMap<Pattern, PatternClass>> {
    check_m(m)?;
    let mut entries = BTreeMap::new();
    let push = |entries: &mut BTreeMap<Pattern, PatternClass>, kind: FamilyKind| {
        let class = PatternClass { m, kind };
        debug_assert!(class.validate().is_ok(), "invalid generated class");
        insert_entry(entries, class);
    };

    push(&mut entries, FamilyKind::FullSet);
    push(&mut entries, FamilyKind::Phi);
    for j in 1..=m {
        push(&mut entries, FamilyKind::A { j });
        push(&mut entries, FamilyKind::A1 { j });
    }
    for j in 1..=m.saturating_sub(2) {
        push(&mut entries, FamilyKind::APlusFull { j });
        push(&mut entries, FamilyKind::APlusPhi { j });
        push(&mut entries, FamilyKind::A1Full { j });
        push(&mut entries, FamilyKind::A1Phi { j });
    }
    if m >= 2 {
        // Items parameterized by a selection of one-hole sets.
        let hole2 = one_hole_sets(m, 2); // m - 1 sets, hole >= 2
        let hole1 = one_hole_sets(m, 1); // m sets
        let full2 = (1u32 << hole2.len()) - 1;
        let full1 = (1u32 << hole1.len()) - 1;
        let anchored: BTreeSet<GroundSubset> = hole2.iter().copied().collect();
        for mask in 1..full2 {
            push(
                &mut entries,
                FamilyKind::A1NFull {
                    nu: selection(&hole2, mask),
                },
            );
        }
        for mask in 1..=full1 {
            if mask.count_ones() != u32::from(m) - 1 {
                continue;
            }
            let nu = selection(&hole1, mask);
            if nu != anchored {
                push(&mut entries, FamilyKind::ANLarge { nu });
            }
        }
        for mask in 1..full1 {
            let nu = selection(&hole1, mask);
            if nu != anchored {
                push(&mut entries, FamilyKind::ANFull { nu });
            }
        }
        for j in 1..=m {
            if m >= 3 && j + 2 < m {
                for mask in 1..full2 {
                    push(
                        &mut entries,
                        FamilyKind::AA1NFull {
                            j,
                            nu: selection(&hole2, mask),
                        },
                    );
                }
            }
        }
    }
    for r in 2..m {
        for s in (r + 2)..m {
            push(&mut entries, FamilyKind::D { r, s });
            for j in 1..=(m - r - 1) {
                push(&mut entries, FamilyKind::DPlusA { r, s, j });
            }
        }
    }
    for j in 2..=m {
        for j_prime in 1..j {
            push(&mut entries, FamilyKind::A1A { j, j_prime });
            if j + 2 <= m {
                push(&mut entries, FamilyKind::A1AFull { j, j_prime });
                push(&mut entries, FamilyKind::A1APhi { j, j_prime });
            }
        }
    }
    Ok(entries)
}

/// The standard catalog: every classified pattern at ground size `m >= 2`,
/// with its canonical label. At `m = 2` this is all seven patterns, the base
/// the lift enumeration grows from.
pub fn standard_catalog(m: u8) -> Result<Catalog> {
    if m < 2 {
        return Err(Error::usage("the standard catalog starts at m = 2".into()));
    }
    Ok(Catalog {
        m,
        level: CatalogLevel::Standard,
        entries: build_standard(m)?,
    })
}

/// The composite family over the widened hereditary range `r >= 1`
/// (and the `r = 0` boundary), realized through the same mask builder.
fn wide_d(r: u8, s: u8, m: u8) -> Pattern {
    Pattern::from_masks_n1(m, d_masks(r, s, m))
}

fn attach_classes(m: u8, level: CatalogLevel, patterns: BTreeSet<Pattern>) -> Result<Catalog> {
    let standard = build_standard(m)?;
    let mut entries = BTreeMap::new();
    for p in patterns {
        let class = standard
            .get(&p)
            .unwrap_or_else(|| panic!("catalog pattern {p} is not standard"))
            .clone();
        entries.insert(p, class);
    }
    Ok(Catalog { m, level, entries })
}

fn hereditary_patterns(m: u8) -> Result<BTreeSet<Pattern>> {
    if m < 3 {
        return Err(Error::usage(
            "the hereditary catalog starts at m = 3".into(),
        ));
    }
    let mut set = BTreeSet::new();
    set.insert(full_pattern(m)?);
    set.insert(phi_pattern(m)?);
    for j in 1..=m {
        set.insert(a_pattern(j, m)?);
        set.insert(a1_pattern(j, m)?);
    }
    for j in 1..=m - 2 {
        set.insert(a_pattern(j, m)?.union(&full_pattern(m)?)?);
        set.insert(a_pattern(j, m)?.union(&phi_pattern(m)?)?);
        set.insert(a1_pattern(j, m)?.union(&full_pattern(m)?)?);
        set.insert(a1_pattern(j, m)?.union(&phi_pattern(m)?)?);
    }
    for r in 1..m {
        for s in (r + 2)..m {
            set.insert(wide_d(r, s, m));
            for j in 1..=(m - r - 1) {
                set.insert(wide_d(r, s, m).union(&a_pattern(j, m)?)?);
            }
        }
    }
    for j in 2..=m {
        for j_prime in 1..j {
            set.insert(a1_pattern(j, m)?.union(&a_pattern(j_prime, m)?)?);
            if j + 2 <= m {
                set.insert(
                    a1_pattern(j, m)?
                        .union(&a_pattern(j_prime, m)?)?
                        .union(&full_pattern(m)?)?,
                );
                set.insert(
                    a1_pattern(j, m)?
                        .union(&a_pattern(j_prime, m)?)?
                        .union(&phi_pattern(m)?)?,
                );
            }
        }
    }
    Ok(set)
}

/// The hereditary catalog for `m >= 3`: the standard items that survive
/// lifting at every level, with the composite-family index range widened to
/// `r >= 1` and the selection items dropped.
pub fn hereditary_catalog(m: u8) -> Result<Catalog> {
    attach_classes(m, CatalogLevel::Hereditary, hereditary_patterns(m)?)
}

/// The unique-stable-lift catalog for `m >= 3`: the hereditary catalog with
/// the unbounded-cardinality items (`j = m`) removed.
pub fn usl_catalog(m: u8) -> Result<Catalog> {
    let mut patterns = hereditary_patterns(m)?;
    patterns.remove(&a_pattern(m, m)?);
    patterns.remove(&a1_pattern(m, m)?);
    for j_prime in 1..m {
        patterns.remove(&a1_pattern(m, m)?.union(&a_pattern(j_prime, m)?)?);
    }
    attach_classes(m, CatalogLevel::UniqueStableLift, patterns)
}

/// Looks a one-dimensional pattern up in the standard catalog at its own
/// ground size. Total on such patterns; higher dimensions are unsupported.
pub fn classify(p: &Pattern) -> Result<Classification> {
    if p.dimension() != 1 {
        return Err(Error::Unsupported(
            "classification is defined for one-dimensional patterns".into(),
        ));
    }
    let entries = build_standard(p.ground_size())?;
    Ok(match entries.get(p) {
        Some(class) => Classification::Standard(class.clone()),
        None => Classification::Nonstandard,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(m: u8, members: &[u8]) -> GroundSubset {
        GroundSubset::new(m, members.iter().copied()).unwrap()
    }

    fn p1(m: u8, subsets: &[&[u8]]) -> Pattern {
        Pattern::from_subsets(m, subsets.iter().map(|s| gs(m, s))).unwrap()
    }

    #[test]
    fn phi_lists_initial_segments() {
        assert_eq!(phi_pattern(3).unwrap(), p1(3, &[&[1], &[1, 2], &[1, 2, 3]]));
    }

    #[test]
    fn hole_band_examples() {
        assert_eq!(h_family(1, 2, 3).unwrap(), p1(3, &[&[1, 3], &[1, 2]]));
        assert_eq!(h_family(0, 2, 3).unwrap(), p1(3, &[&[1, 2, 3]]));
        assert_eq!(eh_family(0, 1, 4).unwrap(), p1(4, &[&[1, 2, 3, 4]]));
        assert_eq!(
            eh_family(2, 1, 3).unwrap(),
            p1(3, &[&[3], &[2]]) // holes {1,2} and {1,3}
        );
        assert!(h_family(3, 1, 3).is_err());
        assert!(h_family(2, 3, 3).is_err());
        assert!(eh_family(1, 4, 3).is_err());
    }

    #[test]
    fn composite_family_matches_its_expansion() {
        let d = d_pattern(2, 4, 6).unwrap();
        let expected = a1_pattern(3, 6)
            .unwrap()
            .union(&h_family(1, 4, 6).unwrap())
            .unwrap()
            .union(&h_family(2, 3, 6).unwrap())
            .unwrap()
            .union(&full_pattern(6).unwrap())
            .unwrap();
        assert_eq!(d, expected);
        assert_eq!(d, d_pattern_alt(2, 4, 6).unwrap());
    }

    #[test]
    fn composite_family_boundaries() {
        // r = 0 collapses to all anchored sets.
        assert_eq!(d_pattern(0, 3, 5).unwrap(), a1_pattern(5, 5).unwrap());
        // s = m joins the anchored bound with the initial segments.
        assert_eq!(
            d_pattern(1, 4, 4).unwrap(),
            a1_pattern(2, 4)
                .unwrap()
                .union(&phi_pattern(4).unwrap())
                .unwrap()
        );
        assert!(d_pattern(3, 3, 5).is_err());
        assert!(d_pattern(1, 6, 5).is_err());
        assert!(d_pattern(5, 6, 5).is_err());
        assert!(d_pattern_alt(1, 3, 5).is_err());
    }

    #[test]
    fn cardinality_constructors_validate() {
        assert!(a_pattern(0, 3).is_err());
        assert!(a_pattern(4, 3).is_err());
        assert!(a1_pattern(0, 3).is_err());
        assert_eq!(a_pattern(1, 3).unwrap(), p1(3, &[&[1], &[2], &[3]]));
        assert_eq!(a1_pattern(1, 3).unwrap(), p1(3, &[&[1]]));
    }

    #[test]
    fn standard_catalog_at_three_has_twenty() {
        let catalog = standard_catalog(3).unwrap();
        assert_eq!(catalog.len(), 20);
        assert!(catalog.contains(&phi_pattern(3).unwrap()));
        assert!(catalog.contains(&full_pattern(3).unwrap()));
        assert!(catalog.contains(&a_pattern(1, 3).unwrap()));
        assert!(catalog.contains(
            &a1_pattern(1, 3)
                .unwrap()
                .union(&full_pattern(3).unwrap())
                .unwrap()
        ));
        assert!(catalog.contains(&a1_pattern(2, 3).unwrap()));
        // A pattern that is not standard.
        assert!(!catalog.contains(&p1(3, &[&[1], &[1, 2]])));
    }

    #[test]
    fn standard_catalog_at_two_is_everything() {
        let catalog = standard_catalog(2).unwrap();
        assert_eq!(catalog.len(), 7);
        assert!(catalog.contains(&p1(2, &[&[2]])));
        assert!(catalog.contains(&p1(2, &[&[2], &[1, 2]])));
        assert!(standard_catalog(1).is_err());
    }

    #[test]
    fn catalog_classes_realize_back() {
        for m in 2..=5 {
            let catalog = standard_catalog(m).unwrap();
            for (pattern, class) in catalog.entries() {
                assert_eq!(&class.realize(), pattern);
                assert_eq!(
                    classify(pattern).unwrap(),
                    Classification::Standard(class.clone())
                );
            }
        }
    }

    #[test]
    fn hereditary_catalog_examples() {
        let h3 = hereditary_catalog(3).unwrap();
        assert_eq!(h3.len(), 13);
        assert!(h3.contains(&a1_pattern(3, 3).unwrap()));
        let item8_shaped = a_pattern(1, 3)
            .unwrap()
            .union(&p1(3, &[&[2, 3], &[1, 2]]))
            .unwrap();
        assert!(!h3.contains(&item8_shaped));
        assert!(hereditary_catalog(2).is_err());

        let h4 = hereditary_catalog(4).unwrap();
        assert!(h4.contains(&wide_d(1, 3, 4)));
    }

    #[test]
    fn usl_catalog_examples() {
        let u3 = usl_catalog(3).unwrap();
        assert!(u3.contains(&phi_pattern(3).unwrap()));
        assert!(u3.contains(&a_pattern(1, 3).unwrap()));
        assert!(!u3.contains(&a_pattern(3, 3).unwrap()));
        assert!(!u3.contains(&a1_pattern(3, 3).unwrap()));
        assert_eq!(u3.len(), 10);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&phi_pattern(3).unwrap()).unwrap(),
            Classification::Standard(PatternClass::new(3, FamilyKind::Phi).unwrap())
        );
        assert_eq!(
            classify(&p1(3, &[&[1], &[2], &[3]])).unwrap(),
            Classification::Standard(PatternClass::new(3, FamilyKind::A { j: 1 }).unwrap())
        );
        assert_eq!(
            classify(&p1(3, &[&[1], &[1, 2]])).unwrap(),
            Classification::Nonstandard
        );
        let two_dim = Pattern::new(2, 2, vec![vec![gs(2, &[1]), gs(2, &[1])]]).unwrap();
        assert!(classify(&two_dim).is_err());
    }

    #[test]
    fn class_json_round_trip() {
        let class = PatternClass::new(6, FamilyKind::D { r: 2, s: 4 }).unwrap();
        let json = serde_json::to_string(&class).unwrap();
        assert_eq!(json, r#"{"family":"D","params":{"r":2,"s":4},"m":6}"#);
        let back: PatternClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, class);

        let nu: BTreeSet<GroundSubset> = [gs(4, &[1, 2, 4])].into();
        let class = PatternClass::new(4, FamilyKind::A1NFull { nu }).unwrap();
        let json = serde_json::to_string(&class).unwrap();
        let back: PatternClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, class);
        assert!(json.contains(r#""nu":[[1,2,4]]"#));
    }

    #[test]
    fn invalid_classes_are_rejected() {
        assert!(PatternClass::new(3, FamilyKind::D { r: 2, s: 4 }).is_err());
        assert!(PatternClass::new(6, FamilyKind::D { r: 1, s: 4 }).is_err());
        assert!(PatternClass::new(3, FamilyKind::APlusFull { j: 2 }).is_err());
        let anchored: BTreeSet<GroundSubset> = one_hole_sets(3, 2).into_iter().collect();
        assert!(PatternClass::new(3, FamilyKind::ANLarge { nu: anchored }).is_err());
    }
}
