//! Combinatorics of stable collections of subsets of a finite set.
//!
//! A *pattern* over the ground set `{1..m}` is a nonempty set of n-tuples of
//! nonempty subsets. Coarsening the ground set with an ordered partition
//! induces a pattern over the block indices; a pattern is *stable* when the
//! induced pattern depends only on the number of blocks. This crate provides:
//!
//! - the subset/partition calculus ([`ground`]) and the pattern type with
//!   induction and exhaustive generation ([`pattern`]);
//! - constructors and complete catalogs for the standard, hereditary, and
//!   unique-lift classifications, plus a classifier ([`standard`]);
//! - stability checking, one-level stable lifts, brute-force and lift-based
//!   enumeration of all stable patterns, and lift-chain analyses
//!   ([`stability`]);
//! - the eighteen coherent pattern families and a trace identifier
//!   ([`family`]);
//! - desk-scale stabilizing-partition and monochromatic-partition searches
//!   together with the threshold recursion over a pluggable oracle
//!   ([`ramsey`]);
//! - named verification suites and the command-line frontend ([`verify`],
//!   [`cli`]).
//!
//! Run `cargo run --example catalogs` (or any of the other examples) for a
//! guided tour; the `stable-patterns` binary exposes the same operations as
//! subcommands.

pub mod cli;
pub mod family;
pub mod ground;
pub mod pattern;
pub mod ramsey;
pub mod stability;
pub mod standard;
pub mod verify;

pub use ground::{GroundSubset, OrderedPartition};
pub use pattern::{Pattern, Permutation};
pub use standard::{Catalog, Classification, PatternClass};

/// Errors across the crate. Usage errors are caller mistakes (bad indices,
/// mismatched ground sizes), domain errors are violated mathematical
/// preconditions, and budget errors are refusals to start a scan that would
/// exceed the configured candidate budget.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("budget exceeded: {task} needs {required} candidates, budget is {budget}")]
    Budget {
        task: String,
        required: String,
        budget: u64,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn usage(msg: String) -> Self {
        Error::Usage(msg)
    }

    pub(crate) fn domain(msg: String) -> Self {
        Error::Domain(msg)
    }

    pub(crate) fn budget(task: impl Into<String>, required: impl ToString, budget: u64) -> Self {
        Error::Budget {
            task: task.into(),
            required: required.to_string(),
            budget,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
