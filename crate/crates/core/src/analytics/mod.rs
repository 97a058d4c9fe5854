//! Intersection statistics among minimal sub-designs, checked against their
//! closed forms.
//!
//! For an ordered pair `(D1, D2)` of minimal sub-designs the remaining
//! sub-designs `D` are tallied by `(|D ∩ (D1 \ D2)|, |D ∩ D1 ∩ D2|,
//! |D ∩ (D2 \ D1)|)`. The admissible triples depend on `|D1 ∩ D2|`, which is
//! 1, k or 0; see [`class_tuples`].

mod bounds;
pub mod formulas;
mod means;
mod pair;
mod triple;

use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;

pub use bounds::{bounds_report, BoundsReport, CorollaryBounds, NLessB, PairBound, VRegime};
pub use formulas::{dependent_counts, global_means, ConnorSums, GlobalMeans, WdParams};
pub use means::{mean_profiles, verify_cross_relations, verify_mean_system, MeanProfile};
pub use pair::{pair_stats, BlockCounts, PairStats, VertexCounts};
pub use triple::{
    all_triple_profiles, solve_dependent_counts, triple_profile, verify_connor_sums, TripleProfile,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticsError {
    #[error("minimal sub-designs are not well-distributed")]
    NotWellDistributed,
    #[error("a triple profile needs two distinct sub-designs, got {0} twice")]
    SamePair(usize),
    #[error("sub-designs {d1} and {d2} meet in {size} vertices; expected 0, 1 or k")]
    BadIntersectionSize { d1: usize, d2: usize, size: usize },
    #[error("third sub-design meets the pair as {tuple:?}, which fits no class")]
    UnclassifiedTriple { tuple: (usize, usize, usize) },
    #[error("{which}: {lhs} != {rhs}")]
    IdentityViolation {
        which: String,
        lhs: String,
        rhs: String,
    },
    #[error("dependent count {index} evaluates to {value}, not an integer")]
    NonIntegerResult { index: usize, value: Rational },
    #[error("expected {expected} free counts, got {found}")]
    WrongFreeCount { expected: usize, found: usize },
    #[error("no pair of sub-designs meets in {which}")]
    PreconditionUnmet { which: &'static str },
}

/// How two sub-designs meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleCase {
    /// In a single vertex.
    Point,
    /// In a block.
    Block,
    /// Not at all.
    Disjoint,
}

impl TripleCase {
    pub const ALL: [TripleCase; 3] = [TripleCase::Point, TripleCase::Block, TripleCase::Disjoint];

    pub fn from_meet(size: usize, k: usize) -> Option<Self> {
        match size {
            0 => Some(TripleCase::Disjoint),
            1 => Some(TripleCase::Point),
            s if s == k => Some(TripleCase::Block),
            _ => None,
        }
    }

    pub fn class_count(self) -> usize {
        match self {
            TripleCase::Disjoint => 9,
            _ => 13,
        }
    }

    pub fn free_count(self) -> usize {
        match self {
            TripleCase::Disjoint => 3,
            _ => 4,
        }
    }

    /// Class-name prefix: `a` for point, `c` for block, `e` for disjoint.
    pub fn prefix(self) -> char {
        match self {
            TripleCase::Point => 'a',
            TripleCase::Block => 'c',
            TripleCase::Disjoint => 'e',
        }
    }
}

/// The `(i1, i2, i3)` triples naming each class, in class order.
pub fn class_tuples(case: TripleCase, k: usize) -> Vec<(usize, usize, usize)> {
    let j = k - 1;
    match case {
        TripleCase::Point | TripleCase::Block => vec![
            (k, 0, k),
            (j, 1, j),
            (k, 0, 1),
            (1, 0, k),
            (k, 0, 0),
            (0, 0, k),
            (j, 1, 0),
            (0, 1, j),
            (1, 0, 1),
            (1, 0, 0),
            (0, 0, 1),
            (0, 1, 0),
            (0, 0, 0),
        ],
        TripleCase::Disjoint => vec![
            (k, 0, k),
            (k, 0, 1),
            (1, 0, k),
            (k, 0, 0),
            (0, 0, k),
            (1, 0, 1),
            (1, 0, 0),
            (0, 0, 1),
            (0, 0, 0),
        ],
    }
}
