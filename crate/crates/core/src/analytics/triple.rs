use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::formulas::{dependent_counts, ConnorSums, WdParams};
use super::{class_tuples, AnalyticsError, TripleCase};
use crate::design::Design;
use crate::rational::Rational;
use crate::subdesign::SubDesign;
use crate::verify::VerificationRecord;

/// Class counts of the third sub-designs for one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleProfile {
    pub d1: usize,
    pub d2: usize,
    pub case: TripleCase,
    pub k: usize,
    pub counts: Vec<usize>,
    /// Sub-designs meeting both exactly in the common block (block case only).
    pub exact_block: usize,
    /// Brute-force sums over all third sub-designs, exact-block ones included.
    pub sums: ConnorSums<i128>,
}

impl TripleProfile {
    pub fn total(&self) -> usize {
        self.counts.iter().sum::<usize>() + self.exact_block
    }

    pub fn free(&self) -> &[usize] {
        &self.counts[..self.case.free_count()]
    }

    pub fn class_name(&self, index: usize) -> String {
        format!("{}{}", self.case.prefix(), index + 1)
    }
}

pub fn triple_profile(
    d: &Design,
    subs: &[SubDesign],
    d1: usize,
    d2: usize,
) -> Result<TripleProfile, AnalyticsError> {
    if d1 == d2 {
        return Err(AnalyticsError::SamePair(d1));
    }
    let k = d.k();
    let (s1, s2) = (subs[d1].mask(), subs[d2].mask());
    let meet = s1.intersection_count(s2);
    let case = TripleCase::from_meet(meet, k).ok_or(AnalyticsError::BadIntersectionSize {
        d1,
        d2,
        size: meet,
    })?;
    let mut common: FixedBitSet = s1.clone();
    common.intersect_with(s2);
    let tuples = class_tuples(case, k);
    let mut counts = vec![0usize; tuples.len()];
    let mut exact_block = 0;
    let mut sums = ConnorSums::<i128>::default();
    for (idx, s) in subs.iter().enumerate() {
        if idx == d1 || idx == d2 {
            continue;
        }
        let i2 = s.mask().intersection_count(&common);
        let i1 = s.mask().intersection_count(s1) - i2;
        let i3 = s.mask().intersection_count(s2) - i2;
        let (a, b, c) = (i1 as i128, i2 as i128, i3 as i128);
        sums.s1 += a;
        sums.s3 += c;
        sums.s11 += a * a;
        sums.s33 += c * c;
        sums.s2 += b;
        sums.s12 += a * b;
        sums.s23 += b * c;
        sums.s13 += a * c;
        if case == TripleCase::Block && (i1, i2, i3) == (0, k, 0) {
            exact_block += 1;
            continue;
        }
        let class = tuples.iter().position(|&t| t == (i1, i2, i3)).ok_or(
            AnalyticsError::UnclassifiedTriple {
                tuple: (i1, i2, i3),
            },
        )?;
        counts[class] += 1;
    }
    Ok(TripleProfile {
        d1,
        d2,
        case,
        k,
        counts,
        exact_block,
        sums,
    })
}

/// Profiles of every ordered pair, in `(d1, d2)` order.
pub fn all_triple_profiles(
    d: &Design,
    subs: &[SubDesign],
) -> Result<Vec<TripleProfile>, AnalyticsError> {
    let n = subs.len();
    (0..n * n)
        .into_par_iter()
        .filter(|i| i / n != i % n)
        .map(|i| triple_profile(d, subs, i / n, i % n))
        .collect()
}

fn violation(which: &str, lhs: impl ToString, rhs: impl ToString) -> AnalyticsError {
    AnalyticsError::IdentityViolation {
        which: which.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Checks the brute-force sums against their closed forms, the class counts
/// against the brute-force sums, and the class total.
pub fn verify_connor_sums(
    profile: &TripleProfile,
    p: &WdParams,
) -> Result<VerificationRecord, AnalyticsError> {
    let mut rec = VerificationRecord::new();
    let brute = profile.sums;
    let closed = ConnorSums::closed_form(p, profile.case);
    let brute_q = ConnorSums {
        s1: Rational::from(brute.s1),
        s3: Rational::from(brute.s3),
        s11: Rational::from(brute.s11),
        s33: Rational::from(brute.s33),
        s2: Rational::from(brute.s2),
        s12: Rational::from(brute.s12),
        s23: Rational::from(brute.s23),
        s13: Rational::from(brute.s13),
    };
    for ((which, lhs), (_, rhs)) in brute_q.fields().into_iter().zip(closed.fields()) {
        if !rec.check_eq(which, lhs, rhs) {
            return Err(violation(which, lhs, rhs));
        }
    }

    let k = profile.k as i128;
    let mut weighted = ConnorSums::<i128> {
        s2: k * profile.exact_block as i128,
        ..Default::default()
    };
    for (&(a, b, c), &n) in class_tuples(profile.case, profile.k)
        .iter()
        .zip(&profile.counts)
    {
        let (a, b, c, n) = (a as i128, b as i128, c as i128, n as i128);
        weighted.s1 += n * a;
        weighted.s3 += n * c;
        weighted.s11 += n * a * a;
        weighted.s33 += n * c * c;
        weighted.s2 += n * b;
        weighted.s12 += n * a * b;
        weighted.s23 += n * b * c;
        weighted.s13 += n * a * c;
    }
    if !rec.check_eq(
        "class-weighted sums",
        format!("{weighted:?}"),
        format!("{brute:?}"),
    ) {
        return Err(violation(
            "class-weighted sums",
            format!("{weighted:?}"),
            format!("{brute:?}"),
        ));
    }

    let total = Rational::from(profile.total());
    let expected = p.n() - 2;
    if !rec.check_eq("class total", total, expected) {
        return Err(violation("class total", total, expected));
    }
    if profile.case == TripleCase::Block {
        let exact = Rational::from(profile.exact_block);
        if !rec.check_eq("exact-block class", exact, p.m - 2) {
            return Err(violation("exact-block class", exact, p.m - 2));
        }
    }
    Ok(rec)
}

/// Evaluates every count of a case from its free counts. Fails if any value
/// is not an integer.
pub fn solve_dependent_counts(
    free: &[usize],
    p: &WdParams,
    case: TripleCase,
) -> Result<Vec<i128>, AnalyticsError> {
    if free.len() != case.free_count() {
        return Err(AnalyticsError::WrongFreeCount {
            expected: case.free_count(),
            found: free.len(),
        });
    }
    let free: Vec<Rational> = free.iter().map(|&x| Rational::from(x)).collect();
    dependent_counts(p, case, &free)
        .into_iter()
        .enumerate()
        .map(|(index, value)| {
            value
                .to_integer()
                .ok_or(AnalyticsError::NonIntegerResult { index, value })
        })
        .collect()
}
