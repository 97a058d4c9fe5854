use serde::Serialize;

use super::formulas::{global_means, WdParams};
use super::triple::{all_triple_profiles, TripleProfile};
use super::{AnalyticsError, TripleCase};
use crate::design::Design;
use crate::rational::Rational;
use crate::subdesign::SubDesign;
use crate::verify::VerificationRecord;

/// Class sums and means over ordered pairs, per intersection case.
/// A case with no pairs has no means (`None`), which is not the same as 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeanProfile {
    pub point_pairs: usize,
    pub block_pairs: usize,
    pub disjoint_pairs: usize,
    pub a_sums: Vec<i128>,
    pub c_sums: Vec<i128>,
    pub exact_block_sum: i128,
    pub e_sums: Vec<i128>,
    pub a_means: Option<Vec<Rational>>,
    pub c_means: Option<Vec<Rational>>,
    pub e_means: Option<Vec<Rational>>,
}

fn means(sums: &[i128], pairs: usize) -> Option<Vec<Rational>> {
    (pairs > 0).then(|| {
        sums.iter()
            .map(|&s| Rational::new(s, pairs as i128))
            .collect()
    })
}

impl MeanProfile {
    pub fn from_profiles(profiles: &[TripleProfile]) -> Self {
        let mut sums = [vec![0i128; 13], vec![0i128; 13], vec![0i128; 9]];
        let mut pairs = [0usize; 3];
        let mut exact_block_sum = 0;
        for p in profiles {
            let slot = TripleCase::ALL.iter().position(|&c| c == p.case).unwrap();
            pairs[slot] += 1;
            for (s, &c) in sums[slot].iter_mut().zip(&p.counts) {
                *s += c as i128;
            }
            exact_block_sum += p.exact_block as i128;
        }
        let [a_sums, c_sums, e_sums] = sums;
        MeanProfile {
            point_pairs: pairs[0],
            block_pairs: pairs[1],
            disjoint_pairs: pairs[2],
            a_means: means(&a_sums, pairs[0]),
            c_means: means(&c_sums, pairs[1]),
            e_means: means(&e_sums, pairs[2]),
            a_sums,
            c_sums,
            exact_block_sum,
            e_sums,
        }
    }
}

pub fn mean_profiles(d: &Design, subs: &[SubDesign]) -> Result<MeanProfile, AnalyticsError> {
    Ok(MeanProfile::from_profiles(&all_triple_profiles(d, subs)?))
}

/// Relations between class sums of different cases, and the mirror
/// equalities within a case. Both sides are summed independently, so an
/// empty case contributes 0 on its side.
pub fn verify_cross_relations(mp: &MeanProfile) -> VerificationRecord {
    let mut rec = VerificationRecord::new();
    let (a, c, e) = (&mp.a_sums, &mp.c_sums, &mp.e_sums);
    let cross = [
        ("a1 ~ c3", a[0], c[2]),
        ("a2 ~ c7", a[1], c[6]),
        ("a3 ~ c9", a[2], c[8]),
        ("a5 ~ c10", a[4], c[9]),
        ("c10 ~ e2", c[9], e[1]),
        ("a7 ~ c12", a[6], c[11]),
        ("a10 ~ e6", a[9], e[5]),
        ("a13 ~ e7", a[12], e[6]),
        ("c5 ~ e1", c[4], e[0]),
        ("c13 ~ e4", c[12], e[3]),
    ];
    for (which, lhs, rhs) in cross {
        rec.check_eq(which, lhs, rhs);
    }
    for (p, sums) in [('a', a), ('c', c)] {
        for (i, j) in [(3, 4), (5, 6), (7, 8), (10, 11)] {
            rec.check_eq(format!("{p}{i} = {p}{j}"), sums[i - 1], sums[j - 1]);
        }
    }
    for (i, j) in [(2, 3), (4, 5), (7, 8)] {
        rec.check_eq(format!("e{i} = e{j}"), e[i - 1], e[j - 1]);
    }
    rec
}

/// Every mean recomputed from `a1, a2, a3` through the global system. Only
/// defined when all three intersection sizes occur.
pub fn verify_mean_system(
    mp: &MeanProfile,
    p: &WdParams,
) -> Result<VerificationRecord, AnalyticsError> {
    let a = mp
        .a_means
        .as_ref()
        .ok_or(AnalyticsError::PreconditionUnmet {
            which: "one vertex",
        })?;
    let c = mp
        .c_means
        .as_ref()
        .ok_or(AnalyticsError::PreconditionUnmet { which: "a block" })?;
    let e = mp
        .e_means
        .as_ref()
        .ok_or(AnalyticsError::PreconditionUnmet {
            which: "the empty set",
        })?;
    let g = global_means(p, a[0], a[1], a[2]);
    let mut rec = VerificationRecord::new();
    for (prefix, observed, predicted) in [('a', a, &g.a), ('c', c, &g.c), ('e', e, &g.e)] {
        for (i, (&o, &q)) in observed.iter().zip(predicted).enumerate() {
            rec.check_eq(format!("mean {prefix}{}", i + 1), o, q);
        }
    }
    Ok(rec)
}
