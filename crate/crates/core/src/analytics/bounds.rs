use serde::Serialize;

use super::formulas::WdParams;
use super::means::MeanProfile;
use super::triple::TripleProfile;
use super::TripleCase;
use crate::rational::Rational;
use crate::verify::VerificationRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VRegime {
    Small,
    Large,
    Indeterminate,
    /// The dichotomy needs `k >= 4`.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NLessB {
    /// No two sub-designs meet in a single vertex.
    ProvedCase1,
    /// `v' > k^2 - k + 1` and no two sub-designs are disjoint.
    ProvedCase2,
    Unproved,
}

/// An upper bound on one class count, checked on every pair and on the mean.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairBound {
    pub class: String,
    pub bound: Rational,
    pub max_observed: Option<usize>,
    pub mean: Option<Rational>,
    pub holds: bool,
}

/// Bounds on the free means that need all three intersection sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryBounds {
    pub a1_max: Rational,
    pub a2_min: Rational,
    pub a2_max: Rational,
    pub a1_plus_a3_min: Rational,
    pub a1_plus_a3_max: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub m: usize,
    pub m_basic_bound: Rational,
    pub m_basic_tight: bool,
    pub v_regime: VRegime,
    pub m_small_v_bound: Option<Rational>,
    pub n_less_b: NLessB,
    pub n: usize,
    pub b: usize,
    pub pair_bounds: Vec<PairBound>,
    pub corollary: Option<CorollaryBounds>,
    pub verification: VerificationRecord,
}

fn floor_div(a: Rational, b: Rational) -> Rational {
    Rational::int((a / b).floor())
}

/// The small/large split from `I_0 >= 0`, decided in integers: with
/// `A = v'^2`, `v` is small when `2v - 1 < (1 - s) A` and large when
/// `2v - 1 > (1 + s) A`, where `s = sqrt(1 - 4/k)`.
pub fn v_regime(v: usize, k: usize, vp: usize) -> VRegime {
    if k < 4 {
        return VRegime::NotApplicable;
    }
    let (v, k, a) = (v as i128, k as i128, (vp * vp) as i128);
    let small_gap = a - 2 * v + 1;
    let large_gap = 2 * v - 1 - a;
    if small_gap > 0 && (k - 4) * a * a < k * small_gap * small_gap {
        VRegime::Small
    } else if large_gap > 0 && k * large_gap * large_gap > (k - 4) * a * a {
        VRegime::Large
    } else {
        VRegime::Indeterminate
    }
}

fn per_pair_bounds(p: &WdParams) -> Vec<(TripleCase, usize, Rational)> {
    let (k, vp) = (p.k, p.vp);
    let kk1 = k * (k - 1);
    let off = vp - k * k + k - 1;
    vec![
        (
            TripleCase::Point,
            0,
            (vp - 1) * (vp - k) / kk1 * floor_div(vp - 1, k),
        ),
        (
            TripleCase::Point,
            1,
            (vp - 1) * (vp - 1) / ((k - 1) * (k - 1)),
        ),
        (TripleCase::Point, 2, (vp - 1) * (vp - 1) * (vp - k) / kk1),
        (
            TripleCase::Block,
            0,
            off * (vp - k) / kk1 * floor_div(vp - k, k),
        ),
        (
            TripleCase::Block,
            1,
            k * (vp - k) * (vp - k) / ((k - 1) * (k - 1)),
        ),
        (TripleCase::Block, 2, off * (vp - k) * (vp - k) / kk1),
        (
            TripleCase::Disjoint,
            0,
            vp * (vp - 1) / kk1 * floor_div(vp, k),
        ),
        (TripleCase::Disjoint, 1, vp * vp * (vp - 1) / kk1),
    ]
}

fn corollary(p: &WdParams) -> CorollaryBounds {
    let (k, vp, m) = (p.k, p.vp, p.m);
    let kk1 = k * (k - 1);
    let off = vp - k * k + k - 1;
    let rk = p.i_k() / p.i_1();
    let r0 = p.i_0() / p.i_1();
    let zero = Rational::zero();
    let outer = (vp - 1) * (vp - k) / kk1;
    CorollaryBounds {
        a1_max: (outer * floor_div(vp - 1, k)).min(rk * off * (vp - k) * (vp - k) / kk1),
        a2_min: zero.max(rk * k * (vp - k) / (k - 1) * (m - (vp - 1) / (k - 1))),
        a2_max: ((vp - 1) * (vp - 1) / ((k - 1) * (k - 1)))
            .min((m - 1) * (vp - 1) / (k - 1))
            .min(rk * k * (vp - k) * (m - 1) / (k - 1)),
        a1_plus_a3_min: zero.max((vp - 1) / kk1 * ((m - 1) * (vp - k) - r0 * vp * vp)),
        a1_plus_a3_max: outer
            * (floor_div(vp - 1, k) + vp - 1)
                .min(rk * off * (vp - k) / (vp - 1) + vp - 1)
                .min(m - 1),
    }
}

/// Evaluates every bound and records whether it holds on the observed data.
pub fn bounds_report(
    p: &WdParams,
    n: usize,
    b: usize,
    mp: &MeanProfile,
    profiles: &[TripleProfile],
) -> BoundsReport {
    let mut rec = VerificationRecord::new();
    let int = |r: Rational| r.to_integer().expect("integer parameter") as usize;
    let (v, k, vp, m) = (int(p.v), int(p.k), int(p.vp), int(p.m));

    let m_basic_bound = (p.v - p.k) / (p.vp - p.k);
    rec.check_le("m <= (v-k)/(v'-k)", p.m, m_basic_bound);

    let small_v = (p.vp - 1) * (p.vp - 1) / (p.k - 1) + 1;
    let m_small_v_bound = (p.v < small_v).then(|| {
        let bound = ((p.vp - p.k) / (p.k - 1)) / ((p.vp - 1) / (p.k - 1) - (p.v - 1) / (p.vp - 1));
        rec.check_le("m <= small-v bound", p.m, bound);
        bound
    });

    let (i1, i0) = (p.i_1(), p.i_0());
    let n_less_b = if i1.is_zero() {
        NLessB::ProvedCase1
    } else if vp > k * k - k + 1 && i0.is_zero() {
        NLessB::ProvedCase2
    } else {
        NLessB::Unproved
    };
    if n_less_b != NLessB::Unproved {
        rec.check(format!("n < b ({n} < {b})"), n < b);
    }

    let mut pair_bounds = Vec::new();
    for (case, idx, bound) in per_pair_bounds(p) {
        let observed: Vec<usize> = profiles
            .iter()
            .filter(|pr| pr.case == case)
            .map(|pr| pr.counts[idx])
            .collect();
        let max_observed = observed.iter().copied().max();
        let mean = match case {
            TripleCase::Point => mp.a_means.as_ref(),
            TripleCase::Block => mp.c_means.as_ref(),
            TripleCase::Disjoint => mp.e_means.as_ref(),
        }
        .map(|ms| ms[idx]);
        let class = format!("{}{}", case.prefix(), idx + 1);
        let holds = max_observed.map_or(true, |x| Rational::from(x) <= bound)
            && mean.map_or(true, |x| x <= bound);
        rec.check(format!("{class} <= {bound}"), holds);
        pair_bounds.push(PairBound {
            class,
            bound,
            max_observed,
            mean,
            holds,
        });
    }

    let corollary = match (&mp.a_means, mp.c_means.is_some() && mp.e_means.is_some()) {
        (Some(a), true) => {
            let cb = corollary(p);
            rec.check_le("a1 mean <= corollary max", a[0], cb.a1_max);
            rec.check_le("corollary a2 min <= a2 mean", cb.a2_min, a[1]);
            rec.check_le("a2 mean <= corollary max", a[1], cb.a2_max);
            rec.check_le(
                "corollary (a1+a3) min <= mean",
                cb.a1_plus_a3_min,
                a[0] + a[2],
            );
            rec.check_le(
                "a1+a3 mean <= corollary max",
                a[0] + a[2],
                cb.a1_plus_a3_max,
            );
            Some(cb)
        }
        _ => None,
    };

    BoundsReport {
        m,
        m_basic_tight: p.m == m_basic_bound,
        m_basic_bound,
        v_regime: v_regime(v, k, vp),
        m_small_v_bound,
        n_less_b,
        n,
        b,
        pair_bounds,
        corollary,
        verification: rec,
    }
}
