//! The full analysis pipeline and its report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analytics::{
    all_triple_profiles, bounds_report, pair_stats, solve_dependent_counts, verify_connor_sums,
    verify_cross_relations, verify_mean_system, BoundsReport, MeanProfile, TripleCase,
    TripleProfile, WdParams,
};
use crate::design::{Design, DesignParams, Vertex};
use crate::subdesign::{minimal_subdesigns, wd_profile_of, WdProfile};
use crate::verify::{VerificationRecord, Violation};
use crate::wl::{
    classify_gip_case_with, verify_lambda1_stable, wl2_refine, GipCase, IncidenceGraph,
    InitialColouring, PairColoring, WlSummary, MAX_NODES,
};

/// Triple profiles kept per intersection case unless `full` is set.
pub const PROFILE_SAMPLE: usize = 20;

#[derive(Debug, Clone, Copy, Default)]
pub struct PipelineOptions {
    /// Keep every triple profile in the report.
    pub full: bool,
    pub initial: InitialColouring,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdesignSummary {
    pub count: usize,
    pub size: Option<usize>,
    pub vertex_sets: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsSummary {
    pub reference_pairs: usize,
    pub i_k: usize,
    pub i_1: usize,
    pub i_0: usize,
    pub ordered_pairs: usize,
    pub profiles_sampled: bool,
    pub profiles: Vec<TripleProfile>,
    pub means: MeanProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub params: DesignParams,
    pub subdesigns: SubdesignSummary,
    pub wd_profile: Option<WdProfile>,
    pub stats: Option<StatsSummary>,
    pub bounds: Option<BoundsReport>,
    pub wl: Option<WlSummary>,
    pub gip: GipCase,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn stats(
    d: &Design,
    subs: &[crate::subdesign::SubDesign],
    wd: &WdProfile,
    p: &WdParams,
    full: bool,
    rec: &mut VerificationRecord,
) -> Option<(StatsSummary, BoundsReport)> {
    let mut first = None;
    for d1 in 0..subs.len() {
        match pair_stats(d, subs, wd, d1) {
            Ok(st) => {
                rec.merge(st.verify(p));
                first.get_or_insert((st.i_k, st.i_1, st.i_0));
            }
            Err(e) => rec.fail(format!("pair statistics of sub-design {d1}"), e),
        }
    }
    let profiles = match all_triple_profiles(d, subs) {
        Ok(ps) => ps,
        Err(e) => {
            rec.fail("triple profiles", e);
            return None;
        }
    };
    for pr in &profiles {
        match verify_connor_sums(pr, p) {
            Ok(r) => rec.merge(r),
            Err(e) => rec.fail(format!("sums for ({}, {})", pr.d1, pr.d2), e),
        }
        match solve_dependent_counts(pr.free(), p, pr.case) {
            Ok(solved) => {
                let observed: Vec<i128> = pr.counts.iter().map(|&c| c as i128).collect();
                rec.check(
                    format!("solved counts for ({}, {})", pr.d1, pr.d2),
                    solved == observed,
                );
            }
            Err(e) => rec.fail(format!("solving counts for ({}, {})", pr.d1, pr.d2), e),
        }
    }
    let means = MeanProfile::from_profiles(&profiles);
    rec.merge(verify_cross_relations(&means));
    if let Ok(r) = verify_mean_system(&means, p) {
        rec.merge(r);
    }
    let bounds = bounds_report(p, subs.len(), d.b(), &means, &profiles);
    rec.merge(bounds.verification.clone());

    let ordered_pairs = profiles.len();
    let kept: Vec<TripleProfile> = if full {
        profiles
    } else {
        TripleCase::ALL
            .iter()
            .flat_map(|&c| {
                profiles
                    .iter()
                    .filter(move |pr| pr.case == c)
                    .take(PROFILE_SAMPLE)
                    .cloned()
            })
            .collect()
    };
    let (i_k, i_1, i_0) = first.unwrap_or_default();
    Some((
        StatsSummary {
            reference_pairs: subs.len(),
            i_k,
            i_1,
            i_0,
            ordered_pairs,
            profiles_sampled: !full,
            profiles: kept,
            means,
        },
        bounds,
    ))
}

/// Sub-design statistics and bounds alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub wd_profile: Option<WdProfile>,
    pub stats: Option<StatsSummary>,
    pub bounds: Option<BoundsReport>,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

pub fn stats_report(d: &Design, full: bool) -> StatsReport {
    let mut rec = VerificationRecord::new();
    let subs = minimal_subdesigns(d);
    let wd = wd_profile_of(d, &subs).ok();
    let (mut stats_summary, mut bounds) = (None, None);
    match &wd {
        Some(wd) => {
            rec.merge(wd.verify(d, &subs));
            match wd.require_wd() {
                Ok((_, m)) => {
                    let p = WdParams::new(d.v(), d.k(), wd.v_prime, m);
                    if let Some((s, b)) = stats(d, &subs, wd, &p, full, &mut rec) {
                        stats_summary = Some(s);
                        bounds = Some(b);
                    }
                }
                Err(e) => rec.fail("statistics", e),
            }
        }
        None => rec.fail("statistics", crate::subdesign::SubdesignError::NoSubdesigns),
    }
    StatsReport {
        wd_profile: wd,
        stats: stats_summary,
        bounds,
        checks: rec.checks,
        violations: rec.violations,
    }
}

/// Runs every stage on `d`. Failed checks and stage errors are collected in
/// the report rather than aborting.
pub fn run_pipeline(d: &Design, opts: PipelineOptions) -> Report {
    let mut rec = VerificationRecord::new();
    let params = d.params();
    for b0 in 0..d.b() {
        let meets = d.block_meet_profile(b0).expect("block id in range");
        rec.check(
            format!("meet counts of block {b0}"),
            meets.matches_closed_form(d.v(), d.k()),
        );
    }

    let subs = minimal_subdesigns(d);
    let subdesigns = SubdesignSummary {
        count: subs.len(),
        size: subs.first().map(|s| s.len()),
        vertex_sets: subs.iter().map(|s| s.vertices().to_vec()).collect(),
    };
    let wd = wd_profile_of(d, &subs).ok();
    let mut stats_summary = None;
    let mut bounds = None;
    if let Some(wd) = &wd {
        rec.merge(wd.verify(d, &subs));
        if let Ok((_, m)) = wd.require_wd() {
            let p = WdParams::new(d.v(), d.k(), wd.v_prime, m);
            if let Some((s, b)) = stats(d, &subs, wd, &p, opts.full, &mut rec) {
                stats_summary = Some(s);
                bounds = Some(b);
            }
        }
    }

    let wl = (d.v() + d.b() <= MAX_NODES).then(|| {
        let g = IncidenceGraph::new(d);
        let init = PairColoring::initial(&g, opts.initial);
        let c = wl2_refine(&g, Some(&init)).expect("size checked");
        if opts.initial == InitialColouring::Plain {
            rec.check_le("stable class count", c.num_classes, 9);
            rec.check_eq("vertex diagonal classes", c.vertex_diagonal_classes(), 1);
            rec.check_eq("block diagonal classes", c.block_diagonal_classes(), 1);
            match verify_lambda1_stable(d, &c) {
                Ok(r) => rec.merge(r),
                Err(e) => rec.fail("nine-class tables", e),
            }
        }
        WlSummary::new(&c, opts.initial)
    });

    let gip = classify_gip_case_with(d, &subs);
    if let GipCase::D { quotient } = &gip {
        rec.merge(quotient.verification.clone());
    }

    Report {
        params,
        subdesigns,
        wd_profile: wd,
        stats: stats_summary,
        bounds,
        wl,
        gip,
        checks: rec.checks,
        violations: rec.violations,
    }
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn to_text(r: &Report) -> String {
    let mut out = String::new();
    let p = &r.params;
    let _ = writeln!(
        out,
        "design     v={} b={} r={} k={} lambda={}",
        p.v, p.b, p.r, p.k, p.lambda
    );
    match r.subdesigns.size {
        Some(size) => {
            let _ = writeln!(
                out,
                "minimal    {} sub-designs on {} vertices",
                r.subdesigns.count, size
            );
        }
        None => {
            let _ = writeln!(out, "minimal    none");
        }
    }
    if let Some(wd) = &r.wd_profile {
        let show = |x: Option<usize>| x.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(
            out,
            "wd         n={} l={} m={} well-distributed={}",
            wd.n,
            show(wd.l),
            show(wd.m),
            wd.well_distributed
        );
    }
    if let Some(s) = &r.stats {
        let _ = writeln!(out, "meets      I_k={} I_1={} I_0={}", s.i_k, s.i_1, s.i_0);
        let _ = writeln!(
            out,
            "pairs      point={} block={} disjoint={}",
            s.means.point_pairs, s.means.block_pairs, s.means.disjoint_pairs
        );
    }
    if let Some(b) = &r.bounds {
        let _ = writeln!(
            out,
            "bounds     m={} <= {} regime={:?} n<b={:?}",
            b.m, b.m_basic_bound, b.v_regime, b.n_less_b
        );
        for pb in &b.pair_bounds {
            let max = pb.max_observed.map_or("-".into(), |x| x.to_string());
            let _ = writeln!(
                out,
                "           {:<4} max {:>6}  bound {}",
                pb.class, max, pb.bound
            );
        }
    }
    if let Some(w) = &r.wl {
        let _ = writeln!(
            out,
            "wl         {} classes after {} rounds, trace {:?}",
            w.num_classes, w.rounds, w.history
        );
    }
    let _ = writeln!(out, "gip        case ({})", r.gip.tag());
    let _ = writeln!(
        out,
        "checks     {} run, {} violated",
        r.checks,
        r.violations.len()
    );
    for v in &r.violations {
        let _ = writeln!(out, "  {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{example_15, fano};

    #[test]
    fn example15_report() {
        let r = run_pipeline(&example_15(), PipelineOptions::default());
        assert!(r.is_ok(), "{:?}", r.violations);
        assert_eq!(r.gip.tag(), 'd');
        assert_eq!(r.wl.as_ref().unwrap().num_classes, 9);
        let json = to_json(&r);
        assert!(json.contains("\"m\": 3"));
        assert_eq!(
            to_json(&run_pipeline(&example_15(), PipelineOptions::default())),
            json
        );
        assert!(to_text(&r).contains("case (d)"));
    }

    #[test]
    fn fano_report() {
        let r = run_pipeline(&fano(), PipelineOptions::default());
        assert!(r.is_ok());
        assert_eq!(r.gip, GipCase::A);
        assert!(r.stats.is_none());
    }
}
