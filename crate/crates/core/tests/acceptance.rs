//! Acceptance criteria 1-10, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bibd_core::analytics::{
    all_triple_profiles, bounds_report, pair_stats, solve_dependent_counts, verify_connor_sums,
    MeanProfile, NLessB, TripleCase, WdParams,
};
use bibd_core::constructions::{
    affine_plane, example_15, example_40, fano, paste, transfer_check, BijectionRule, PasteRecipe,
};
use bibd_core::io::{parse_design, serialize_design};
use bibd_core::subdesign::{closure, is_closed, minimal_subdesigns, size_bound_holds, wd_profile};
use bibd_core::wl::{
    automorphism_transfer, classify_gip_case, find_automorphisms, nine_class_colouring,
    steiner3_split, verify_lambda1_stable, wl2_refine, GipCase, IncidenceGraph, NineClass,
    SeedRule,
};
use bibd_core::{Design, Rational};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: usize) -> Rational {
    Rational::from(n)
}

fn golden() -> [(&'static str, Design); 2] {
    [("example_15", example_15()), ("example_40", example_40())]
}

fn criterion_1() -> Outcome {
    for (name, d, want) in [
        ("example_15", example_15(), (15, 3, 35, 7)),
        ("example_40", example_40(), (40, 4, 130, 13)),
    ] {
        let p = d.params();
        ensure!(
            (p.v, p.k, p.b, p.r, p.lambda) == (want.0, want.1, want.2, want.3, 1),
            "{name}: got {p:?}"
        );
    }
    Ok("(15,3,1) b=35 r=7; (40,4,1) b=130 r=13".into())
}

fn criterion_2() -> Outcome {
    for (name, d, want) in [
        ("example_15", example_15(), (7, 15, 7, 3)),
        ("example_40", example_40(), (13, 40, 13, 4)),
    ] {
        let (wd, subs) = wd_profile(&d).map_err(|e| format!("{name}: {e}"))?;
        ensure!(wd.well_distributed, "{name}: not well-distributed");
        let got = (wd.v_prime, wd.n, wd.l.unwrap(), wd.m.unwrap());
        ensure!(
            got == want,
            "{name}: (v', n, l, m) = {got:?}, want {want:?}"
        );
        let p = WdParams::new(d.v(), d.k(), wd.v_prime, got.3);
        ensure!(p.n() == q(wd.n), "{name}: n formula gives {}", p.n());
        ensure!(p.l() == q(got.2), "{name}: l formula gives {}", p.l());
        let rec = wd.verify(&d, &subs);
        ensure!(rec.is_ok(), "{name}: {:?}", rec.violations);
    }
    Ok("(7,15,7,3) and (13,40,13,4), n and l identities exact".into())
}

fn criterion_3() -> Outcome {
    let mut checks = 0;
    for (name, d) in golden() {
        let (wd, subs) = wd_profile(&d).unwrap();
        let p = WdParams::new(d.v(), d.k(), wd.v_prime, wd.m.unwrap());
        for d1 in 0..subs.len() {
            let st = pair_stats(&d, &subs, &wd, d1).map_err(|e| e.to_string())?;
            let rec = st.verify(&p);
            ensure!(rec.is_ok(), "{name}, D{d1}: {:?}", rec.violations);
            checks += rec.checks;
            ensure!(
                st.i_1 == 0 && st.i_0 == 0,
                "{name}: I_1 = {}, I_0 = {}",
                st.i_1,
                st.i_0
            );
            ensure!(st.i_k == subs.len() - 1, "{name}: I_k = {}", st.i_k);
        }
    }
    Ok(format!(
        "{checks} closed-form comparisons; I_k = 14 and 39, I_1 = I_0 = 0"
    ))
}

fn criterion_4() -> Outcome {
    let mut pairs = 0;
    for (name, d) in golden() {
        let (wd, subs) = wd_profile(&d).unwrap();
        let m = wd.m.unwrap();
        let p = WdParams::new(d.v(), d.k(), wd.v_prime, m);
        let profiles = all_triple_profiles(&d, &subs).map_err(|e| e.to_string())?;
        ensure!(
            profiles.len() == subs.len() * (subs.len() - 1),
            "{name}: {} profiles",
            profiles.len()
        );
        for pr in &profiles {
            ensure!(
                pr.case == TripleCase::Block,
                "{name}: ({}, {}) meet as {:?}",
                pr.d1,
                pr.d2,
                pr.case
            );
            let rec = verify_connor_sums(pr, &p).map_err(|e| format!("{name}: {e}"))?;
            ensure!(rec.is_ok(), "{name}: {:?}", rec.violations);
            let solved =
                solve_dependent_counts(pr.free(), &p, pr.case).map_err(|e| e.to_string())?;
            let observed: Vec<i128> = pr.counts.iter().map(|&c| c as i128).collect();
            ensure!(
                solved == observed,
                "{name} ({}, {}): solved {solved:?}, observed {observed:?}",
                pr.d1,
                pr.d2
            );
            ensure!(
                pr.exact_block == m - 2,
                "{name}: exact-block class {}",
                pr.exact_block
            );
            if name == "example_15" {
                let mut want = vec![0; 13];
                want[1] = 12;
                ensure!(
                    pr.counts == want,
                    "example_15 ({}, {}): {:?}",
                    pr.d1,
                    pr.d2,
                    pr.counts
                );
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} ordered pairs; c2 = 12, exact-block = 1 on example_15"
    ))
}

fn criterion_5() -> Outcome {
    for (name, d, basic) in [
        ("example_15", example_15(), Rational::new(12, 4)),
        ("example_40", example_40(), Rational::new(36, 9)),
    ] {
        let (wd, subs) = wd_profile(&d).unwrap();
        let m = wd.m.unwrap();
        let p = WdParams::new(d.v(), d.k(), wd.v_prime, m);
        let profiles = all_triple_profiles(&d, &subs).unwrap();
        let mp = MeanProfile::from_profiles(&profiles);
        let r = bounds_report(&p, subs.len(), d.b(), &mp, &profiles);
        ensure!(
            r.m_basic_bound == basic && q(m) == basic,
            "{name}: m = {m}, bound {}",
            r.m_basic_bound
        );
        ensure!(r.m_basic_tight, "{name}: bound not tight");
        if name == "example_15" {
            ensure!(
                r.m_small_v_bound == Some(Rational::int(3)),
                "small-v bound {:?}",
                r.m_small_v_bound
            );
        }
        ensure!(
            r.pair_bounds.iter().all(|b| b.holds),
            "{name}: {:?}",
            r.pair_bounds
        );
        ensure!(
            r.n_less_b == NLessB::ProvedCase1,
            "{name}: {:?}",
            r.n_less_b
        );
        ensure!(r.n < r.b, "{name}: n = {} b = {}", r.n, r.b);
        ensure!(
            r.verification.is_ok(),
            "{name}: {:?}",
            r.verification.violations
        );
    }
    Ok("m = 12/4 and 36/9, small-v bound 3, pair bounds hold, 15<35 and 40<130".into())
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (name, d) in golden() {
        let g = IncidenceGraph::new(&d);
        let c = wl2_refine(&g, None).map_err(|e| e.to_string())?;
        ensure!(c.num_classes == 9, "{name}: {} classes", c.num_classes);
        ensure!(
            c.vertex_diagonal_classes() == 1,
            "{name}: vertex diagonal split"
        );
        ensure!(
            c.block_diagonal_classes() == 1,
            "{name}: block diagonal split"
        );
        let rec = verify_lambda1_stable(&d, &c).map_err(|e| format!("{name}: {e}"))?;
        ensure!(rec.is_ok(), "{name}: {:?}", rec.violations);
        notes.push(format!("{name} 9"));
    }
    let d = fano();
    let g = IncidenceGraph::new(&d);
    let c = wl2_refine(&g, None).map_err(|e| e.to_string())?;
    let zero_empty = !nine_class_colouring(&d).contains(&NineClass::Zero);
    let tables = verify_lambda1_stable(&d, &c).map(|r| r.is_ok());
    if c.num_classes != 8 {
        failures.push(format!(
            "fano: {} classes from the 3-class start, want 8",
            c.num_classes
        ));
    }
    if !zero_empty {
        failures.push("fano: class 0 not empty".into());
    }
    if tables != Ok(true) {
        failures.push(format!("fano: tables {tables:?}"));
    }
    notes.push(format!("fano {}", c.num_classes));
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(format!("{} ({})", failures.join("; "), notes.join(", ")))
    }
}

fn split_ok(name: &str, d: &Design, rule: SeedRule, max: usize) -> Result<usize, String> {
    let s = steiner3_split(d, rule).map_err(|e| format!("{name} {rule:?}: {e}"))?;
    ensure!(
        s.individualized.len() <= max,
        "{name} {rule:?}: {} individualized",
        s.individualized.len()
    );
    ensure!(
        s.individualized.len() <= s.budget,
        "{name} {rule:?}: over budget {}",
        s.budget
    );
    ensure!(
        s.chain.last() == Some(&d.v()),
        "{name} {rule:?}: chain {:?}",
        s.chain
    );
    ensure!(s.discrete_on_v, "{name} {rule:?}: 2-WL not discrete on V");
    for &size in &s.chain[..s.chain.len() - 1] {
        ensure!(
            is_closed(d, &s.order[..size]),
            "{name} {rule:?}: stall of size {size} not closed"
        );
    }
    Ok(s.individualized.len())
}

fn criterion_7() -> Outcome {
    let (f, e) = (fano(), example_15());
    let fano_count = split_ok("fano", &f, SeedRule::Lexicographic, 3)?;
    ensure!(fano_count == 3, "fano: {fano_count} individualized");
    let s = steiner3_split(&e, SeedRule::Lexicographic).unwrap();
    ensure!(s.budget == 5, "budget {}", s.budget);
    split_ok("example_15", &e, SeedRule::Lexicographic, 5)?;
    let mut counts = vec![s.individualized.len()];
    for seed in 0..10 {
        ensure!(
            split_ok("fano", &f, SeedRule::Seeded(seed), 3)? == 3,
            "fano seed {seed}"
        );
        counts.push(split_ok("example_15", &e, SeedRule::Seeded(seed), 5)?);
    }
    Ok(format!(
        "fano 3; example_15 chain {:?}, counts {counts:?}",
        s.chain
    ))
}

fn random_non_automorphisms(d: &Design, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    while out.len() < count {
        let mut pi: Vec<usize> = (0..d.v()).collect();
        pi.shuffle(rng);
        if !d.is_automorphism(&pi) {
            out.push(pi);
        }
    }
    out
}

fn criterion_8() -> Outcome {
    ensure!(
        classify_gip_case(&fano()) == GipCase::A,
        "fano not case (a)"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut found_total = 0;
    for (name, d, want) in [
        ("example_15", example_15(), (15, 7, 3)),
        ("example_40", example_40(), (40, 13, 4)),
    ] {
        let GipCase::D { quotient } = classify_gip_case(&d) else {
            return Err(format!("{name}: not case (d)"));
        };
        ensure!(
            (quotient.v, quotient.block_size, quotient.lambda) == want,
            "{name}: quotient {:?}",
            quotient
        );
        ensure!(
            quotient.verification.is_ok(),
            "{name}: {:?}",
            quotient.verification.violations
        );
        ensure!(quotient.n_less_than_b, "{name}: n >= b");
        let subs = minimal_subdesigns(&d);
        let id: Vec<usize> = (0..d.v()).collect();
        ensure!(
            automorphism_transfer(&id, &d, &subs) == Ok((true, true)),
            "{name}: identity"
        );
        for pi in random_non_automorphisms(&d, 100, &mut rng) {
            let r = automorphism_transfer(&pi, &d, &subs);
            ensure!(r == Ok((false, false)), "{name}: {pi:?} gave {r:?}");
        }
        let auts = find_automorphisms(&d, 20);
        ensure!(auts.first() == Some(&id), "{name}: identity not first");
        for pi in &auts {
            let r = automorphism_transfer(pi, &d, &subs);
            ensure!(
                r == Ok((true, true)),
                "{name}: automorphism {pi:?} gave {r:?}"
            );
        }
        found_total += auts.len();
    }
    Ok(format!(
        "a/d/d, quotients (15,7,3) (40,13,4), 200 non-automorphisms, {found_total} automorphisms"
    ))
}

fn criterion_9() -> Outcome {
    let recipe =
        PasteRecipe::new(affine_plane(7).unwrap(), fano(), BijectionRule::SortedOrder).unwrap();
    let d = paste(&recipe).map_err(|e| e.to_string())?;
    let p = d.params();
    ensure!((p.v, p.k, p.lambda, p.b) == (49, 3, 1, 392), "params {p:?}");
    let t = transfer_check(&d, &recipe);
    ensure!(t.copies == 56 && t.copies_closed == 56, "{t:?}");
    ensure!(t.copies_per_vertex == Some(8), "{t:?}");
    ensure!(t.one_copy_per_block, "{t:?}");
    Ok(format!(
        "(49,3,1) b=392, 56 closed copies, 8 per vertex, 1 per block; minimal size {:?}",
        t.minimal_size
    ))
}

fn random_relabel(d: &Design, rng: &mut ChaCha8Rng) -> Design {
    let mut pi: Vec<usize> = (0..d.v()).collect();
    pi.shuffle(rng);
    d.relabel(&pi).unwrap()
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let bases = [example_15(), example_40()];
    let base_wl: Vec<_> = bases
        .iter()
        .map(|d| wl2_refine(&IncidenceGraph::new(d), None).unwrap())
        .collect();
    let trials = 50;
    for t in 0..trials {
        let which = t % 2;
        let d = random_relabel(&bases[which], &mut rng);

        let a = rng.gen_range(0..d.v());
        let b = (a + rng.gen_range(1..d.v())) % d.v();
        let s = closure(&d, &[a, b]).unwrap();
        let again = closure(&d, s.vertices()).unwrap();
        ensure!(
            again.vertices() == s.vertices(),
            "trial {t}: closure not idempotent"
        );
        let c = rng.gen_range(0..d.v());
        let bigger = closure(&d, &[a, b, c]).unwrap();
        ensure!(
            s.vertices().iter().all(|&x| bigger.contains(x)),
            "trial {t}: closure not monotone"
        );

        let wl = wl2_refine(&IncidenceGraph::new(&d), None).unwrap();
        ensure!(
            wl.history.windows(2).all(|w| w[0] <= w[1]),
            "trial {t}: history {:?}",
            wl.history
        );
        ensure!(
            wl.histogram() == base_wl[which].histogram(),
            "trial {t}: histogram changed"
        );
        ensure!(
            wl.rounds == base_wl[which].rounds,
            "trial {t}: rounds changed"
        );

        let back = parse_design(&serialize_design(&d)).unwrap();
        ensure!(back == d, "trial {t}: round trip changed the design");

        for sub in minimal_subdesigns(&d) {
            ensure!(
                size_bound_holds(d.v(), d.k(), sub.len()),
                "trial {t}: size bound on {sub:?}"
            );
        }
    }
    Ok(format!("{trials} relabelled trials"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden validation", criterion_1),
        ("well-distribution certificates", criterion_2),
        ("fine-count formulas", criterion_3),
        ("sum identities and inversion", criterion_4),
        ("bounds", criterion_5),
        ("stable 2-WL partition", criterion_6),
        ("triple-system split", criterion_7),
        ("sub-design case classification", criterion_8),
        ("pasting", criterion_9),
        ("property suite", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{:.1?}]",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}: {why} [{:.1?}]",
                    i + 1,
                    start.elapsed()
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
