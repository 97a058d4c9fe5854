use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use bibd_core::constructions::{
    affine_plane, example_15, example_40, fano, pasch_trade, paste, projective_plane,
    BijectionRule, PasteRecipe,
};
use bibd_core::io::{read_design, serialize_design};
use bibd_core::report::{run_pipeline, stats_report, to_json, to_text, PipelineOptions};
use bibd_core::subdesign::{minimal_subdesigns, wd_profile};
use bibd_core::verify::Violation;
use bibd_core::wl::{
    individualize, quotient_design, steiner3_split, verify_lambda1_stable, wl2_refine,
    IncidenceGraph, InitialColouring, PairColoring, SeedRule, WlSummary,
};
use bibd_core::Design;

const EXIT_VALIDATION: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bibd",
    version,
    about = "Steiner system analysis: sub-designs, intersection counts, 2-WL"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a design file.
    Validate { file: PathBuf },
    /// Design parameters and block meet counts.
    Params { file: PathBuf },
    /// Minimal sub-designs.
    Subdesigns { file: PathBuf },
    /// Coverage of vertices and blocks by minimal sub-designs.
    WdProfile { file: PathBuf },
    /// Pair and triple intersection statistics with bounds.
    Stats {
        file: PathBuf,
        /// Keep every triple profile.
        #[arg(long)]
        full: bool,
    },
    /// Stable 2-WL colouring of the incidence graph.
    Wl {
        file: PathBuf,
        /// Vertices to individualize, comma separated.
        #[arg(long, value_delimiter = ',')]
        individualize: Vec<usize>,
        /// Start from the five-class colouring that separates the two sides.
        #[arg(long)]
        side_aware: bool,
    },
    /// Individualize-and-close split of a triple system.
    Split { file: PathBuf },
    /// The design whose blocks are the minimal sub-designs.
    Quotient { file: PathBuf },
    /// Write a generated design.
    Gen {
        #[command(subcommand)]
        which: Gen,
    },
    /// Run every stage.
    Report {
        file: PathBuf,
        #[arg(long)]
        full: bool,
        #[arg(long)]
        side_aware: bool,
    },
}

#[derive(Subcommand)]
enum Gen {
    Fano,
    /// Projective plane of prime order.
    Pp {
        q: usize,
    },
    /// Affine plane of prime order.
    Ap {
        q: usize,
    },
    Example15,
    Example40,
    /// Trade the first Pasch configuration of a triple system.
    Pasch {
        file: PathBuf,
    },
    /// Replace each block of the outer design by a copy of the inner one.
    Paste {
        outer: PathBuf,
        inner: PathBuf,
    },
}

enum Failure {
    Validation(String),
    Violation(String),
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<Design, Failure> {
    read_design(path).map_err(|e| Failure::Validation(e.to_string()))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable output")
        );
    } else {
        print!("{}", text());
    }
}

fn verdict(violations: &[Violation]) -> Outcome {
    match violations.len() {
        0 => Ok(()),
        n => Err(Failure::Violation(format!("{n} check(s) failed"))),
    }
}

fn initial(side_aware: bool) -> InitialColouring {
    if side_aware {
        InitialColouring::SideAware
    } else {
        InitialColouring::Plain
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Validate { file } => {
            let d = load(&file)?;
            emit(json, &d.params(), || {
                let p = d.params();
                format!("valid ({}, {}, 1) design: b={} r={}\n", p.v, p.k, p.b, p.r)
            });
        }
        Command::Params { file } => {
            let d = load(&file)?;
            #[derive(Serialize)]
            struct Params {
                #[serde(flatten)]
                params: bibd_core::DesignParams,
                meet1: usize,
                meet0: usize,
                symmetric: bool,
            }
            let meets = d.block_meet_profile(0).expect("a design has a block");
            let out = Params {
                params: d.params(),
                meet1: meets.meet1,
                meet0: meets.meet0,
                symmetric: d.is_symmetric(),
            };
            emit(json, &out, || {
                format!(
                    "v={} b={} r={} k={} lambda={}\nblocks meeting a block: {} in one vertex, {} disjoint\nsymmetric: {}\n",
                    out.params.v, out.params.b, out.params.r, out.params.k, out.params.lambda, out.meet1, out.meet0, out.symmetric
                )
            });
        }
        Command::Subdesigns { file } => {
            let d = load(&file)?;
            let subs = minimal_subdesigns(&d);
            emit(json, &subs, || {
                let mut s = format!("{} minimal sub-designs\n", subs.len());
                for sub in &subs {
                    s += &format!("{:?}\n", sub.vertices());
                }
                s
            });
        }
        Command::WdProfile { file } => {
            let d = load(&file)?;
            let (wd, subs) = wd_profile(&d).map_err(|e| Failure::Violation(e.to_string()))?;
            let rec = wd.verify(&d, &subs);
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                wd: &'a bibd_core::subdesign::WdProfile,
                checks: usize,
                violations: &'a [Violation],
            }
            emit(
                json,
                &Out {
                    wd: &wd,
                    checks: rec.checks,
                    violations: &rec.violations,
                },
                || {
                    let show = |x: Option<usize>| x.map_or("-".to_string(), |x| x.to_string());
                    format!(
                        "v'={} n={} l={} m={} well-distributed={}\n{} checks, {} violated\n",
                        wd.v_prime,
                        wd.n,
                        show(wd.l),
                        show(wd.m),
                        wd.well_distributed,
                        rec.checks,
                        rec.violations.len()
                    )
                },
            );
            verdict(&rec.violations)?;
        }
        Command::Stats { file, full } => {
            let d = load(&file)?;
            let r = stats_report(&d, full);
            emit(json, &r, || {
                let mut s = String::new();
                if let Some(st) = &r.stats {
                    s += &format!("I_k={} I_1={} I_0={}\n", st.i_k, st.i_1, st.i_0);
                    s += &format!(
                        "{} ordered pairs, {} profiles shown\n",
                        st.ordered_pairs,
                        st.profiles.len()
                    );
                    for (name, means) in [
                        ('a', &st.means.a_means),
                        ('c', &st.means.c_means),
                        ('e', &st.means.e_means),
                    ] {
                        if let Some(ms) = means {
                            let row: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                            s += &format!("{name} means: {}\n", row.join(" "));
                        }
                    }
                }
                if let Some(b) = &r.bounds {
                    for pb in &b.pair_bounds {
                        let max = pb.max_observed.map_or("-".into(), |x| x.to_string());
                        s += &format!("{:<4} max {:>6}  bound {}\n", pb.class, max, pb.bound);
                    }
                }
                s += &format!("{} checks, {} violated\n", r.checks, r.violations.len());
                for v in &r.violations {
                    s += &format!("  {v}\n");
                }
                s
            });
            verdict(&r.violations)?;
        }
        Command::Wl {
            file,
            individualize: ids,
            side_aware,
        } => {
            let d = load(&file)?;
            let g = IncidenceGraph::new(&d);
            let start = PairColoring::initial(&g, initial(side_aware));
            let mut c =
                wl2_refine(&g, Some(&start)).map_err(|e| Failure::Violation(e.to_string()))?;
            let mut traces = vec![c.history.clone()];
            for &x in &ids {
                if x >= d.v() {
                    return Err(Failure::Validation(format!(
                        "vertex {x} is outside 0..{}",
                        d.v()
                    )));
                }
                c = individualize(&g, &c, x).map_err(|e| Failure::Violation(e.to_string()))?;
                traces.push(c.history.clone());
            }
            let mut violations = Vec::new();
            if ids.is_empty() && !side_aware {
                match verify_lambda1_stable(&d, &c) {
                    Ok(rec) => violations = rec.violations,
                    Err(e) => return Err(Failure::Violation(e.to_string())),
                }
            }
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                summary: WlSummary,
                histogram: Vec<usize>,
                individualized: Vec<usize>,
                traces: Vec<Vec<usize>>,
                discrete_on_vertices: bool,
            }
            let out = Out {
                summary: WlSummary::new(&c, initial(side_aware)),
                histogram: c.histogram(),
                individualized: ids,
                discrete_on_vertices: c.discrete_on_vertices(),
                traces,
            };
            emit(json, &out, || {
                format!(
                    "classes {} after {} rounds\ntrace {:?}\nhistogram {:?}\nvertex diagonal classes {}, block diagonal classes {}\n",
                    out.summary.num_classes,
                    out.summary.rounds,
                    out.traces,
                    out.histogram,
                    out.summary.vertex_diagonal_classes,
                    out.summary.block_diagonal_classes
                )
            });
            verdict(&violations)?;
        }
        Command::Split { file } => {
            let d = load(&file)?;
            let rule = cli.seed.map_or(SeedRule::Lexicographic, SeedRule::Seeded);
            let s = steiner3_split(&d, rule).map_err(|e| Failure::Violation(e.to_string()))?;
            emit(json, &s, || {
                format!(
                    "individualized {:?} ({} of budget {})\nchain {:?}\n2-WL discrete on vertices: {}\n",
                    s.individualized,
                    s.individualized.len(),
                    s.budget,
                    s.chain,
                    s.discrete_on_v
                )
            });
            if !s.discrete_on_v {
                return Err(Failure::Violation(
                    "2-WL is not discrete on vertices".into(),
                ));
            }
        }
        Command::Quotient { file } => {
            let d = load(&file)?;
            let (wd, subs) = wd_profile(&d).map_err(|e| Failure::Violation(e.to_string()))?;
            let q =
                quotient_design(&d, &subs, &wd).map_err(|e| Failure::Violation(e.to_string()))?;
            emit(json, &q, || {
                format!(
                    "({}, {}, {}) design with {} blocks; n={} b={} n<b={}\n",
                    q.v, q.block_size, q.lambda, q.n, q.n, q.b, q.n_less_than_b
                )
            });
            verdict(&q.verification.violations)?;
        }
        Command::Gen { which } => {
            let d = match which {
                Gen::Fano => fano(),
                Gen::Pp { q } => {
                    projective_plane(q).map_err(|e| Failure::Validation(e.to_string()))?
                }
                Gen::Ap { q } => affine_plane(q).map_err(|e| Failure::Validation(e.to_string()))?,
                Gen::Example15 => example_15(),
                Gen::Example40 => example_40(),
                Gen::Pasch { file } => pasch_trade(&load(&file)?).ok_or_else(|| {
                    Failure::Validation("no Pasch configuration in a triple system".into())
                })?,
                Gen::Paste { outer, inner } => {
                    let rule = cli
                        .seed
                        .map_or(BijectionRule::SortedOrder, BijectionRule::SeededShuffle);
                    let recipe = PasteRecipe::new(load(&outer)?, load(&inner)?, rule)
                        .map_err(|e| Failure::Validation(e.to_string()))?;
                    paste(&recipe).map_err(|e| Failure::Validation(e.to_string()))?
                }
            };
            print!("{}", serialize_design(&d));
        }
        Command::Report {
            file,
            full,
            side_aware,
        } => {
            let d = load(&file)?;
            let r = run_pipeline(
                &d,
                PipelineOptions {
                    full,
                    initial: initial(side_aware),
                },
            );
            if json {
                println!("{}", to_json(&r));
            } else {
                print!("{}", to_text(&r));
            }
            verdict(&r.violations)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}
