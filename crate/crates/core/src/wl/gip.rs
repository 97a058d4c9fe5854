use std::collections::BTreeSet;

use serde::Serialize;

use super::{wl2_refine, IncidenceGraph, InitialColouring, PairColoring, WlError};
use crate::design::{BlockId, Design, Vertex};
use crate::subdesign::{minimal_subdesigns, wd_profile_of, SubDesign, WdProfile};
use crate::verify::VerificationRecord;

/// `(V, D)` with the minimal sub-designs as blocks: a `(v, v', m)`-BIBD.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientDesign {
    pub v: usize,
    pub block_size: usize,
    pub lambda: usize,
    pub blocks: Vec<Vec<Vertex>>,
    pub n: usize,
    pub b: usize,
    pub n_less_than_b: bool,
    pub verification: VerificationRecord,
}

pub fn quotient_design(
    d: &Design,
    subs: &[SubDesign],
    wd: &WdProfile,
) -> Result<QuotientDesign, WlError> {
    let (_, m) = wd.require_wd().map_err(|_| WlError::NotWellDistributed)?;
    let v = d.v();
    let mut rec = VerificationRecord::new();
    let mut cover = vec![0usize; v * v];
    for s in subs {
        for (i, &x) in s.vertices().iter().enumerate() {
            for &y in &s.vertices()[i + 1..] {
                cover[x * v + y] += 1;
            }
        }
    }
    let bad = (0..v)
        .flat_map(|x| (x + 1..v).map(move |y| (x, y)))
        .filter(|&(x, y)| cover[x * v + y] != m)
        .count();
    rec.check_eq(
        format!("vertex pairs not covered exactly {m} times"),
        bad,
        0,
    );
    Ok(QuotientDesign {
        v,
        block_size: wd.v_prime,
        lambda: m,
        blocks: subs.iter().map(|s| s.vertices().to_vec()).collect(),
        n: subs.len(),
        b: d.b(),
        n_less_than_b: subs.len() < d.b(),
        verification: rec,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum GipCase {
    /// No nontrivial proper sub-design.
    A,
    /// Minimal sub-designs exist but are not well-distributed; blocks are
    /// coloured by how many of them contain each block.
    B {
        block_colours: Vec<usize>,
        colour_count: usize,
    },
    /// Well-distributed with `m = 1`: the sub-designs partition the blocks.
    C { partition: Vec<Vec<BlockId>> },
    /// Well-distributed with `m > 1`.
    D { quotient: QuotientDesign },
}

impl GipCase {
    pub fn tag(&self) -> char {
        match self {
            GipCase::A => 'a',
            GipCase::B { .. } => 'b',
            GipCase::C { .. } => 'c',
            GipCase::D { .. } => 'd',
        }
    }
}

pub fn classify_gip_case(d: &Design) -> GipCase {
    classify_gip_case_with(d, &minimal_subdesigns(d))
}

pub fn classify_gip_case_with(d: &Design, subs: &[SubDesign]) -> GipCase {
    let Ok(wd) = wd_profile_of(d, subs) else {
        return GipCase::A;
    };
    match (wd.well_distributed, wd.m) {
        (true, Some(1)) => GipCase::C {
            partition: subs.iter().map(|s| s.block_ids().to_vec()).collect(),
        },
        (true, Some(_)) => GipCase::D {
            quotient: quotient_design(d, subs, &wd).expect("well-distributed"),
        },
        _ => GipCase::B {
            colour_count: wd.block_counts.iter().collect::<BTreeSet<_>>().len(),
            block_colours: wd.block_counts,
        },
    }
}

fn check_permutation(pi: &[Vertex], v: usize) -> Result<(), WlError> {
    let mut seen = vec![false; v];
    for &x in pi {
        if x >= v || std::mem::replace(&mut seen[x], true) {
            return Err(WlError::NotAPermutation { v });
        }
    }
    if pi.len() != v {
        return Err(WlError::NotAPermutation { v });
    }
    Ok(())
}

/// Whether `pi` is an automorphism of the design and whether it maps the
/// sub-design family onto itself. For `m > 1` the two must agree.
pub fn automorphism_transfer(
    pi: &[Vertex],
    d: &Design,
    subs: &[SubDesign],
) -> Result<(bool, bool), WlError> {
    check_permutation(pi, d.v())?;
    let wd = wd_profile_of(d, subs).map_err(|_| WlError::NotWellDistributed)?;
    let (_, m) = wd.require_wd().map_err(|_| WlError::NotWellDistributed)?;
    if m < 2 {
        return Err(WlError::SingleCover { m });
    }
    let on_design = d.is_automorphism(pi);
    let family: BTreeSet<Vec<Vertex>> = subs.iter().map(|s| s.vertices().to_vec()).collect();
    let on_quotient = subs.iter().all(|s| {
        let mut image: Vec<Vertex> = s.vertices().iter().map(|&x| pi[x]).collect();
        image.sort_unstable();
        family.contains(&image)
    });
    match (on_design, on_quotient) {
        (true, false) => Err(WlError::TransferMismatch {
            preserved: "blocks",
            broken: "sub-designs",
        }),
        (false, true) => Err(WlError::TransferMismatch {
            preserved: "sub-designs",
            broken: "blocks",
        }),
        _ => Ok((on_design, on_quotient)),
    }
}

/// Node expansions allowed per call.
const SEARCH_BUDGET: usize = 1 << 20;

struct Search<'a> {
    d: &'a Design,
    colour: Vec<u32>,
    limit: usize,
    nodes: usize,
    image: Vec<Option<Vertex>>,
    used: Vec<bool>,
    found: Vec<Vec<Vertex>>,
}

impl Search<'_> {
    /// Collinearity with every pair of earlier vertices is preserved.
    fn consistent(&self, x: Vertex, y: Vertex) -> bool {
        for a in 0..x {
            let ia = self.image[a].unwrap();
            let block = self.d.block(self.d.pair_index().get(a, x));
            let image_block = self.d.block(self.d.pair_index().get(ia, y));
            for c in 0..x {
                if c == a {
                    continue;
                }
                let ic = self.image[c].unwrap();
                if block.binary_search(&c).is_ok() != image_block.binary_search(&ic).is_ok() {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, x: Vertex) {
        if self.found.len() >= self.limit || self.nodes >= SEARCH_BUDGET {
            return;
        }
        self.nodes += 1;
        let v = self.d.v();
        if x == v {
            let pi: Vec<Vertex> = self.image.iter().map(|i| i.unwrap()).collect();
            if self.d.is_automorphism(&pi) {
                self.found.push(pi);
            }
            return;
        }
        for y in 0..v {
            if self.used[y] || self.colour[y] != self.colour[x] || !self.consistent(x, y) {
                continue;
            }
            self.image[x] = Some(y);
            self.used[y] = true;
            self.run(x + 1);
            self.used[y] = false;
            self.image[x] = None;
        }
    }
}

/// Up to `limit` automorphisms by backtracking over vertex images that
/// share a stable 2-WL diagonal colour and preserve collinearity. The
/// identity comes first.
pub fn find_automorphisms(d: &Design, limit: usize) -> Vec<Vec<Vertex>> {
    let g = IncidenceGraph::new(d);
    let colour = match wl2_refine(
        &g,
        Some(&PairColoring::initial(&g, InitialColouring::SideAware)),
    ) {
        Ok(c) => (0..d.v()).map(|x| c.colour(x, x)).collect(),
        Err(_) => vec![0; d.v()],
    };
    let mut s = Search {
        d,
        colour,
        limit,
        nodes: 0,
        image: vec![None; d.v()],
        used: vec![false; d.v()],
        found: Vec::new(),
    };
    s.run(0);
    s.found
}
