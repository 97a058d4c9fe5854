//! Two-dimensional Weisfeiler-Leman refinement on design incidence graphs.
//!
//! Nodes `0..v` are the vertices of the design and `v..v+b` its blocks. A
//! colouring assigns a class id to every ordered node pair; one round
//! recolours `(x, y)` by its old colour together with the multiset of
//! `(c(x, z), c(z, y))` over all nodes `z`.

mod gip;
mod lambda1;
mod split;

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::design::Design;

pub use gip::{
    automorphism_transfer, classify_gip_case, classify_gip_case_with, find_automorphisms,
    quotient_design, GipCase, QuotientDesign,
};
pub use lambda1::{nine_class_colouring, verify_lambda1_stable, NineClass};
pub use split::{steiner3_split, SeedRule, SplitResult};

/// Largest `v + b` refined; the colour table is quadratic in it.
pub const MAX_NODES: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WlError {
    #[error("incidence graph has {nodes} nodes; refinement is capped at {MAX_NODES}")]
    TooLarge { nodes: usize },
    #[error("node {node} is outside 0..{nodes}")]
    NoSuchNode { node: usize, nodes: usize },
    #[error("class {class}: signature {signature} expected {expected}, found {actual}")]
    TableViolation {
        class: String,
        signature: String,
        expected: i64,
        actual: i64,
    },
    #[error("stable colouring splits the class {class} of the nine-class colouring")]
    FinerThanNineClass { class: String },
    #[error("the split procedure needs k = 3, got k = {k}")]
    NotSteinerTriple { k: usize },
    #[error("minimal sub-designs are not well-distributed")]
    NotWellDistributed,
    #[error("blocks are not recoverable from sub-designs when m = {m}")]
    SingleCover { m: usize },
    #[error("not a permutation of 0..{v}")]
    NotAPermutation { v: usize },
    #[error("permutation preserves {preserved} but not {broken}")]
    TransferMismatch {
        preserved: &'static str,
        broken: &'static str,
    },
    #[error("split stalled on {size} vertices that are not closed")]
    StallNotClosed { size: usize },
}

/// Bipartite vertex-block incidence graph.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    pub v: usize,
    pub b: usize,
    adjacency: Vec<bool>,
}

impl IncidenceGraph {
    pub fn new(d: &Design) -> Self {
        let (v, b) = (d.v(), d.b());
        let n = v + b;
        let mut adjacency = vec![false; n * n];
        for (id, block) in d.blocks().iter().enumerate() {
            for &x in block {
                adjacency[x * n + v + id] = true;
                adjacency[(v + id) * n + x] = true;
            }
        }
        let g = IncidenceGraph { v, b, adjacency };
        let r = d.r();
        for x in 0..n {
            let deg = (0..n).filter(|&y| g.adjacent(x, y)).count();
            assert_eq!(deg, if x < v { r } else { d.k() }, "degree of node {x}");
        }
        g
    }

    pub fn nodes(&self) -> usize {
        self.v + self.b
    }

    pub fn edges(&self) -> usize {
        self.adjacency.iter().filter(|&&a| a).count() / 2
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.adjacency[x * self.nodes() + y]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum InitialColouring {
    /// Diagonal, edge, non-edge.
    #[default]
    Plain,
    /// Vertex diagonal, block diagonal, vertex-to-block edge, block-to-vertex
    /// edge, non-edge.
    SideAware,
}

/// A colouring of ordered node pairs with contiguous class ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    pub nodes: usize,
    pub v: usize,
    colours: Vec<u32>,
    pub num_classes: usize,
    /// Rounds that split at least one class.
    pub rounds: usize,
    /// Class count before the first round and after each splitting round.
    pub history: Vec<usize>,
}

impl PairColoring {
    pub fn initial(g: &IncidenceGraph, kind: InitialColouring) -> Self {
        let n = g.nodes();
        let mut colours = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                colours[x * n + y] = match kind {
                    InitialColouring::Plain if x == y => 0,
                    InitialColouring::Plain if g.adjacent(x, y) => 1,
                    InitialColouring::Plain => 2,
                    InitialColouring::SideAware if x == y && x < g.v => 0,
                    InitialColouring::SideAware if x == y => 1,
                    InitialColouring::SideAware if g.adjacent(x, y) && x < g.v => 2,
                    InitialColouring::SideAware if g.adjacent(x, y) => 3,
                    InitialColouring::SideAware => 4,
                };
            }
        }
        Self::from_colours(n, g.v, colours)
    }

    /// Renumbers arbitrary colours to `0..` in order of first value.
    fn from_colours(nodes: usize, v: usize, colours: Vec<u32>) -> Self {
        let distinct: BTreeSet<u32> = colours.iter().copied().collect();
        let rank: HashMap<u32, u32> = distinct
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let colours: Vec<u32> = colours.into_iter().map(|c| rank[&c]).collect();
        PairColoring {
            nodes,
            v,
            colours,
            num_classes: distinct.len(),
            rounds: 0,
            history: vec![distinct.len()],
        }
    }

    pub fn colour(&self, x: usize, y: usize) -> u32 {
        self.colours[x * self.nodes + y]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    /// Class sizes, indexed by class id.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes];
        self.colours.iter().for_each(|&c| sizes[c as usize] += 1);
        sizes
    }

    /// Class sizes sorted, which is invariant under relabelling.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = self.class_sizes();
        h.sort_unstable();
        h
    }

    fn diagonal_classes(&self, nodes: std::ops::Range<usize>) -> usize {
        nodes
            .map(|x| self.colour(x, x))
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Distinct diagonal colours over vertex nodes.
    pub fn vertex_diagonal_classes(&self) -> usize {
        self.diagonal_classes(0..self.v)
    }

    /// Distinct diagonal colours over block nodes.
    pub fn block_diagonal_classes(&self) -> usize {
        self.diagonal_classes(self.v..self.nodes)
    }

    pub fn discrete_on_vertices(&self) -> bool {
        self.vertex_diagonal_classes() == self.v
    }

    /// One refinement round; returns the refined colouring with canonically
    /// numbered classes.
    fn round(&self) -> PairColoring {
        let n = self.nodes;
        let k = self.num_classes as u64;
        let rows: Vec<(Vec<Vec<u64>>, Vec<u32>)> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut local: HashMap<Vec<u64>, u32> = HashMap::new();
                let mut distinct = Vec::new();
                let mut ids = Vec::with_capacity(n);
                let mut scratch = vec![0u64; n];
                for y in 0..n {
                    for z in 0..n {
                        scratch[z] = self.colour(x, z) as u64 * k + self.colour(z, y) as u64;
                    }
                    scratch.sort_unstable();
                    let mut sig = vec![self.colour(x, y) as u64];
                    let mut i = 0;
                    while i < n {
                        let j = scratch[i..]
                            .iter()
                            .position(|&c| c != scratch[i])
                            .map_or(n, |p| i + p);
                        sig.push(scratch[i]);
                        sig.push((j - i) as u64);
                        i = j;
                    }
                    let id = *local.entry(sig).or_insert_with_key(|s| {
                        distinct.push(s.clone());
                        (distinct.len() - 1) as u32
                    });
                    ids.push(id);
                }
                (distinct, ids)
            })
            .collect();
        let global: BTreeSet<&Vec<u64>> = rows.iter().flat_map(|(d, _)| d.iter()).collect();
        let rank: HashMap<&Vec<u64>, u32> = global
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i as u32))
            .collect();
        let mut colours = Vec::with_capacity(n * n);
        for (distinct, ids) in &rows {
            let map: Vec<u32> = distinct.iter().map(|s| rank[s]).collect();
            colours.extend(ids.iter().map(|&i| map[i as usize]));
        }
        PairColoring {
            nodes: n,
            v: self.v,
            colours,
            num_classes: global.len(),
            rounds: self.rounds,
            history: self.history.clone(),
        }
    }
}

/// Refines to the stable colouring, starting from `init` or from the plain
/// three-class colouring.
pub fn wl2_refine(
    g: &IncidenceGraph,
    init: Option<&PairColoring>,
) -> Result<PairColoring, WlError> {
    if g.nodes() > MAX_NODES {
        return Err(WlError::TooLarge { nodes: g.nodes() });
    }
    let mut c = match init {
        Some(c) => {
            let mut c = c.clone();
            c.rounds = 0;
            c.history = vec![c.num_classes];
            c
        }
        None => PairColoring::initial(g, InitialColouring::Plain),
    };
    loop {
        let next = c.round();
        assert!(
            next.num_classes >= c.num_classes,
            "refinement merged classes"
        );
        if next.num_classes == c.num_classes {
            return Ok(next);
        }
        c = PairColoring {
            rounds: c.rounds + 1,
            history: {
                let mut h = c.history;
                h.push(next.num_classes);
                h
            },
            ..next
        };
    }
}

/// Gives `(x, x)` a fresh colour and refines again.
pub fn individualize(
    g: &IncidenceGraph,
    c: &PairColoring,
    x: usize,
) -> Result<PairColoring, WlError> {
    if x >= c.nodes {
        return Err(WlError::NoSuchNode {
            node: x,
            nodes: c.nodes,
        });
    }
    let mut colours = c.colours.clone();
    colours[x * c.nodes + x] = c.num_classes as u32;
    let seeded = PairColoring::from_colours(c.nodes, c.v, colours);
    wl2_refine(g, Some(&seeded))
}

/// Summary of a stable colouring for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WlSummary {
    pub initial: InitialColouring,
    pub num_classes: usize,
    pub rounds: usize,
    pub history: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub vertex_diagonal_classes: usize,
    pub block_diagonal_classes: usize,
}

impl WlSummary {
    pub fn new(c: &PairColoring, initial: InitialColouring) -> Self {
        WlSummary {
            initial,
            num_classes: c.num_classes,
            rounds: c.rounds,
            history: c.history.clone(),
            class_sizes: c.class_sizes(),
            vertex_diagonal_classes: c.vertex_diagonal_classes(),
            block_diagonal_classes: c.block_diagonal_classes(),
        }
    }
}
