//! Sub-designs: closure of vertex sets, enumeration of minimal sub-designs,
//! and the well-distribution certificate.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::design::{BlockId, Design, DesignError, Vertex};
use crate::verify::VerificationRecord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdesignError {
    #[error("the design has no proper nontrivial sub-designs")]
    NoSubdesigns,
    #[error("sub-designs come from different parent designs")]
    DifferentParent,
    #[error("sub-design of size {size} is not proper and nontrivial (k = {k}, v = {v})")]
    NotProper { size: usize, k: usize, v: usize },
    #[error("minimal sub-designs are not well-distributed")]
    NotWellDistributed,
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// A closed vertex set together with the parent blocks inside it.
#[derive(Clone)]
pub struct SubDesign {
    vertices: Vec<Vertex>,
    block_ids: Vec<BlockId>,
    mask: FixedBitSet,
    parent: u64,
}

impl std::fmt::Debug for SubDesign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubDesign{:?}", self.vertices)
    }
}

impl PartialEq for SubDesign {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.vertices == other.vertices
    }
}

impl Eq for SubDesign {}

impl Serialize for SubDesign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl SubDesign {
    fn from_mask(d: &Design, mask: FixedBitSet) -> Self {
        let vertices: Vec<Vertex> = mask.ones().collect();
        let mut block_ids: Vec<BlockId> = Vec::new();
        let pi = d.pair_index();
        for (i, &x) in vertices.iter().enumerate() {
            for &y in &vertices[i + 1..] {
                block_ids.push(pi.get(x, y));
            }
        }
        block_ids.sort_unstable();
        block_ids.dedup();
        SubDesign {
            vertices,
            block_ids,
            mask,
            parent: d.fingerprint(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn block_ids(&self) -> &[BlockId] {
        &self.block_ids
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.mask.contains(x)
    }

    pub fn contains_block(&self, b: BlockId) -> bool {
        self.block_ids.binary_search(&b).is_ok()
    }

    pub fn parent_fingerprint(&self) -> u64 {
        self.parent
    }

    /// Sizes 0, 1 and k are the trivial sub-designs.
    pub fn is_trivial(&self, k: usize) -> bool {
        matches!(self.len(), 0 | 1) || self.len() == k
    }

    /// The sub-design relabelled onto `0..v'` and validated as a design on its own.
    pub fn as_design(&self, d: &Design) -> Result<Design, DesignError> {
        let blocks = self
            .block_ids
            .iter()
            .map(|&b| {
                d.block(b)
                    .iter()
                    .map(|x| {
                        self.vertices
                            .binary_search(x)
                            .expect("block inside sub-design")
                    })
                    .collect()
            })
            .collect();
        Design::with_block_size(self.len(), d.k(), blocks)
    }

    pub fn intersection_size(&self, other: &SubDesign) -> usize {
        self.mask.intersection_count(&other.mask)
    }
}

/// Grows `mask` to the smallest closed set containing it. Returns `false`
/// without finishing if the set would exceed `cap` vertices.
fn close_mask(d: &Design, mask: &mut FixedBitSet, cap: usize) -> bool {
    let pi = d.pair_index();
    let mut members: Vec<Vertex> = mask.ones().collect();
    let mut done = 0;
    // Every member is paired with every earlier member exactly once; vertices
    // pulled in by those blocks are appended and processed in turn.
    while done < members.len() {
        let x = members[done];
        for j in 0..done {
            for &z in d.block(pi.get(x, members[j])) {
                if !mask.put(z) {
                    members.push(z);
                    if members.len() > cap {
                        return false;
                    }
                }
            }
        }
        done += 1;
    }
    true
}

/// The sub-design generated by `seeds`.
pub fn closure(d: &Design, seeds: &[Vertex]) -> Result<SubDesign, SubdesignError> {
    let mut mask = FixedBitSet::with_capacity(d.v());
    for &x in seeds {
        if x >= d.v() {
            return Err(DesignError::NoSuchVertex {
                vertex: x,
                v: d.v(),
            }
            .into());
        }
        mask.insert(x);
    }
    close_mask(d, &mut mask, usize::MAX);
    Ok(SubDesign::from_mask(d, mask))
}

/// Whether `vertices` is closed under the pair-to-block map.
pub fn is_closed(d: &Design, vertices: &[Vertex]) -> bool {
    let mut mask = FixedBitSet::with_capacity(d.v());
    mask.extend(vertices.iter().copied());
    vertices.iter().enumerate().all(|(i, &x)| {
        vertices[i + 1..].iter().all(|&y| {
            d.block(d.pair_index().get(x, y))
                .iter()
                .all(|&z| mask.contains(z))
        })
    })
}

/// All minimal proper sub-designs, sorted by vertex set. Empty when every
/// non-collinear triple generates the whole design.
pub fn minimal_subdesigns(d: &Design) -> Vec<SubDesign> {
    let v = d.v();
    let best = AtomicUsize::new(v);
    let triples: Vec<(Vertex, Vertex)> = (0..v)
        .flat_map(|x| (x + 1..v).map(move |y| (x, y)))
        .collect();
    let found: BTreeSet<Vec<Vertex>> = triples
        .par_iter()
        .flat_map_iter(|&(x, y)| {
            let block = d.block(d.pair_index().get(x, y));
            let best = &best;
            (y + 1..v)
                .filter(move |z| block.binary_search(z).is_err())
                .filter_map(move |z| {
                    let cap = best.load(Ordering::Relaxed);
                    let mut mask = FixedBitSet::with_capacity(v);
                    mask.extend([x, y, z]);
                    if !close_mask(d, &mut mask, cap) {
                        return None;
                    }
                    let size = mask.count_ones(..);
                    best.fetch_min(size, Ordering::Relaxed);
                    Some(mask.ones().collect::<Vec<_>>())
                })
        })
        .collect();
    let min = best.load(Ordering::Relaxed);
    if min >= v {
        return Vec::new();
    }
    found
        .into_iter()
        .filter(|s| s.len() == min)
        .map(|s| {
            let mut mask = FixedBitSet::with_capacity(v);
            mask.extend(s);
            SubDesign::from_mask(d, mask)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntersectionKind {
    Empty,
    Point,
    Block,
    Nontrivial,
}

pub fn subdesign_intersection(
    d: &Design,
    s1: &SubDesign,
    s2: &SubDesign,
) -> Result<(SubDesign, IntersectionKind), SubdesignError> {
    if s1.parent != s2.parent || s1.parent != d.fingerprint() {
        return Err(SubdesignError::DifferentParent);
    }
    let mut mask = s1.mask.clone();
    mask.intersect_with(&s2.mask);
    let s = SubDesign::from_mask(d, mask);
    debug_assert!(is_closed(d, &s.vertices));
    let kind = match s.len() {
        0 => IntersectionKind::Empty,
        1 => IntersectionKind::Point,
        n if n == d.k() => IntersectionKind::Block,
        _ => IntersectionKind::Nontrivial,
    };
    Ok((s, kind))
}

/// `v >= (k-1)v' + 1`.
pub fn size_bound_holds(v: usize, k: usize, v_prime: usize) -> bool {
    v >= (k - 1) * v_prime + 1
}

pub fn check_size_bound(d: &Design, s: &SubDesign) -> Result<bool, SubdesignError> {
    if s.len() <= d.k() || s.len() >= d.v() {
        return Err(SubdesignError::NotProper {
            size: s.len(),
            k: d.k(),
            v: d.v(),
        });
    }
    Ok(size_bound_holds(d.v(), d.k(), s.len()))
}

/// Coverage of vertices and blocks by the minimal sub-designs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WdProfile {
    pub v: usize,
    pub k: usize,
    pub v_prime: usize,
    pub b_prime: usize,
    pub n: usize,
    /// Sub-designs through each vertex; set when it is the same for all.
    pub l: Option<usize>,
    /// Sub-designs through each block; set when it is the same for all.
    pub m: Option<usize>,
    pub well_distributed: bool,
    pub vertex_counts: Vec<usize>,
    pub block_counts: Vec<usize>,
}

fn common<T: Copy + PartialEq>(xs: &[T]) -> Option<T> {
    let first = *xs.first()?;
    xs.iter().all(|&x| x == first).then_some(first)
}

pub fn wd_profile_of(d: &Design, subs: &[SubDesign]) -> Result<WdProfile, SubdesignError> {
    let first = subs.first().ok_or(SubdesignError::NoSubdesigns)?;
    let v_prime = first.len();
    let k = d.k();
    let mut vertex_counts = vec![0; d.v()];
    let mut block_counts = vec![0; d.b()];
    for s in subs {
        s.vertices.iter().for_each(|&x| vertex_counts[x] += 1);
        s.block_ids.iter().for_each(|&b| block_counts[b] += 1);
    }
    let l = common(&vertex_counts);
    let m = common(&block_counts);
    Ok(WdProfile {
        v: d.v(),
        k,
        v_prime,
        b_prime: v_prime * (v_prime - 1) / (k * (k - 1)),
        n: subs.len(),
        l,
        m,
        well_distributed: l.is_some() && m.is_some(),
        vertex_counts,
        block_counts,
    })
}

pub fn wd_profile(d: &Design) -> Result<(WdProfile, Vec<SubDesign>), SubdesignError> {
    let subs = minimal_subdesigns(d);
    let wd = wd_profile_of(d, &subs)?;
    Ok((wd, subs))
}

impl WdProfile {
    pub fn require_wd(&self) -> Result<(usize, usize), SubdesignError> {
        match (self.well_distributed, self.l, self.m) {
            (true, Some(l), Some(m)) => Ok((l, m)),
            _ => Err(SubdesignError::NotWellDistributed),
        }
    }

    /// Double counting, sub-design sizes, and for well-distributed families
    /// the formulas for `n` and `l` and the pair coverage of `(V, D)`.
    pub fn verify(&self, d: &Design, subs: &[SubDesign]) -> VerificationRecord {
        let mut rec = VerificationRecord::new();
        let (v, k, vp) = (self.v, self.k, self.v_prime);
        rec.check_eq(
            "sum of vertex counts = n v'",
            self.vertex_counts.iter().sum::<usize>(),
            self.n * vp,
        );
        rec.check_eq(
            "sum of block counts = n b'",
            self.block_counts.iter().sum::<usize>(),
            self.n * self.b_prime,
        );
        rec.check_eq(
            "b' k (k-1) = v' (v'-1)",
            self.b_prime * k * (k - 1),
            vp * (vp - 1),
        );
        for (i, s) in subs.iter().enumerate() {
            rec.check_eq(format!("size of sub-design {i}"), s.len(), vp);
            rec.check_eq(
                format!("blocks of sub-design {i}"),
                s.block_ids.len(),
                self.b_prime,
            );
            rec.check(
                format!("sub-design {i} is closed"),
                is_closed(d, &s.vertices),
            );
            rec.check(
                format!("size bound on sub-design {i}"),
                size_bound_holds(v, k, s.len()),
            );
        }
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i + 1..] {
                let meet = a.intersection_size(b);
                rec.check(
                    format!("|{a:?} & {b:?}| = {meet} in {{0, 1, k}}"),
                    meet <= 1 || meet == k,
                );
            }
        }
        if let (true, Some(l), Some(m)) = (self.well_distributed, self.l, self.m) {
            rec.check_eq(
                "n v'(v'-1) = m v(v-1)",
                self.n * vp * (vp - 1),
                m * v * (v - 1),
            );
            rec.check_eq("l (v'-1) = m (v-1)", l * (vp - 1), m * (v - 1));
            // (V, D) as a design: every vertex pair in exactly m sub-designs.
            for x in 0..v {
                for y in x + 1..v {
                    let c = subs
                        .iter()
                        .filter(|s| s.contains(x) && s.contains(y))
                        .count();
                    rec.check_eq(format!("pair ({x}, {y}) coverage by sub-designs"), c, m);
                }
            }
        }
        rec
    }
}

/// Vertex and block sets of a family of sub-designs as bitsets, for
/// membership-heavy loops.
pub struct SubdesignFamily {
    pub vertex_sets: Vec<FixedBitSet>,
    pub block_sets: Vec<FixedBitSet>,
}

impl SubdesignFamily {
    pub fn new(d: &Design, subs: &[SubDesign]) -> Self {
        let vertex_sets = subs.iter().map(|s| s.mask.clone()).collect();
        let block_sets = subs
            .iter()
            .map(|s| {
                let mut bs = FixedBitSet::with_capacity(d.b());
                bs.extend(s.block_ids.iter().copied());
                bs
            })
            .collect();
        SubdesignFamily {
            vertex_sets,
            block_sets,
        }
    }
}
