//! Steiner systems: validated `(v, k, 1)` block designs and their parameter
//! identities.
//!
//! Vertices are dense ids `0..v`. Blocks are stored sorted, both within each
//! block and lexicographically across blocks, so two designs with the same
//! block set compare equal and serialize identically.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;
pub type BlockId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("a design needs at least 3 vertices, got {v}")]
    TooFewVertices { v: usize },
    #[error("a design needs at least one block")]
    NoBlocks,
    #[error("block {block}: vertex {vertex} is outside 0..{v}")]
    VertexOutOfRange {
        block: usize,
        vertex: usize,
        v: usize,
    },
    #[error("block {block}: vertex {vertex} appears twice")]
    RepeatedVertex { block: usize, vertex: usize },
    #[error("block {block} has {found} vertices, expected {expected}")]
    UnequalBlockSize {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("block size {k} is not supported (need k >= 3)")]
    BlockSizeTooSmall { k: usize },
    #[error("trivial design: {0}")]
    TrivialDesign(&'static str),
    #[error("block {block:?} is repeated")]
    RepeatedBlock { block: Vec<Vertex> },
    #[error("pair {{{}, {}}} lies in {count} blocks, expected exactly 1", pair.0, pair.1)]
    PairCoverageViolation {
        pair: (Vertex, Vertex),
        count: usize,
    },
    #[error("a pair needs two distinct vertices, got {vertex} twice")]
    SameVertex { vertex: Vertex },
    #[error("vertex {vertex} is outside 0..{v}")]
    NoSuchVertex { vertex: Vertex, v: usize },
    #[error("block id {block} is outside 0..{b}")]
    NoSuchBlock { block: BlockId, b: usize },
}

/// Lookup table from an unordered vertex pair to the unique block containing it.
#[derive(Debug, Clone)]
pub struct PairIndex {
    v: usize,
    table: Vec<u32>,
}

impl PairIndex {
    const NONE: u32 = u32::MAX;

    fn build(v: usize, blocks: &[Vec<Vertex>]) -> Result<Self, DesignError> {
        let mut table = vec![Self::NONE; v * v];
        let mut counts = vec![0u32; v * v];
        for (id, block) in blocks.iter().enumerate() {
            for (i, &x) in block.iter().enumerate() {
                for &y in &block[i + 1..] {
                    counts[x * v + y] += 1;
                    table[x * v + y] = id as u32;
                    table[y * v + x] = id as u32;
                }
            }
        }
        for x in 0..v {
            for y in x + 1..v {
                let count = counts[x * v + y] as usize;
                if count != 1 {
                    return Err(DesignError::PairCoverageViolation {
                        pair: (x, y),
                        count,
                    });
                }
            }
        }
        Ok(PairIndex { v, table })
    }

    /// Block through `x` and `y`; `x != y` and both in range.
    #[inline]
    pub fn get(&self, x: Vertex, y: Vertex) -> BlockId {
        self.table[x * self.v + y] as BlockId
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

/// How many other blocks meet a reference block in one vertex, and how many
/// miss it entirely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockMeetProfile {
    pub meet1: usize,
    pub meet0: usize,
}

impl BlockMeetProfile {
    /// `k(v-k)/(k-1)` blocks meet a fixed block once.
    pub fn meet1_closed_form(v: usize, k: usize) -> usize {
        k * (v - k) / (k - 1)
    }

    /// `(v - k^2 + k - 1)(v - k) / (k(k-1))` blocks are disjoint from it.
    pub fn meet0_closed_form(v: usize, k: usize) -> usize {
        let a = v as i64 - (k * k) as i64 + k as i64 - 1;
        (a * (v - k) as i64 / (k * (k - 1)) as i64) as usize
    }

    pub fn matches_closed_form(&self, v: usize, k: usize) -> bool {
        self.meet1 == Self::meet1_closed_form(v, k) && self.meet0 == Self::meet0_closed_form(v, k)
    }
}

/// A validated `(v, k, 1)`-BIBD.
#[derive(Debug, Clone)]
pub struct Design {
    v: usize,
    k: usize,
    blocks: Vec<Vec<Vertex>>,
    pairs: PairIndex,
    vertex_blocks: Vec<Vec<BlockId>>,
    fingerprint: u64,
}

impl PartialEq for Design {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.k == other.k && self.blocks == other.blocks
    }
}

impl Eq for Design {}

impl Design {
    /// Validates `blocks` as a Steiner system on `0..v`, taking the block size
    /// from the first block.
    pub fn new(v: usize, blocks: Vec<Vec<Vertex>>) -> Result<Self, DesignError> {
        let k = blocks.first().map(Vec::len).ok_or(DesignError::NoBlocks)?;
        Self::with_block_size(v, k, blocks)
    }

    /// Like [`Design::new`] but with the block size fixed up front, so every
    /// block (including the first) is checked against it.
    pub fn with_block_size(
        v: usize,
        k: usize,
        mut blocks: Vec<Vec<Vertex>>,
    ) -> Result<Self, DesignError> {
        if v < 3 {
            return Err(DesignError::TooFewVertices { v });
        }
        if blocks.is_empty() {
            return Err(DesignError::NoBlocks);
        }
        for (id, block) in blocks.iter_mut().enumerate() {
            block.sort_unstable();
            if let Some(&vertex) = block.iter().find(|&&x| x >= v) {
                return Err(DesignError::VertexOutOfRange {
                    block: id,
                    vertex,
                    v,
                });
            }
            if let Some(w) = block.windows(2).find(|w| w[0] == w[1]) {
                return Err(DesignError::RepeatedVertex {
                    block: id,
                    vertex: w[0],
                });
            }
            if block.len() != k {
                return Err(DesignError::UnequalBlockSize {
                    block: id,
                    expected: k,
                    found: block.len(),
                });
            }
        }
        if k < 3 {
            return Err(DesignError::BlockSizeTooSmall { k });
        }
        if k == v {
            return Err(DesignError::TrivialDesign(
                "the only block is the whole vertex set",
            ));
        }
        if binomial(v, k).map_or(false, |all| blocks.len() as u128 == all) {
            return Err(DesignError::TrivialDesign("every k-subset is a block"));
        }
        blocks.sort_unstable();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::RepeatedBlock {
                block: w[0].clone(),
            });
        }
        let pairs = PairIndex::build(v, &blocks)?;
        let mut vertex_blocks = vec![Vec::new(); v];
        for (id, block) in blocks.iter().enumerate() {
            for &x in block {
                vertex_blocks[x].push(id);
            }
        }
        let mut hasher = DefaultHasher::new();
        (v, k, &blocks).hash(&mut hasher);
        Ok(Design {
            v,
            k,
            blocks,
            pairs,
            vertex_blocks,
            fingerprint: hasher.finish(),
        })
    }

    /// Builds a design from arbitrary labels. Labels are sorted (numerically
    /// when every label parses as an integer) and mapped to `0..v`; the
    /// returned vector maps ids back to labels.
    pub fn from_labelled_blocks<S: AsRef<str>>(
        blocks: &[Vec<S>],
    ) -> Result<(Self, Vec<String>), DesignError> {
        let mut labels: Vec<String> = blocks
            .iter()
            .flatten()
            .map(|s| s.as_ref().to_string())
            .collect();
        labels.sort();
        labels.dedup();
        if labels.iter().all(|s| s.parse::<i64>().is_ok()) {
            labels.sort_by_key(|s| s.parse::<i64>().unwrap());
        }
        let ids: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mapped = blocks
            .iter()
            .map(|b| b.iter().map(|s| ids[s.as_ref()]).collect())
            .collect();
        let design = Design::new(labels.len(), mapped)?;
        Ok((design, labels))
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// `(v-1)/(k-1)`, the number of blocks through each vertex.
    pub fn r(&self) -> usize {
        (self.v - 1) / (self.k - 1)
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn block(&self, id: BlockId) -> &[Vertex] {
        &self.blocks[id]
    }

    pub fn blocks_through(&self, x: Vertex) -> &[BlockId] {
        &self.vertex_blocks[x]
    }

    pub fn pair_index(&self) -> &PairIndex {
        &self.pairs
    }

    /// Identifies this block set within a process; used to tell whether two
    /// sub-designs share a parent.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn params(&self) -> DesignParams {
        let (v, k) = (self.v, self.k);
        let r = (v - 1) / (k - 1);
        let b = v * (v - 1) / (k * (k - 1));
        assert!(
            self.vertex_blocks.iter().all(|bs| bs.len() == r),
            "replication number differs from (v-1)/(k-1)"
        );
        assert_eq!(
            b,
            self.blocks.len(),
            "block count differs from v(v-1)/(k(k-1))"
        );
        DesignParams {
            v,
            b,
            r,
            k,
            lambda: 1,
        }
    }

    pub fn pair_block(&self, x: Vertex, y: Vertex) -> Result<BlockId, DesignError> {
        for z in [x, y] {
            if z >= self.v {
                return Err(DesignError::NoSuchVertex {
                    vertex: z,
                    v: self.v,
                });
            }
        }
        if x == y {
            return Err(DesignError::SameVertex { vertex: x });
        }
        Ok(self.pairs.get(x, y))
    }

    /// Whether `x`, `y`, `z` lie in a common block.
    pub fn collinear(&self, x: Vertex, y: Vertex, z: Vertex) -> bool {
        self.blocks[self.pairs.get(x, y)].binary_search(&z).is_ok()
    }

    fn check_block(&self, id: BlockId) -> Result<(), DesignError> {
        if id >= self.blocks.len() {
            return Err(DesignError::NoSuchBlock {
                block: id,
                b: self.blocks.len(),
            });
        }
        Ok(())
    }

    /// Counts, by brute force, the blocks meeting `b0` in one vertex and the
    /// blocks disjoint from it.
    pub fn block_meet_profile(&self, b0: BlockId) -> Result<BlockMeetProfile, DesignError> {
        self.check_block(b0)?;
        let (mut meet1, mut meet0) = (0, 0);
        for (id, block) in self.blocks.iter().enumerate() {
            if id == b0 {
                continue;
            }
            match intersection_size(&self.blocks[b0], block) {
                0 => meet0 += 1,
                1 => meet1 += 1,
                n => unreachable!("two blocks of a Steiner system share {n} vertices"),
            }
        }
        Ok(BlockMeetProfile { meet1, meet0 })
    }

    /// `b == v`. When it holds, every pair of blocks is checked to meet in
    /// exactly one vertex.
    pub fn is_symmetric(&self) -> bool {
        if self.b() != self.v {
            return false;
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                assert_eq!(
                    intersection_size(a, b),
                    1,
                    "symmetric design with a disjoint block pair"
                );
            }
        }
        true
    }

    /// The intersections `b0 ∩ B` with at least two points, over all other
    /// blocks `B`, as a multiset. With `λ = 1` blocks meet in at most one
    /// vertex, so this is always empty.
    pub fn derived_block_tbd(&self, b0: BlockId) -> Result<Vec<Vec<Vertex>>, DesignError> {
        self.check_block(b0)?;
        let base = &self.blocks[b0];
        Ok(self
            .blocks
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != b0)
            .map(|(_, b)| {
                base.iter()
                    .copied()
                    .filter(|x| b.binary_search(x).is_ok())
                    .collect::<Vec<_>>()
            })
            .filter(|meet| meet.len() >= 2)
            .collect())
    }

    /// The design with vertex `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Design, DesignError> {
        assert_eq!(perm.len(), self.v, "relabelling must cover every vertex");
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| perm[x]).collect())
            .collect();
        Design::with_block_size(self.v, self.k, blocks)
    }

    /// Whether `perm` maps the block set onto itself.
    pub fn is_automorphism(&self, perm: &[Vertex]) -> bool {
        perm.len() == self.v
            && self.blocks.iter().all(|b| {
                let mut image: Vec<Vertex> = b.iter().map(|&x| perm[x]).collect();
                image.sort_unstable();
                let id = self.pairs.get(image[0], image[1]);
                self.blocks[id] == image
            })
    }
}

/// `(k-1) | λ(v-1)` and `k(k-1) | λv(v-1)`.
pub fn admissible(v: usize, k: usize, lambda: usize) -> bool {
    if k < 2 || v <= k || lambda < 1 {
        return false;
    }
    let (v, k, lambda) = (v as u128, k as u128, lambda as u128);
    (lambda * (v - 1)) % (k - 1) == 0 && (lambda * v * (v - 1)) % (k * (k - 1)) == 0
}

pub(crate) fn intersection_size(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{example_15, example_40, fano};

    fn fano_lines() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 3],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![4, 5, 0],
            vec![5, 6, 1],
            vec![6, 0, 2],
        ]
    }

    #[test]
    fn fano_validates() {
        // Independent pair-coverage count over all 21 pairs.
        let lines = fano_lines();
        for x in 0..7 {
            for y in x + 1..7 {
                let n = lines
                    .iter()
                    .filter(|l| l.contains(&x) && l.contains(&y))
                    .count();
                assert_eq!(n, 1);
            }
        }
        let d = Design::new(7, lines).unwrap();
        assert_eq!(d.k(), 3);
        assert_eq!(
            d.params(),
            DesignParams {
                v: 7,
                b: 7,
                r: 3,
                k: 3,
                lambda: 1
            }
        );
    }

    #[test]
    fn missing_line_uncovers_pairs() {
        let mut lines = fano_lines();
        lines.pop();
        match Design::new(7, lines) {
            Err(DesignError::PairCoverageViolation { count: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Design::new(7, vec![vec![0, 1, 7]]),
            Err(DesignError::VertexOutOfRange {
                block: 0,
                vertex: 7,
                v: 7
            })
        );
        assert_eq!(
            Design::new(7, vec![vec![0, 1, 2], vec![0, 3]]),
            Err(DesignError::UnequalBlockSize {
                block: 1,
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            Design::new(7, vec![vec![0, 1, 1]]),
            Err(DesignError::RepeatedVertex {
                block: 0,
                vertex: 1
            })
        );
        assert_eq!(Design::new(5, vec![]), Err(DesignError::NoBlocks));
        assert_eq!(
            Design::new(2, vec![vec![0, 1]]),
            Err(DesignError::TooFewVertices { v: 2 })
        );
        assert_eq!(
            Design::new(4, vec![vec![0, 1], vec![0, 2]]),
            Err(DesignError::BlockSizeTooSmall { k: 2 })
        );
        assert!(matches!(
            Design::new(3, vec![vec![0, 1, 2]]),
            Err(DesignError::TrivialDesign(_))
        ));
        let mut lines = fano_lines();
        lines.push(vec![3, 1, 0]);
        assert_eq!(
            Design::new(7, lines),
            Err(DesignError::RepeatedBlock {
                block: vec![0, 1, 3]
            })
        );
        // Every 3-subset of 4 points: lambda = 2, rejected as trivial first.
        let all: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        assert!(matches!(
            Design::new(4, all),
            Err(DesignError::TrivialDesign(_))
        ));
    }

    #[test]
    fn doubly_covered_pair_is_reported() {
        let mut lines = fano_lines();
        lines[0] = vec![0, 1, 2];
        match Design::new(7, lines) {
            Err(DesignError::PairCoverageViolation { pair, count }) => {
                assert!(count == 0 || count >= 2, "{pair:?} {count}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn golden_params() {
        assert_eq!(
            example_15().params(),
            DesignParams {
                v: 15,
                b: 35,
                r: 7,
                k: 3,
                lambda: 1
            }
        );
        assert_eq!(
            example_40().params(),
            DesignParams {
                v: 40,
                b: 130,
                r: 13,
                k: 4,
                lambda: 1
            }
        );
        assert_eq!(fano().params().b, 7);
    }

    #[test]
    fn admissibility() {
        assert!(admissible(15, 3, 1));
        assert!(!admissible(16, 3, 1));
        assert!(admissible(40, 4, 1));
        assert!(admissible(7, 3, 1));
        assert!(!admissible(3, 3, 1));
    }

    #[test]
    fn pair_lookup() {
        let d = example_15();
        assert_eq!(d.block(d.pair_block(0, 1).unwrap()), &[0, 1, 2]);
        assert_eq!(
            d.pair_block(3, 3),
            Err(DesignError::SameVertex { vertex: 3 })
        );
        assert!(matches!(
            d.pair_block(3, 15),
            Err(DesignError::NoSuchVertex { .. })
        ));
        let d40 = example_40();
        assert_eq!(d40.block(d40.pair_block(9, 12).unwrap()), &[9, 10, 11, 12]);
        let f = fano();
        for x in 0..7 {
            for y in 0..7 {
                if x != y {
                    let b = f.block(f.pair_block(x, y).unwrap());
                    assert!(b.contains(&x) && b.contains(&y));
                }
            }
        }
    }

    #[test]
    fn meet_profiles() {
        for b0 in 0..35 {
            let p = example_15().block_meet_profile(b0).unwrap();
            assert_eq!(
                p,
                BlockMeetProfile {
                    meet1: 18,
                    meet0: 16
                }
            );
            assert!(p.matches_closed_form(15, 3));
        }
        let d40 = example_40();
        for b0 in 0..d40.b() {
            assert_eq!(
                d40.block_meet_profile(b0).unwrap(),
                BlockMeetProfile {
                    meet1: 48,
                    meet0: 81
                }
            );
        }
        assert_eq!(
            fano().block_meet_profile(0).unwrap(),
            BlockMeetProfile { meet1: 6, meet0: 0 }
        );
        assert!(matches!(
            fano().block_meet_profile(7),
            Err(DesignError::NoSuchBlock { .. })
        ));
    }

    #[test]
    fn symmetry_and_derived() {
        assert!(fano().is_symmetric());
        assert!(!example_15().is_symmetric());
        assert!(!example_40().is_symmetric());
        for b0 in 0..35 {
            assert!(example_15().derived_block_tbd(b0).unwrap().is_empty());
        }
        assert!(fano().derived_block_tbd(3).unwrap().is_empty());
    }

    #[test]
    fn double_counting_identities() {
        for d in [fano(), example_15(), example_40()] {
            let p = d.params();
            assert_eq!(p.b * p.k, p.r * p.v);
            let pairs_in_blocks: usize =
                d.blocks().iter().map(|b| b.len() * (b.len() - 1) / 2).sum();
            assert_eq!(pairs_in_blocks, p.v * (p.v - 1) / 2);
            assert!(p.b >= p.v);
        }
    }

    #[test]
    fn labelled_input() {
        let blocks: Vec<Vec<&str>> = fano_lines()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| ["10", "20", "30", "40", "50", "60", "70"][x])
                    .collect()
            })
            .collect();
        let (d, labels) = Design::from_labelled_blocks(&blocks).unwrap();
        assert_eq!(labels[0], "10");
        assert_eq!(labels[6], "70");
        assert_eq!(d, Design::new(7, fano_lines()).unwrap());
    }

    #[test]
    fn relabel_and_automorphism() {
        let d = fano();
        let id: Vec<usize> = (0..7).collect();
        assert!(d.is_automorphism(&id));
        let swap = vec![1, 0, 2, 3, 4, 5, 6];
        let relabelled = d.relabel(&swap).unwrap();
        assert_eq!(relabelled.params(), d.params());
        assert_eq!(d.is_automorphism(&swap), relabelled == d);
    }
}
