//! Designs to test against: the two well-distributed reference designs,
//! prime-order projective and affine planes, and pasting one design into the
//! blocks of another.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::design::{intersection_size, Design, DesignError, Vertex};
use crate::io::parse_design;
use crate::subdesign::{is_closed, minimal_subdesigns, wd_profile_of};

pub const EXAMPLE_15: &str = include_str!("../data/example15.txt");
pub const EXAMPLE_40: &str = include_str!("../data/example40.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{q} is not a prime (only prime orders are supported)")]
    NotPrime { q: usize },
    #[error("outer block size {outer_k} differs from inner vertex count {inner_v}")]
    SizeMismatch { outer_k: usize, inner_v: usize },
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// The (15, 3, 1) design with fifteen well-distributed Fano sub-designs.
pub fn example_15() -> Design {
    parse_design(EXAMPLE_15).expect("embedded 15-point design is valid")
}

/// The (40, 4, 1) design with forty well-distributed (13, 4, 1) sub-designs.
pub fn example_40() -> Design {
    parse_design(EXAMPLE_40).expect("embedded 40-point design is valid")
}

pub fn fano() -> Design {
    projective_plane(2).expect("2 is prime")
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// PG(2, q): points and lines are the normalised nonzero vectors of F_q^3
/// (first nonzero coordinate 1), incident when their dot product vanishes.
pub fn projective_plane(q: usize) -> Result<Design, ConstructionError> {
    if !is_prime(q) {
        return Err(ConstructionError::NotPrime { q });
    }
    let mut points: Vec<[usize; 3]> = Vec::with_capacity(q * q + q + 1);
    points.push([0, 0, 1]);
    for c in 0..q {
        points.push([0, 1, c]);
    }
    for b in 0..q {
        for c in 0..q {
            points.push([1, b, c]);
        }
    }
    points.sort_unstable();
    let blocks = points
        .iter()
        .map(|l| {
            (0..points.len())
                .filter(|&i| (0..3).map(|j| l[j] * points[i][j]).sum::<usize>() % q == 0)
                .collect()
        })
        .collect();
    Ok(Design::new(points.len(), blocks)?)
}

/// AG(2, q) on points `x q + y`: lines `y = s x + c` and `x = c`.
pub fn affine_plane(q: usize) -> Result<Design, ConstructionError> {
    if !is_prime(q) {
        return Err(ConstructionError::NotPrime { q });
    }
    let mut blocks: Vec<Vec<Vertex>> = Vec::with_capacity(q * q + q);
    for s in 0..q {
        for c in 0..q {
            blocks.push((0..q).map(|x| x * q + (s * x + c) % q).collect());
        }
    }
    for c in 0..q {
        blocks.push((0..q).map(|y| c * q + y).collect());
    }
    Ok(Design::new(q * q, blocks)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BijectionRule {
    /// Inner vertex `i` goes to the `i`-th smallest vertex of the outer block.
    SortedOrder,
    /// A ChaCha-seeded shuffle of each outer block, drawn in block order.
    SeededShuffle(u64),
}

#[derive(Debug, Clone)]
pub struct PasteRecipe {
    pub outer: Design,
    pub inner: Design,
    pub rule: BijectionRule,
}

impl PasteRecipe {
    pub fn new(
        outer: Design,
        inner: Design,
        rule: BijectionRule,
    ) -> Result<Self, ConstructionError> {
        if outer.k() != inner.v() {
            return Err(ConstructionError::SizeMismatch {
                outer_k: outer.k(),
                inner_v: inner.v(),
            });
        }
        Ok(PasteRecipe { outer, inner, rule })
    }

    /// For each outer block, the image of inner vertex `i`.
    fn bijections(&self) -> Vec<Vec<Vertex>> {
        let mut rng = match self.rule {
            BijectionRule::SortedOrder => None,
            BijectionRule::SeededShuffle(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        self.outer
            .blocks()
            .iter()
            .map(|b| {
                let mut phi = b.clone();
                if let Some(rng) = rng.as_mut() {
                    phi.shuffle(rng);
                }
                phi
            })
            .collect()
    }

    /// Vertex sets of the pasted copies of the inner design, one per outer block.
    pub fn copies(&self) -> &[Vec<Vertex>] {
        self.outer.blocks()
    }
}

/// Replaces every outer block by a copy of the inner design.
pub fn paste(recipe: &PasteRecipe) -> Result<Design, ConstructionError> {
    if recipe.outer.k() != recipe.inner.v() {
        return Err(ConstructionError::SizeMismatch {
            outer_k: recipe.outer.k(),
            inner_v: recipe.inner.v(),
        });
    }
    let blocks = recipe
        .bijections()
        .iter()
        .flat_map(|phi| {
            recipe
                .inner
                .blocks()
                .iter()
                .map(move |b| b.iter().map(|&i| phi[i]).collect::<Vec<_>>())
        })
        .collect();
    Ok(Design::with_block_size(
        recipe.outer.v(),
        recipe.inner.k(),
        blocks,
    )?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub copies: usize,
    pub copies_closed: usize,
    /// Copies through each vertex, when constant.
    pub copies_per_vertex: Option<usize>,
    /// Whether every block of the pasted design lies in exactly one copy.
    pub one_copy_per_block: bool,
    pub minimal_size: Option<usize>,
    pub minimal_count: usize,
    /// Whether the minimal sub-designs are exactly the pasted copies.
    pub minimal_are_copies: bool,
    pub well_distributed: bool,
}

pub fn transfer_check(pasted: &Design, recipe: &PasteRecipe) -> TransferReport {
    let copies = recipe.copies();
    let copies_closed = copies.iter().filter(|c| is_closed(pasted, c)).count();
    let mut per_vertex = vec![0usize; pasted.v()];
    copies.iter().flatten().for_each(|&x| per_vertex[x] += 1);
    let copies_per_vertex = per_vertex
        .first()
        .copied()
        .filter(|&c| per_vertex.iter().all(|&x| x == c));
    let one_copy_per_block = pasted.blocks().iter().all(|b| {
        copies
            .iter()
            .filter(|c| b.iter().all(|x| c.binary_search(x).is_ok()))
            .count()
            == 1
    });
    let subs = minimal_subdesigns(pasted);
    let found: Vec<&[Vertex]> = subs.iter().map(|s| s.vertices()).collect();
    let mut expected: Vec<&[Vertex]> = copies.iter().map(Vec::as_slice).collect();
    expected.sort_unstable();
    let well_distributed = wd_profile_of(pasted, &subs).map_or(false, |wd| wd.well_distributed);
    TransferReport {
        copies: copies.len(),
        copies_closed,
        copies_per_vertex,
        one_copy_per_block,
        minimal_size: subs.first().map(|s| s.len()),
        minimal_count: subs.len(),
        minimal_are_copies: found == expected,
        well_distributed,
    }
}

/// Meeting point of two blocks that share exactly one vertex.
fn meet_point(a: &[Vertex], b: &[Vertex]) -> Option<Vertex> {
    (intersection_size(a, b) == 1).then(|| *a.iter().find(|x| b.binary_search(x).is_ok()).unwrap())
}

/// Replaces the first Pasch configuration of a triple system (four blocks
/// on six vertices, each vertex in two of them) by the other four triples
/// covering the same pairs. Returns `None` if `k != 3` or there is none.
pub fn pasch_trade(d: &Design) -> Option<Design> {
    if d.k() != 3 {
        return None;
    }
    let blocks = d.blocks();
    let b = blocks.len();
    for i in 0..b {
        for j in i + 1..b {
            let Some(p_ij) = meet_point(&blocks[i], &blocks[j]) else {
                continue;
            };
            for k in j + 1..b {
                let (Some(p_ik), Some(p_jk)) = (
                    meet_point(&blocks[i], &blocks[k]),
                    meet_point(&blocks[j], &blocks[k]),
                ) else {
                    continue;
                };
                for l in k + 1..b {
                    let quad = [i, j, k, l];
                    let meets = [
                        Some(p_ij),
                        Some(p_ik),
                        meet_point(&blocks[i], &blocks[l]),
                        Some(p_jk),
                        meet_point(&blocks[j], &blocks[l]),
                        meet_point(&blocks[k], &blocks[l]),
                    ];
                    let Some(points) = meets.into_iter().collect::<Option<Vec<Vertex>>>() else {
                        continue;
                    };
                    let mut distinct = points.clone();
                    distinct.sort_unstable();
                    distinct.dedup();
                    if distinct.len() != 6 {
                        continue;
                    }
                    // Meet points indexed by pair: ij ik il jk jl kl. Each new
                    // triple collects the meets within three of the four blocks.
                    let traded = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]]
                        .map(|t| t.map(|e| points[e]).to_vec());
                    let mut out: Vec<Vec<Vertex>> = blocks
                        .iter()
                        .enumerate()
                        .filter(|(id, _)| !quad.contains(id))
                        .map(|(_, blk)| blk.clone())
                        .collect();
                    out.extend(traded);
                    return Some(
                        Design::with_block_size(d.v(), 3, out)
                            .expect("a Pasch trade keeps pair coverage"),
                    );
                }
            }
        }
    }
    None
}
