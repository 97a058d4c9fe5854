use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{individualize, wl2_refine, IncidenceGraph, WlError};
use crate::design::{Design, Vertex};
use crate::subdesign::is_closed;

/// How the starting triple and the stall-breaking vertices are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SeedRule {
    /// Smallest non-collinear triple; smallest vertex outside the stall set.
    #[default]
    Lexicographic,
    /// Uniform choices from a ChaCha stream.
    Seeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    /// Starting triple followed by one vertex per stall.
    pub individualized: Vec<Vertex>,
    /// Vertices in the order they were coloured.
    pub order: Vec<Vertex>,
    /// Size of the coloured set at each stall, then `v`.
    pub chain: Vec<usize>,
    pub budget: usize,
    /// Whether 2-WL with the same vertices individualized is discrete on `V`.
    pub discrete_on_v: bool,
}

fn ceil_log2(v: usize) -> usize {
    (usize::BITS - (v.max(1) - 1).leading_zeros()) as usize
}

/// Colours vertices one at a time: a third vertex of two coloured vertices
/// takes the next colour, scanning pairs of colours in lexicographic order.
/// When no pair yields a new vertex the coloured set is a closed
/// sub-design, and one more vertex is individualized.
pub fn steiner3_split(d: &Design, rule: SeedRule) -> Result<SplitResult, WlError> {
    if d.k() != 3 {
        return Err(WlError::NotSteinerTriple { k: d.k() });
    }
    let v = d.v();
    let mut rng = match rule {
        SeedRule::Lexicographic => None,
        SeedRule::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };

    let triple = match rng.as_mut() {
        None => (0..v)
            .flat_map(|x| (x + 1..v).flat_map(move |y| (y + 1..v).map(move |z| [x, y, z])))
            .find(|&[x, y, z]| !d.collinear(x, y, z))
            .expect("a design with b > 1 has a non-collinear triple"),
        Some(rng) => loop {
            let mut all: Vec<Vertex> = (0..v).collect();
            all.shuffle(rng);
            let t = [all[0], all[1], all[2]];
            if !d.collinear(t[0], t[1], t[2]) {
                break t;
            }
        },
    };

    let mut order: Vec<Vertex> = triple.to_vec();
    let mut coloured = FixedBitSet::with_capacity(v);
    coloured.extend(triple);
    let mut individualized = triple.to_vec();
    let mut chain = Vec::new();

    while order.len() < v {
        let next = (0..order.len())
            .flat_map(|i| (i + 1..order.len()).map(move |j| (i, j)))
            .find_map(|(i, j)| {
                let block = d.block(d.pair_index().get(order[i], order[j]));
                block.iter().copied().find(|&z| !coloured.contains(z))
            });
        let z = match next {
            Some(z) => z,
            None => {
                if !is_closed(d, &order) {
                    return Err(WlError::StallNotClosed { size: order.len() });
                }
                chain.push(order.len());
                let outside: Vec<Vertex> = (0..v).filter(|&x| !coloured.contains(x)).collect();
                let z = match rng.as_mut() {
                    None => outside[0],
                    Some(rng) => *outside.choose(rng).unwrap(),
                };
                individualized.push(z);
                z
            }
        };
        coloured.insert(z);
        order.push(z);
    }
    chain.push(v);

    let budget = 1 + ceil_log2(v);
    // |individualized| < 2 + log2 v, in integers.
    assert!(
        individualized.len() <= budget && 1usize << (individualized.len() - 2) < v,
        "split used {} individualizations on {v} vertices",
        individualized.len()
    );

    let g = IncidenceGraph::new(d);
    let mut c = wl2_refine(&g, None)?;
    for &x in &individualized {
        c = individualize(&g, &c, x)?;
    }

    Ok(SplitResult {
        individualized,
        order,
        chain,
        budget,
        discrete_on_v: c.discrete_on_vertices(),
    })
}
