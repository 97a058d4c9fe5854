use serde::Serialize;

use super::formulas::WdParams;
use super::AnalyticsError;
use crate::design::{BlockId, Design, Vertex};
use crate::rational::Rational;
use crate::subdesign::{SubDesign, WdProfile};
use crate::verify::VerificationRecord;

/// Refined counts for one vertex `x` of the reference sub-design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCounts {
    pub vertex: Vertex,
    /// Sub-designs meeting the reference in a block through `x`.
    pub block_through: usize,
    /// Sub-designs meeting the reference in a block avoiding `x`.
    pub block_avoiding: usize,
    /// Sub-designs meeting the reference exactly in `{x}`.
    pub only_at: usize,
}

/// Refined counts for one block `B` of the reference sub-design, over the
/// sub-designs that meet the reference in a block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCounts {
    pub block: BlockId,
    pub meets_once: usize,
    pub misses: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairStats {
    pub d1: usize,
    pub i_k: usize,
    pub i_1: usize,
    pub i_0: usize,
    pub per_vertex: Vec<VertexCounts>,
    pub per_block: Vec<BlockCounts>,
}

pub fn pair_stats(
    d: &Design,
    subs: &[SubDesign],
    wd: &WdProfile,
    d1: usize,
) -> Result<PairStats, AnalyticsError> {
    if !wd.well_distributed {
        return Err(AnalyticsError::NotWellDistributed);
    }
    let k = d.k();
    let reference = &subs[d1];
    let (mut i_k, mut i_1, mut i_0) = (0, 0, 0);
    let mut block_meets = Vec::new();
    let mut point_meets = Vec::new();
    for (idx, s) in subs.iter().enumerate() {
        if idx == d1 {
            continue;
        }
        match reference.intersection_size(s) {
            0 => i_0 += 1,
            1 => {
                i_1 += 1;
                point_meets.push(s);
            }
            n if n == k => {
                i_k += 1;
                block_meets.push(s);
            }
            size => return Err(AnalyticsError::BadIntersectionSize { d1, d2: idx, size }),
        }
    }
    let per_vertex = reference
        .vertices()
        .iter()
        .map(|&x| {
            let through = block_meets.iter().filter(|s| s.contains(x)).count();
            VertexCounts {
                vertex: x,
                block_through: through,
                block_avoiding: block_meets.len() - through,
                only_at: point_meets.iter().filter(|s| s.contains(x)).count(),
            }
        })
        .collect();
    let per_block = reference
        .block_ids()
        .iter()
        .map(|&b| {
            let hits = |s: &&SubDesign| d.block(b).iter().filter(|&&x| s.contains(x)).count();
            BlockCounts {
                block: b,
                meets_once: block_meets.iter().filter(|s| hits(s) == 1).count(),
                misses: block_meets.iter().filter(|s| hits(s) == 0).count(),
            }
        })
        .collect();
    Ok(PairStats {
        d1,
        i_k,
        i_1,
        i_0,
        per_vertex,
        per_block,
    })
}

impl PairStats {
    pub fn verify(&self, p: &WdParams) -> VerificationRecord {
        let mut rec = VerificationRecord::new();
        let q = |n: usize| Rational::from(n);
        let d1 = self.d1;
        rec.check_eq(
            format!("D{d1}: I_k + I_1 + I_0 = n - 1"),
            q(self.i_k + self.i_1 + self.i_0),
            p.n() - 1,
        );
        rec.check_eq(format!("D{d1}: I_k"), q(self.i_k), p.i_k());
        rec.check_eq(format!("D{d1}: I_1"), q(self.i_1), p.i_1());
        rec.check_eq(format!("D{d1}: I_0"), q(self.i_0), p.i_0());
        rec.check_eq(
            format!("D{d1}: I_0 by complement"),
            q(self.i_0),
            p.n() - 1 - p.i_k() - p.i_1(),
        );
        for c in &self.per_vertex {
            let x = c.vertex;
            rec.check_eq(
                format!("D{d1}, x={x}: block through x"),
                q(c.block_through),
                p.meets_block_through(),
            );
            rec.check_eq(
                format!("D{d1}, x={x}: block avoiding x"),
                q(c.block_avoiding),
                p.meets_block_avoiding(),
            );
            rec.check_eq(
                format!("D{d1}, x={x}: only at x"),
                q(c.only_at),
                p.meets_only_at(),
            );
        }
        for c in &self.per_block {
            let b = c.block;
            rec.check_eq(
                format!("D{d1}, B={b}: meets B once"),
                q(c.meets_once),
                p.meets_block_once_on(),
            );
            rec.check_eq(
                format!("D{d1}, B={b}: misses B"),
                q(c.misses),
                p.meets_block_off(),
            );
        }
        rec
    }
}
