use std::collections::BTreeMap;

use serde::Serialize;

use super::{IncidenceGraph, PairColoring, WlError};
use crate::design::Design;
use crate::verify::VerificationRecord;

/// The nine pair classes of a λ = 1 incidence graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NineClass {
    /// `(x, x)` for a vertex.
    Vx,
    /// `(B, B)` for a block.
    Bl,
    /// `(x, B)`, `x ∈ B`.
    Be,
    /// `(x, B)`, `x ∉ B`.
    Dbe,
    /// `(B, x)`, `x ∈ B`.
    Co,
    /// `(B, x)`, `x ∉ B`.
    Dco,
    /// Two distinct vertices.
    Vs,
    /// Two disjoint blocks.
    Zero,
    /// Two blocks meeting in a vertex.
    One,
}

impl NineClass {
    pub const ALL: [NineClass; 9] = [
        NineClass::Vx,
        NineClass::Bl,
        NineClass::Be,
        NineClass::Dbe,
        NineClass::Co,
        NineClass::Dco,
        NineClass::Vs,
        NineClass::Zero,
        NineClass::One,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NineClass::Vx => "vx",
            NineClass::Bl => "bl",
            NineClass::Be => "be",
            NineClass::Dbe => "dbe",
            NineClass::Co => "co",
            NineClass::Dco => "dco",
            NineClass::Vs => "vs",
            NineClass::Zero => "0",
            NineClass::One => "1",
        }
    }
}

/// The nine-class colouring, row-major over nodes `0..v+b`.
pub fn nine_class_colouring(d: &Design) -> Vec<NineClass> {
    let (v, n) = (d.v(), d.v() + d.b());
    let block = |i: usize| d.block(i - v);
    let meets = |a: &[usize], b: &[usize]| a.iter().any(|x| b.binary_search(x).is_ok());
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            out.push(match (x < v, y < v) {
                (true, true) if x == y => NineClass::Vx,
                (true, true) => NineClass::Vs,
                (false, false) if x == y => NineClass::Bl,
                (false, false) if meets(block(x), block(y)) => NineClass::One,
                (false, false) => NineClass::Zero,
                (true, false) if block(y).binary_search(&x).is_ok() => NineClass::Be,
                (true, false) => NineClass::Dbe,
                (false, true) if block(x).binary_search(&y).is_ok() => NineClass::Co,
                (false, true) => NineClass::Dco,
            });
        }
    }
    out
}

type Table = Vec<((NineClass, NineClass), i64)>;

/// Expected `(c(x,z), c(z,y))` counts for a pair `(x, y)` of each class.
fn expected_table(d: &Design, class: NineClass) -> Table {
    use NineClass::*;
    let (v, k, b, r) = (d.v() as i64, d.k() as i64, d.b() as i64, d.r() as i64);
    let m1 = k * (r - 1);
    let m0 = b - 1 - m1;
    let j = (k - 1) * (k - 1);
    match class {
        Vx => vec![
            ((Vx, Vx), 1),
            ((Vs, Vs), v - 1),
            ((Be, Co), r),
            ((Dbe, Dco), b - r),
        ],
        Bl => vec![
            ((Bl, Bl), 1),
            ((One, One), m1),
            ((Zero, Zero), m0),
            ((Co, Be), k),
            ((Dco, Dbe), v - k),
        ],
        Be => vec![
            ((Vx, Be), 1),
            ((Vs, Be), k - 1),
            ((Vs, Dbe), v - k),
            ((Be, Bl), 1),
            ((Be, One), r - 1),
            ((Dbe, One), m1 - r + 1),
            ((Dbe, Zero), m0),
        ],
        Dbe => vec![
            ((Vx, Dbe), 1),
            ((Vs, Be), k),
            ((Vs, Dbe), v - k - 1),
            ((Dbe, Bl), 1),
            ((Be, One), k),
            ((Be, Zero), r - k),
            ((Dbe, One), m1 - k),
            ((Dbe, Zero), m0 - r + k),
        ],
        Co => vec![
            ((Bl, Co), 1),
            ((One, Co), r - 1),
            ((One, Dco), m1 - r + 1),
            ((Zero, Dco), m0),
            ((Co, Vx), 1),
            ((Co, Vs), k - 1),
            ((Dco, Vs), v - k),
        ],
        Dco => vec![
            ((Bl, Dco), 1),
            ((One, Co), k),
            ((Zero, Co), r - k),
            ((One, Dco), m1 - k),
            ((Zero, Dco), m0 - r + k),
            ((Dco, Vx), 1),
            ((Co, Vs), k),
            ((Dco, Vs), v - k - 1),
        ],
        Vs => vec![
            ((Vx, Vs), 1),
            ((Vs, Vx), 1),
            ((Vs, Vs), v - 2),
            ((Be, Co), 1),
            ((Be, Dco), r - 1),
            ((Dbe, Co), r - 1),
            ((Dbe, Dco), b - 2 * r + 1),
        ],
        Zero => vec![
            ((Bl, Zero), 1),
            ((Zero, Bl), 1),
            ((One, One), k * k),
            ((One, Zero), m1 - k * k),
            ((Zero, One), m1 - k * k),
            ((Zero, Zero), b - 2 - 2 * m1 + k * k),
            ((Co, Dbe), k),
            ((Dco, Be), k),
            ((Dco, Dbe), v - 2 * k),
        ],
        One => vec![
            ((Bl, One), 1),
            ((One, Bl), 1),
            ((One, One), r - 2 + j),
            ((One, Zero), m1 - r + 1 - j),
            ((Zero, One), m1 - r + 1 - j),
            ((Zero, Zero), m0 - m1 + r - 1 + j),
            ((Co, Be), 1),
            ((Co, Dbe), k - 1),
            ((Dco, Be), k - 1),
            ((Dco, Dbe), v - 2 * k + 1),
        ],
    }
}

/// Checks that `c` is stable, never splits a class of the nine-class
/// colouring, and that every pair of each nine-class matches the triangle
/// count table of its class.
pub fn verify_lambda1_stable(d: &Design, c: &PairColoring) -> Result<VerificationRecord, WlError> {
    let g = IncidenceGraph::new(d);
    let n = g.nodes();
    let nine = nine_class_colouring(d);
    let mut rec = VerificationRecord::new();

    let again = super::wl2_refine(&g, Some(c))?;
    rec.check_eq(
        "classes after one more refinement",
        again.num_classes,
        c.num_classes,
    );

    let mut owner: BTreeMap<NineClass, u32> = BTreeMap::new();
    for (i, &class) in nine.iter().enumerate() {
        if *owner.entry(class).or_insert(c.colours()[i]) != c.colours()[i] {
            return Err(WlError::FinerThanNineClass {
                class: class.name().into(),
            });
        }
    }

    let tables: BTreeMap<NineClass, BTreeMap<(NineClass, NineClass), i64>> = NineClass::ALL
        .iter()
        .map(|&cl| {
            (
                cl,
                expected_table(d, cl)
                    .into_iter()
                    .filter(|&(_, e)| e != 0)
                    .collect(),
            )
        })
        .collect();
    let mut checked: BTreeMap<NineClass, usize> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let class = nine[x * n + y];
            *checked.entry(class).or_default() += 1;
            let mut counts: BTreeMap<(NineClass, NineClass), i64> = BTreeMap::new();
            for z in 0..n {
                *counts
                    .entry((nine[x * n + z], nine[z * n + y]))
                    .or_default() += 1;
            }
            let expected = &tables[&class];
            for key in expected.keys().chain(counts.keys()) {
                let (e, a) = (
                    expected.get(key).copied().unwrap_or(0),
                    counts.get(key).copied().unwrap_or(0),
                );
                if e != a {
                    return Err(WlError::TableViolation {
                        class: class.name().into(),
                        signature: format!("({}, {})", key.0.name(), key.1.name()),
                        expected: e,
                        actual: a,
                    });
                }
            }
        }
    }
    for (class, pairs) in checked {
        rec.check(
            format!("triangle table for class {} on {pairs} pairs", class.name()),
            true,
        );
    }
    Ok(rec)
}
