//! Closed forms in the parameters `v, k, v', m` of a design with
//! well-distributed minimal sub-designs. Everything is exact rational
//! arithmetic; fields are rationals so the same code can be driven by
//! synthetic parameter values.

use serde::Serialize;

use super::TripleCase;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WdParams {
    pub v: Rational,
    pub k: Rational,
    pub vp: Rational,
    pub m: Rational,
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

impl WdParams {
    pub fn new(v: usize, k: usize, vp: usize, m: usize) -> Self {
        WdParams {
            v: v.into(),
            k: k.into(),
            vp: vp.into(),
            m: m.into(),
        }
    }

    /// Sub-designs: `m v(v-1) / (v'(v'-1))`.
    pub fn n(&self) -> Rational {
        self.m * self.v * (self.v - 1) / (self.vp * (self.vp - 1))
    }

    /// Sub-designs through a vertex: `m (v-1)/(v'-1)`.
    pub fn l(&self) -> Rational {
        self.m * (self.v - 1) / (self.vp - 1)
    }

    pub fn b_prime(&self) -> Rational {
        self.vp * (self.vp - 1) / (self.k * (self.k - 1))
    }

    fn kk1(&self) -> Rational {
        self.k * (self.k - 1)
    }

    /// Other sub-designs meeting a fixed one in a block.
    pub fn i_k(&self) -> Rational {
        self.vp * (self.vp - 1) * (self.m - 1) / self.kk1()
    }

    pub fn meets_block_through(&self) -> Rational {
        (self.vp - 1) * (self.m - 1) / (self.k - 1)
    }

    pub fn meets_block_avoiding(&self) -> Rational {
        (self.vp - 1) * (self.vp - self.k) * (self.m - 1) / self.kk1()
    }

    pub fn meets_block_once_on(&self) -> Rational {
        self.k * (self.vp - self.k) * (self.m - 1) / (self.k - 1)
    }

    pub fn meets_block_off(&self) -> Rational {
        (self.vp - self.k * self.k + self.k - 1) * (self.vp - self.k) * (self.m - 1) / self.kk1()
    }

    /// Other sub-designs meeting a fixed one in exactly a given vertex.
    pub fn meets_only_at(&self) -> Rational {
        let (v, k, vp, m) = (self.v, self.k, self.vp, self.m);
        m * ((v - 1) / (vp - 1) - (vp - 1) / (k - 1)) + (vp - k) / (k - 1)
    }

    pub fn i_1(&self) -> Rational {
        self.vp * self.meets_only_at()
    }

    pub fn i_0(&self) -> Rational {
        let (v, k, vp, m) = (self.v, self.k, self.vp, self.m);
        m * ((v - 1) * (v - vp * vp) / (vp * (vp - 1)) + vp * (vp - 1) / k)
            - (vp - 1) * (vp - k) / k
    }

    pub fn i_of(&self, case: TripleCase) -> Rational {
        match case {
            TripleCase::Point => self.i_1(),
            TripleCase::Block => self.i_k(),
            TripleCase::Disjoint => self.i_0(),
        }
    }

    /// Size of the intersection that defines a case.
    pub fn meet(&self, case: TripleCase) -> Rational {
        match case {
            TripleCase::Point => q(1),
            TripleCase::Block => self.k,
            TripleCase::Disjoint => q(0),
        }
    }
}

/// Sums over the third sub-designs `D` of `i1 = |D ∩ (D1 \ D2)|`,
/// `i2 = |D ∩ D1 ∩ D2|`, `i3 = |D ∩ (D2 \ D1)|` and their products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ConnorSums<T> {
    pub s1: T,
    pub s3: T,
    pub s11: T,
    pub s33: T,
    pub s2: T,
    pub s12: T,
    pub s23: T,
    pub s13: T,
}

impl ConnorSums<Rational> {
    pub fn closed_form(p: &WdParams, case: TripleCase) -> Self {
        let i = p.meet(case);
        let (v, vp, m) = (p.v, p.vp, p.m);
        let l = p.l();
        let lin = (vp - i) * (l - 1);
        let sq = (vp - i) * (m * ((v - 1) / (vp - 1) + vp - i - 1) - vp + i);
        let mixed = i * (vp - i) * (m - 1);
        ConnorSums {
            s1: lin,
            s3: lin,
            s11: sq,
            s33: sq,
            s2: i * (l - 2),
            s12: mixed,
            s23: mixed,
            s13: (vp - i) * (vp - i) * m,
        }
    }

    pub fn fields(&self) -> [(&'static str, Rational); 8] {
        [
            ("sum i1", self.s1),
            ("sum i3", self.s3),
            ("sum i1^2", self.s11),
            ("sum i3^2", self.s33),
            ("sum i2", self.s2),
            ("sum i1 i2", self.s12),
            ("sum i2 i3", self.s23),
            ("sum i1 i3", self.s13),
        ]
    }
}

/// Given the free counts of one ordered pair (the first four for the point
/// and block cases, the first three for the disjoint case), the remaining
/// counts forced by the sum identities and the class total. Returns the
/// full vector.
pub fn dependent_counts(p: &WdParams, case: TripleCase, free: &[Rational]) -> Vec<Rational> {
    let (v, k, vp, m) = (p.v, p.k, p.vp, p.m);
    let kk1 = k * (k - 1);
    let pairs_ratio = p.v * (p.v - 1) / (p.vp * (p.vp - 1));
    let l_ratio = (v - 1) / (vp - 1);
    match case {
        TripleCase::Point => {
            let [a1, a2, a3, a4] = <[Rational; 4]>::try_from(free).expect("four free counts");
            let base =
                m * (v - 1 - k * (vp - 1) * (vp - 1) / (k - 1)) + (vp - 1) * (vp - k) / (k - 1);
            let through = (m - 1) * (vp - 1) / (k - 1);
            let avoid = (m - 1) * (vp - 1) * (vp - k) / kk1;
            let weighted = k * k * a1 + (k - 1) * (k - 1) * a2;
            let tail = m
                * (pairs_ratio + (vp - 1) * (vp - 1) + l_ratio - 2 * vp * (l_ratio - (vp - 1) / k))
                - 2 * (vp - 1) * (vp - k) / k;
            vec![
                a1,
                a2,
                a3,
                a4,
                avoid - a1 - a3,
                avoid - a1 - a4,
                through - a2,
                through - a2,
                m * (vp - 1) * (vp - 1) - weighted - k * a3 - k * a4,
                base + weighted + k * a3 + (k - 1) * a4,
                base + weighted + (k - 1) * a3 + k * a4,
                m * (l_ratio - 2 * (vp - 1) / (k - 1)) + 2 * (vp - k) / (k - 1) + a2,
                tail - (k * k - 1) * a1 - (k - 1) * (k - 1) * a2 - (k - 1) * a3 - (k - 1) * a4,
            ]
        }
        TripleCase::Block => {
            let [c1, c2, c3, c4] = <[Rational; 4]>::try_from(free).expect("four free counts");
            let off = vp - k * k + k - 1;
            let base = m * (vp - k) * (l_ratio - (k * vp - k * k + k - 1) / (k - 1))
                + (vp - k) * (vp - k) / (k - 1);
            let once = k * (m - 1) * (vp - k) / (k - 1);
            let disjoint = (m - 1) * (vp - k) * off / kk1;
            let weighted = k * k * c1 + (k - 1) * (k - 1) * c2;
            let tail_k = m
                * (1 - k + pairs_ratio + (vp - k) * (vp - k) + k * l_ratio
                    - 2 * vp * (l_ratio - (vp - 1) / k))
                - 2 * (vp - 1) * (vp - k) / k;
            vec![
                c1,
                c2,
                c3,
                c4,
                disjoint - c1 - c3,
                disjoint - c1 - c4,
                once - c2,
                once - c2,
                m * (vp - k) * (vp - k) - weighted - k * c3 - k * c4,
                base + weighted + k * c3 + (k - 1) * c4,
                base + weighted + (k - 1) * c3 + k * c4,
                m * k * (l_ratio - 2 * (vp - k) / (k - 1) - 1) + 2 * k * (vp - k) / (k - 1) + c2,
                tail_k - (k * k - 1) * c1 - (k - 1) * (k - 1) * c2 - (k - 1) * c3 - (k - 1) * c4,
            ]
        }
        TripleCase::Disjoint => {
            let [e1, e2, e3] = <[Rational; 3]>::try_from(free).expect("three free counts");
            let blocks = (m - 1) * vp * (vp - 1) / kk1;
            let base = m * vp * (l_ratio - (k * vp - 1) / (k - 1)) + vp * (vp - k) / (k - 1);
            let tail_0 = m * (pairs_ratio + vp * vp - 2 * vp * (l_ratio - (vp - 1) / k))
                - 2 * (vp - 1) * (vp - k) / k;
            vec![
                e1,
                e2,
                e3,
                blocks - e1 - e2,
                blocks - e1 - e3,
                m * vp * vp - k * k * e1 - k * e2 - k * e3,
                base + k * k * e1 + k * e2 + (k - 1) * e3,
                base + k * k * e1 + (k - 1) * e2 + k * e3,
                tail_0 - (k * k - 1) * e1 - (k - 1) * e2 - (k - 1) * e3,
            ]
        }
    }
}

/// All class means, as functions of the three free means `a1, a2, a3`, for a
/// design in which all three intersection sizes occur.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalMeans {
    pub a: Vec<Rational>,
    pub c: Vec<Rational>,
    pub e: Vec<Rational>,
}

pub fn global_means(p: &WdParams, a1: Rational, a2: Rational, a3: Rational) -> GlobalMeans {
    let (v, k, vp, m) = (p.v, p.k, p.vp, p.m);
    let (ik, i1, i0) = (p.i_k(), p.i_1(), p.i_0());
    let kk1 = k * (k - 1);
    let k2 = k * k;
    let l_ratio = (v - 1) / (vp - 1);
    let pairs_ratio = p.v * (p.v - 1) / (p.vp * (p.vp - 1));

    let a5 = (m - 1) * (vp - 1) * (vp - k) / kk1 - a1 - a3;
    let a7 = (m - 1) * (vp - 1) / (k - 1) - a2;
    let a9 = m * (vp - 1) * (vp - 1) - k2 * a1 - (k - 1) * (k - 1) * a2 - 2 * k * a3;
    let a10 = m * (v - 1 - k * (vp - 1) * (vp - 1) / (k - 1))
        + (vp - 1) * (vp - k) / (k - 1)
        + k2 * a1
        + (k - 1) * (k - 1) * a2
        + (2 * k - 1) * a3;
    let a12 = m * (l_ratio - 2 * (vp - 1) / (k - 1)) + 2 * (vp - k) / (k - 1) + a2;
    let a13 = m * (pairs_ratio + (vp - 1) * (vp - 1) + l_ratio - 2 * vp * (l_ratio - (vp - 1) / k))
        - 2 * (vp - 1) * (vp - k) / k
        - (k2 - 1) * a1
        - (k - 1) * (k - 1) * a2
        - 2 * (k - 1) * a3;
    let a = vec![a1, a2, a3, a3, a5, a5, a7, a7, a9, a10, a10, a12, a13];

    let r = i1 / ik;
    let c1 = (vp - k) / k * (m * (vp - k2) / k + k - 1)
        + r / k2 * (-2 * k * a1 + (k - 1) * (k - 1) * a2 - a3);
    let c2 = k * (m - 1) * (vp - k) / (k - 1) - r * a2;
    let c3 = r * a1;
    let c5 = (m - k) * (vp - k) * (vp - k) / (k2 * (k - 1))
        + r / k2 * (-k * (k - 2) * a1 - (k - 1) * (k - 1) * a2 + a3);
    let c7 = r * a2;
    let c9 = r * a3;
    let c10 = i1 * ((vp - k) / vp - (a1 + a3) / ik);
    let c12 = i1 * (k / vp - a2 / ik);
    let c13 = m
        * (1 - k + pairs_ratio + (vp - k) * (vp - k2) / k2 + k * l_ratio
            - 2 * vp * (l_ratio - (vp - 1) / k))
        - (2 * vp - k - 1) * (vp - k) / k
        + (k - 1) * r / k2 * (2 * k * a1 + (k - 1) * a2 + (k + 1) * a3);
    let c = vec![c1, c2, c3, c3, c5, c5, c7, c7, c9, c10, c10, c12, c13];

    let s = i1 / i0;
    let t = ik / i0;
    let e1 = (m - k) * (vp - k) * (vp - k) * t / (k2 * (k - 1))
        + s / k2 * (-k * (k - 2) * a1 - (k - 1) * (k - 1) * a2 + a3);
    let e2 = s * ((m - 1) * (vp - 1) * (vp - k) / kk1 - a1 - a3);
    let e4 = ik
        * (1 - (vp - k) / i0
            * (m * (l_ratio - (vp - 1) / (k - 1) + (vp - k) / (k2 * (k - 1))) + (vp - k) / k))
        + (k - 1) * s / k2 * (2 * k * a1 + (k - 1) * a2 + (k + 1) * a3);
    let e6 = m * vp * vp
        - k * (vp - k)
            * t
            * (m * (2 * l_ratio - 2 * (vp - 1) / (k - 1) + (vp - k) / kk1) + (vp - k) / (k - 1))
        + s * (k2 * a1 + (k - 1) * (k - 1) * a2 + (2 * k - 1) * a3);
    let e7 = (vp - k) * t * (m * ((2 * k - 1) * l_ratio - 2 * vp + 1) + vp - k)
        + m * vp * (l_ratio - (k * vp - 1) / (k - 1))
        + vp * (vp - k) / (k - 1)
        - (k - 1) * s * ((k + 1) * a1 + (k - 1) * a2 + 2 * a3);
    let e9 = m * (pairs_ratio + vp * vp - 2 * vp * (l_ratio - (vp - 1) / k))
        - 2 * (vp - 1) * (vp - k) / k
        - (k - 1) * (vp - k) * t * (m * (2 * l_ratio - ((2 * k + 1) * vp - k) / k2) + (vp - k) / k)
        + (k - 1) * (k - 1) * s / k2 * (k * (k + 2) * a1 + (k2 - 1) * a2 + (2 * k + 1) * a3);
    let e = vec![e1, e2, e2, e4, e4, e6, e7, e7, e9];

    GlobalMeans { a, c, e }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_parameter_values() {
        let p = WdParams::new(15, 3, 7, 3);
        assert_eq!(p.n(), q(15));
        assert_eq!(p.l(), q(7));
        assert_eq!(p.i_k(), q(14));
        assert_eq!(p.i_1(), q(0));
        assert_eq!(p.i_0(), q(0));
        assert_eq!(p.meets_block_through(), q(6));
        let p = WdParams::new(40, 4, 13, 4);
        assert_eq!((p.n(), p.l(), p.i_k()), (q(40), q(13), q(39)));
        assert_eq!((p.i_1(), p.i_0()), (q(0), q(0)));
    }

    #[test]
    fn connor_closed_forms_on_example15() {
        let s = ConnorSums::closed_form(&WdParams::new(15, 3, 7, 3), TripleCase::Block);
        assert_eq!(s.s1, q(24));
        assert_eq!(s.s2, q(15));
        let s0 = ConnorSums::closed_form(&WdParams::new(15, 3, 7, 3), TripleCase::Disjoint);
        assert_eq!(s0.s2, q(0));
    }

    #[test]
    fn block_case_on_example15() {
        let p = WdParams::new(15, 3, 7, 3);
        let full = dependent_counts(&p, TripleCase::Block, &[q(0), q(12), q(0), q(0)]);
        assert!(full
            .iter()
            .enumerate()
            .all(|(i, &x)| x == if i == 1 { q(12) } else { q(0) }));
    }
}
