#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use pv_core::abgroup::{IntMatrix, PresentedGroup};
use pv_core::koszul::{GradedEndo, ModuleDatum};

pub fn mat(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(cols, rows).unwrap()
}

/// Product of elementary matrices: unimodular by construction.
pub fn unimodular(g: usize, ops: &[(usize, usize, i64)], flips: &[bool]) -> IntMatrix {
    let mut m = IntMatrix::identity(g);
    if g == 0 {
        return m;
    }
    for &(i, j, q) in ops {
        let (i, j) = (i % g, j % g);
        if i == j {
            continue;
        }
        let mut e = IntMatrix::identity(g);
        e.set_block(i, j, &mat(1, &[vec![q]]));
        m = e.try_mul(&m).unwrap();
    }
    for (i, &f) in flips.iter().enumerate().take(g) {
        if f {
            let mut e = IntMatrix::identity(g);
            e.set_block(i, i, &mat(1, &[vec![-1]]));
            m = e.try_mul(&m).unwrap();
        }
    }
    m
}

/// Mᵃ for a ≥ 0 (negative exponents are folded to a sign: (−M)ᵃ).
pub fn power(m: &IntMatrix, a: i64) -> IntMatrix {
    let mut out = IntMatrix::identity(m.rows());
    for _ in 0..a.unsigned_abs() {
        out = out.try_mul(m).unwrap();
    }
    if a < 0 {
        out = out.scale(&BigInt::from(-1));
    }
    out
}

/// Description of a random datum whose automorphisms are signed powers of
/// one unimodular matrix per degree, so they commute on the nose.
#[derive(Debug, Clone)]
pub struct CommutingSpec {
    pub even_gens: usize,
    pub odd_gens: usize,
    /// 0 for free; otherwise every generator has this order.
    pub even_order: i64,
    pub odd_order: i64,
    pub even_ops: Vec<(usize, usize, i64)>,
    pub odd_ops: Vec<(usize, usize, i64)>,
    pub even_flips: Vec<bool>,
    pub odd_flips: Vec<bool>,
    pub exponents: Vec<(i64, i64)>,
}

impl CommutingSpec {
    pub fn datum(&self) -> ModuleDatum {
        let group = |g: usize, d: i64| {
            if d == 0 {
                PresentedGroup::free(g)
            } else {
                PresentedGroup::new(IntMatrix::scalar(g, d))
            }
        };
        let me = unimodular(self.even_gens, &self.even_ops, &self.even_flips);
        let mo = unimodular(self.odd_gens, &self.odd_ops, &self.odd_flips);
        let endos = self
            .exponents
            .iter()
            .map(|&(a, b)| GradedEndo::new(power(&me, a), power(&mo, b)))
            .collect();
        ModuleDatum::new(
            group(self.even_gens, self.even_order),
            group(self.odd_gens, self.odd_order),
            endos,
        )
        .unwrap()
    }
}

pub fn commuting_spec(max_n: usize) -> impl Strategy<Value = CommutingSpec> {
    let ops = || prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..4);
    let flips = || prop::collection::vec(any::<bool>(), 3);
    (
        1usize..=2,
        0usize..=2,
        prop::sample::select(vec![0i64, 0, 2, 3, 4]),
        prop::sample::select(vec![0i64, 0, 2, 6]),
        ops(),
        ops(),
        flips(),
        flips(),
        prop::collection::vec((-2i64..=2, -2i64..=2), 1..=max_n),
    )
        .prop_map(|(eg, og, eo, oo, e_ops, o_ops, ef, of, exps)| CommutingSpec {
            even_gens: eg,
            odd_gens: og,
            even_order: eo,
            odd_order: oo,
            even_ops: e_ops,
            odd_ops: o_ops,
            even_flips: ef,
            odd_flips: of,
            exponents: exps,
        })
}

/// All permutations of 0..n (n ≤ 3 in practice).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
