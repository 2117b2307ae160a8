//! Smith normal form over ℤ.
//!
//! Pivot rule: the nonzero entry of least absolute value in the active
//! submatrix, ties broken by row-major position. Row and column operations
//! are mirrored on the transform matrices and on their inverses, so kernels,
//! images and lattice membership all come out of a single reduction.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `M = u · d · v` with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries d₁ | d₂ | ….
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal entries of `d` (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let full = smith(m);
    let mut d = IntMatrix::zeros(m.rows(), m.cols());
    for (i, x) in full.diag.iter().enumerate() {
        d[(i, i)] = x.clone();
    }
    Snf {
        u: full.left_inv,
        d,
        v: full.right_inv,
    }
}

/// Full reduction `left · M · right = D`, with both inverses.
#[derive(Debug, Clone)]
pub(crate) struct SmithFull {
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

impl SmithFull {
    /// Basis of ker M: the columns of `right` past the rank.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.right.cols()).map(|j| self.right.column(j)).collect()
    }

    /// Basis of im M: dᵢ · (column i of `left_inv`) for i < rank.
    pub fn image_basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank)
            .map(|i| self.left_inv.column(i).into_iter().map(|x| x * &self.diag[i]).collect())
            .collect()
    }

    /// Some `w` with `M w = y`, if one exists over ℤ.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let ly = self.left.mul_vec(y);
        let mut z = alloc::vec![BigInt::zero(); self.right.rows()];
        for (i, yi) in ly.iter().enumerate() {
            if i < self.rank {
                let (q, r) = yi.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.right.mul_vec(&z))
    }
}

struct Reducer {
    a: IntMatrix,
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.left.swap_rows(i, j);
        self.left_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.right.swap_cols(i, j);
        self.right_inv.swap_rows(i, j);
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        self.left.add_row_multiple(dst, src, q);
        self.left_inv.add_col_multiple(src, dst, &-q);
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        self.right.add_col_multiple(dst, src, q);
        self.right_inv.add_row_multiple(src, dst, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.left.negate_row(i);
        self.left_inv.negate_col(i);
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

pub(crate) fn smith(m: &IntMatrix) -> SmithFull {
    let (rows, cols) = m.shape();
    let mut r = Reducer {
        a: m.clone(),
        left: IntMatrix::identity(rows),
        left_inv: IntMatrix::identity(rows),
        right: IntMatrix::identity(cols),
        right_inv: IntMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = r.min_pivot(t) {
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let pivot = r.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if r.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &r.a[(i, t)] / &pivot;
                r.add_row(i, t, &-q);
                clean &= r.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if r.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &r.a[(t, j)] / &pivot;
                r.add_col(j, t, &-q);
                clean &= r.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the active block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !r.a[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => r.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if r.a[(t, t)].is_zero() {
            break;
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        rank += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| r.a[(i, i)].clone()).collect();
    SmithFull {
        left: r.left,
        left_inv: r.left_inv,
        right: r.right,
        right_inv: r.right_inv,
        diag,
        rank,
    }
}
