//! Exact K-theory of crossed products by ℤⁿ and of coactions of compact
//! Hodgkin-Lie groups, computed through Koszul complexes.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact:
//! coefficients are arbitrary-precision integers, evaluations are exact
//! rationals, and abelian groups are classified by Smith normal form.
//!
//! Layout:
//!
//! - [`ring`]: Laurent polynomials ℤ[t₁^{±1},…,tₙ^{±1}] (the representation
//!   ring of a rank-n torus) and matrices over them.
//! - [`exterior`]: exterior-power bases and interior multiplication by a
//!   covector; the Koszul differential matrices.
//! - [`abgroup`]: integer matrices, Smith normal form, finitely generated
//!   abelian groups and homology of complexes of them.
//! - [`koszul`]: Koszul complexes over the Laurent ring and over K-theory
//!   data (a graded group with commuting automorphisms).
//! - [`cubical`]: the equivariant cellular cochain complex of the cube
//!   decomposition of ℝⁿ, used as an independent check of the Koszul maps.
//! - [`pvtower`]: assembly of the Pimsner-Voiculescu tower in K-theory.
//! - [`liegroups`]: classical series data and K-theory of Gₙ/G_k.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod abgroup;
pub mod cubical;
mod error;
pub mod exterior;
pub mod koszul;
pub mod liegroups;
pub mod pvtower;
pub mod ring;

pub use error::{Error, Result};

/// The two degrees of a ℤ/2-graded group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    /// Parity of a suspension exponent.
    pub fn of(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Shift by `k` suspensions.
    pub fn shift(self, k: usize) -> Parity {
        if k.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl core::fmt::Display for Parity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_row() {
        let row: alloc::vec::Vec<usize> = (0..=6).map(|k| binomial(6, k)).collect();
        assert_eq!(row, [1, 6, 15, 20, 15, 6, 1]);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn parity_shift() {
        assert_eq!(Parity::Even.shift(3), Parity::Odd);
        assert_eq!(Parity::Odd.shift(2), Parity::Odd);
        assert_eq!(Parity::of(5), Parity::Odd);
    }
}
