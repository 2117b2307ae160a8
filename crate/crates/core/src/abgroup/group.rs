use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::snf::smith;
use super::IntMatrix;
use crate::{Error, Parity, Result};

/// Isomorphism class of a finitely generated abelian group, stored as
/// ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₘ with dᵢ ≥ 2 and d₁ | d₂ | … | dₘ.
///
/// The form is canonical, so `==` is isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// ℤ/d, with ℤ/0 = ℤ and ℤ/1 = 0.
    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(&[d.into()])
    }

    /// ⊕ ℤ/dᵢ for arbitrary orders (0 meaning ℤ), normalized.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let m = IntMatrix::diagonal(orders);
        Self::from_relation_matrix(&m)
    }

    /// Cokernel of `relations`: ℤ^rows modulo the span of its columns.
    pub fn from_relation_matrix(relations: &IntMatrix) -> Self {
        let full = smith(relations);
        let mut torsion = Vec::new();
        for d in &full.diag[..full.rank] {
            if !d.is_one() {
                torsion.push(d.clone());
            }
        }
        FGAbelianGroup {
            free_rank: relations.rows() - full.rank,
            torsion,
        }
    }

    /// Builds from a free rank and invariant factors that are already
    /// canonical; rejects anything else.
    pub fn from_invariants(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::Parse(format!("invariant factor {d} must be at least 2")));
            }
            if i > 0 && !(d % &torsion[i - 1]).is_zero() {
                return Err(Error::Parse(format!(
                    "invariant factors must form a divisibility chain: {} does not divide {d}",
                    torsion[i - 1]
                )));
            }
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Minimal number of generators.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        if self.is_free() && other.is_free() {
            return Self::free(self.free_rank + other.free_rank);
        }
        let orders: Vec<BigInt> = self
            .torsion
            .iter()
            .chain(&other.torsion)
            .cloned()
            .chain(core::iter::repeat_n(BigInt::zero(), self.free_rank + other.free_rank))
            .collect();
        Self::from_cyclic_orders(&orders)
    }

    /// G^k.
    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::trivial(), |acc, _| acc.direct_sum(self))
    }

    /// The torsion subgroup.
    pub fn torsion_part(&self) -> Self {
        FGAbelianGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for FGAbelianGroup {
    type Err = Error;

    /// Accepts `0`, `Z`, `Z^r`, `Z/d` summands joined by `+`; any summand
    /// list is normalized to canonical form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part == "Z" {
                orders.push(BigInt::zero());
            } else if let Some(r) = part.strip_prefix("Z^") {
                let r: usize = r.parse().map_err(|_| Error::Parse(format!("bad rank in {part:?}")))?;
                orders.extend(core::iter::repeat_n(BigInt::zero(), r));
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad order in {part:?}")))?;
                if !d.is_positive() {
                    return Err(Error::Parse(format!("order must be positive in {part:?}")));
                }
                orders.push(d);
            } else if part == "0" {
            } else {
                return Err(Error::Parse(format!("unrecognized summand {part:?}")));
            }
        }
        Ok(Self::from_cyclic_orders(&orders))
    }
}

/// A ℤ/2-graded abelian group (K₀, K₁).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedGroup {
    pub even: FGAbelianGroup,
    pub odd: FGAbelianGroup,
}

impl GradedGroup {
    pub fn new(even: FGAbelianGroup, odd: FGAbelianGroup) -> Self {
        GradedGroup { even, odd }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// `g` placed in the given degree, zero in the other.
    pub fn concentrated(g: FGAbelianGroup, parity: Parity) -> Self {
        match parity {
            Parity::Even => GradedGroup::new(g, FGAbelianGroup::trivial()),
            Parity::Odd => GradedGroup::new(FGAbelianGroup::trivial(), g),
        }
    }

    pub fn get(&self, parity: Parity) -> &FGAbelianGroup {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn get_mut(&mut self, parity: Parity) -> &mut FGAbelianGroup {
        match parity {
            Parity::Even => &mut self.even,
            Parity::Odd => &mut self.odd,
        }
    }

    /// Σ: swap the two degrees.
    pub fn suspend(&self) -> Self {
        GradedGroup::new(self.odd.clone(), self.even.clone())
    }

    /// Σᵏ.
    pub fn shift(&self, k: usize) -> Self {
        if k.is_multiple_of(2) {
            self.clone()
        } else {
            self.suspend()
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        GradedGroup::new(self.even.direct_sum(&other.even), self.odd.direct_sum(&other.odd))
    }

    pub fn is_trivial(&self) -> bool {
        self.even.is_trivial() && self.odd.is_trivial()
    }

    pub fn is_free(&self) -> bool {
        self.even.is_free() && self.odd.is_free()
    }

    /// rank(even) − rank(odd).
    pub fn euler_characteristic(&self) -> i64 {
        self.even.free_rank() as i64 - self.odd.free_rank() as i64
    }

    pub fn total_rank(&self) -> usize {
        self.even.free_rank() + self.odd.free_rank()
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{even: {}, odd: {}}}", self.even, self.odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(g("Z/2 + Z/3"), g("Z/6"));
        assert_eq!(g("Z/4 + Z/6").to_string(), "Z/2 + Z/12");
        assert_eq!(g("Z/1 + Z + Z^2").to_string(), "Z^3");
        assert_eq!(FGAbelianGroup::cyclic(0), FGAbelianGroup::free(1));
        assert!(FGAbelianGroup::cyclic(1).is_trivial());
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(g("Z^2 + Z/3").to_string(), "Z^2 + Z/3");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("Q".parse::<FGAbelianGroup>().is_err());
        assert!("Z/0".parse::<FGAbelianGroup>().is_err());
        assert!("Z^x".parse::<FGAbelianGroup>().is_err());
        assert!(FGAbelianGroup::from_invariants(0, vec![BigInt::from(4), BigInt::from(6)]).is_err());
        assert!(FGAbelianGroup::from_invariants(0, vec![BigInt::from(1)]).is_err());
    }

    #[test]
    fn suspension() {
        let x = GradedGroup::new(FGAbelianGroup::free(1), FGAbelianGroup::trivial());
        assert_eq!(
            x.suspend(),
            GradedGroup::new(FGAbelianGroup::trivial(), FGAbelianGroup::free(1))
        );
        assert_eq!(x.suspend().suspend(), x);
        let y = GradedGroup::new(g("Z^2"), g("Z/3"));
        assert_eq!(y.suspend(), GradedGroup::new(g("Z/3"), g("Z^2")));
        assert_eq!(y.to_string(), "{even: Z^2, odd: Z/3}");
    }

    #[test]
    fn sums_and_powers() {
        assert_eq!(g("Z/2").power(3).to_string(), "Z/2 + Z/2 + Z/2");
        assert_eq!(g("Z").power(0), FGAbelianGroup::trivial());
        assert_eq!(g("Z/2 + Z").direct_sum(&g("Z/3")).to_string(), "Z + Z/6");
    }
}
