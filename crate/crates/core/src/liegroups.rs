//! Classical series data and the K-theory of Gₙ/G_k.
//!
//! The representation ring identification R(Tₙ) ⊗_{R(Gₙ)} R(G_k) ≅ R(T_k)
//! is taken as given. Under it the Koszul covector becomes
//! (1−t₁, …, 1−t_k, 0, …, 0) over R(T_k), so the complex splits as the
//! resolution of ℤ by the regular part tensored with ∧ℤ^{n−k}.
//!
//! The small group must be simply connected (Hodgkin); A and C are, and
//! B/D specs are read as Spin groups. This is not checked.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::abgroup::{FGAbelianGroup, GradedGroup};
use crate::exterior::Covector;
use crate::koszul::{
    build_symbolic, exterior_convolution, generic_rank_exactness, resolve_augmentation_sequence, split_reduction,
    ExactnessConfig,
};
use crate::pvtower::{assemble, KernelTerm, SymbolicKernel, TowerReport};
use crate::ring::LaurentPoly;
use crate::{binomial, Error, Parity, Result};

/// Largest rank [`weyl_enumerate`] accepts.
pub const ENUMERATION_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    pub const ALL: [Series; 4] = [Series::A, Series::B, Series::C, Series::D];

    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
        }
    }

    /// Smallest rank for which the series is simple and not a repeat of an
    /// earlier one.
    pub fn min_rank(self) -> usize {
        match self {
            Series::A => 1,
            Series::B => 2,
            Series::C | Series::D => 3,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            _ => Err(Error::InvalidSeries(format!(
                "unknown series {s:?}, expected A, B, C or D"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeriesSpec {
    series: Series,
    rank: usize,
}

impl SeriesSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if rank < series.min_rank() {
            return Err(Error::InvalidSeries(format!(
                "{series}{rank}: rank must be at least {}",
                series.min_rank()
            )));
        }
        Ok(SeriesSpec { series, rank })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// |W| from the closed forms.
pub fn weyl_order(spec: &SeriesSpec) -> u128 {
    let n = spec.rank;
    match spec.series {
        Series::A => factorial(n + 1),
        Series::B | Series::C => (1u128 << n) * factorial(n),
        Series::D => (1u128 << (n - 1)) * factorial(n),
    }
}

/// Simple reflections as signed permutations: `g[i] = ±(j+1)` sends basis
/// vector i to ±e_j.
fn simple_reflections(spec: &SeriesSpec) -> (usize, Vec<Vec<i8>>) {
    let n = spec.rank;
    let letters = if spec.series == Series::A { n + 1 } else { n };
    let identity: Vec<i8> = (1..=letters as i8).collect();
    let transposition = |i: usize| {
        let mut g = identity.clone();
        g.swap(i, i + 1);
        g
    };
    let mut gens: Vec<Vec<i8>> = (0..letters - 1).map(transposition).collect();
    match spec.series {
        Series::A => {}
        Series::B | Series::C => {
            let mut g = identity.clone();
            g[n - 1] = -g[n - 1];
            gens.push(g);
        }
        Series::D => {
            let mut g = transposition(n - 2);
            g[n - 2] = -g[n - 2];
            g[n - 1] = -g[n - 1];
            gens.push(g);
        }
    }
    (letters, gens)
}

fn compose(a: &[i8], b: &[i8]) -> Vec<i8> {
    // (a ∘ b)[i] = a applied to b[i]
    b.iter()
        .map(|&x| {
            let y = a[x.unsigned_abs() as usize - 1];
            if x < 0 {
                -y
            } else {
                y
            }
        })
        .collect()
}

/// |W| by closing the simple reflections under composition.
pub fn weyl_enumerate(spec: &SeriesSpec) -> Result<u128> {
    if spec.rank > ENUMERATION_CAP {
        return Err(Error::RankCap {
            rank: spec.rank,
            cap: ENUMERATION_CAP,
        });
    }
    let (letters, gens) = simple_reflections(spec);
    let identity: Vec<i8> = (1..=letters as i8).collect();
    let mut seen = BTreeSet::new();
    seen.insert(identity.clone());
    let mut work = vec![identity];
    while let Some(g) = work.pop() {
        for s in &gens {
            let h = compose(s, &g);
            if seen.insert(h.clone()) {
                work.push(h);
            }
        }
    }
    Ok(seen.len() as u128)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousKTheory {
    pub group: GradedGroup,
    /// Ranks of the Koszul homology at spots 0..=n.
    pub spot_ranks: Vec<usize>,
}

impl HomogeneousKTheory {
    /// Spots with nonzero homology and their ranks.
    pub fn nonzero_ranks(&self) -> Vec<(usize, usize)> {
        self.spot_ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(i, &r)| (i, r))
            .collect()
    }
}

fn check_pair(big: &SeriesSpec, small: &SeriesSpec) -> Result<()> {
    if big.series != small.series {
        return Err(Error::SeriesMismatch {
            big: big.series.letter(),
            small: small.series.letter(),
        });
    }
    if small.rank >= big.rank {
        return Err(Error::RankOrder {
            big: big.rank,
            small: small.rank,
        });
    }
    Ok(())
}

/// (1−t₁, …, 1−t_k, 0, …, 0) with n entries over R(T_k).
pub fn homogeneous_covector(n: usize, k: usize) -> Covector {
    let entries = (0..n)
        .map(|i| {
            if i < k {
                LaurentPoly::one_minus_var(k, i)
            } else {
                LaurentPoly::zero(k)
            }
        })
        .collect();
    Covector::new(k, entries).expect("entries share nvars")
}

/// Koszul homology of the homogeneous covector, spots 0..=n, all in even
/// K-degree (R(T_k) is K₀ of C*(T_k)).
fn homogeneous_homology(n: usize, k: usize, config: &ExactnessConfig) -> Result<Vec<GradedGroup>> {
    let (zeros, reduced) = split_reduction(&homogeneous_covector(n, k));
    debug_assert_eq!(reduced.len(), k);
    let regular = resolve_augmentation_sequence(reduced.len(), config)?;
    Ok(exterior_convolution(zeros, &regular))
}

/// K*(Gₙ/G_k) = ⊕ᵢ Σⁱ Hᵢ with Hᵢ ≅ ∧ⁱℤ^{n−k}.
pub fn homogeneous_ktheory(
    big: &SeriesSpec,
    small: &SeriesSpec,
    config: &ExactnessConfig,
) -> Result<HomogeneousKTheory> {
    check_pair(big, small)?;
    let h = homogeneous_homology(big.rank, small.rank, config)?;
    let group = h
        .iter()
        .enumerate()
        .fold(GradedGroup::trivial(), |acc, (i, hi)| acc.direct_sum(&hi.shift(i)));
    let spot_ranks = h.iter().map(GradedGroup::total_rank).collect();
    Ok(HomogeneousKTheory { group, spot_ranks })
}

/// The tower for Gₙ/G_k, level by level.
///
/// Kernel terms ker ∂ₘ are submodules of free R(T_k)-modules, hence free
/// abelian of infinite rank; they are recorded by their generic rank over
/// R(T_k), read off the exactness witness.
pub fn homogeneous_tower(big: &SeriesSpec, small: &SeriesSpec, config: &ExactnessConfig) -> Result<TowerReport> {
    check_pair(big, small)?;
    let (n, k) = (big.rank, small.rank);
    let h = homogeneous_homology(n, k, config)?;
    let complex = build_symbolic(&homogeneous_covector(n, k))?;
    let report = generic_rank_exactness(&complex, config)?;
    let mut cycles = vec![KernelTerm::Finite(GradedGroup::trivial())];
    for m in 1..=n {
        let ring_rank = binomial(n, m) - report.max_ranks[m - 1];
        if m == n {
            // nothing maps into the top spot: ker ∂ₙ = Hₙ
            cycles.push(KernelTerm::Finite(h[n].clone()));
        } else {
            cycles.push(KernelTerm::Symbolic(SymbolicKernel {
                spot: m,
                parity: Parity::of(m),
                ring_rank,
                ring_vars: k,
            }));
        }
    }
    Ok(assemble(&h, &cycles))
}

/// Closed form 2^{n−k−1} in each degree.
pub fn homogeneous_closed_form(n: usize, k: usize) -> GradedGroup {
    let r = 1usize << (n - k - 1);
    GradedGroup::new(FGAbelianGroup::free(r), FGAbelianGroup::free(r))
}
