//! Koszul complexes in the two regimes that occur in practice.
//!
//! *Symbolic*: ∧*ℤⁿ ⊗ R(T) with differential ι_v for a covector v over the
//! Laurent ring. Cohomology over the Laurent ring is not computed in
//! general; for v = (1 − t₁, …, 1 − tₙ) the complex is a resolution of ℤ and
//! [`generic_rank_exactness`] gives Monte Carlo witnesses of the rank
//! conditions, while [`split_reduction`] peels off identically zero entries.
//!
//! *Datum*: ∧*ℤⁿ ⊗ K for a ℤ/2-graded finitely generated group K with
//! commuting automorphisms β₁,…,βₙ and v_A = Σ (1 − βᵢ) eᵢ*. Everything is
//! integral here and the cohomology is computed exactly by SNF.
//!
//! Spots are indexed by exterior degree j = 0..=n; ∂ⱼ : ∧ʲ → ∧^{j−1}.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroup::{homology_presented, FGAbelianGroup, GradedGroup, IntMatrix, PresentedGroup};
use crate::exterior::{koszul_matrix, koszul_pattern, Covector};
use crate::ring::PolyMatrix;
use crate::{binomial, Error, Parity, Result};

/// A graded endomorphism of K, given on generators of each degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedEndo {
    pub even: IntMatrix,
    pub odd: IntMatrix,
}

impl GradedEndo {
    pub fn new(even: IntMatrix, odd: IntMatrix) -> Self {
        GradedEndo { even, odd }
    }

    pub fn identity(even_gens: usize, odd_gens: usize) -> Self {
        GradedEndo::new(IntMatrix::identity(even_gens), IntMatrix::identity(odd_gens))
    }

    pub fn get(&self, parity: Parity) -> &IntMatrix {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }
}

/// K-theory input: a presented graded group K with n pairwise commuting
/// endomorphisms, each well defined on the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDatum {
    even: PresentedGroup,
    odd: PresentedGroup,
    endos: Vec<GradedEndo>,
}

impl ModuleDatum {
    /// Validates shapes, well-definedness on the quotient and pairwise
    /// commutation (all exact).
    pub fn new(even: PresentedGroup, odd: PresentedGroup, endos: Vec<GradedEndo>) -> Result<Self> {
        let datum = ModuleDatum { even, odd, endos };
        for (i, e) in datum.endos.iter().enumerate() {
            for parity in Parity::BOTH {
                let group = datum.presentation(parity);
                let m = e.get(parity);
                let g = group.generators();
                if m.shape() != (g, g) {
                    return Err(Error::Dimension(format!(
                        "endomorphism {i} on the {parity} group must be {g}x{g}, got {}x{}",
                        m.rows(),
                        m.cols()
                    )));
                }
                if !group.map_is_well_defined(m, group)? {
                    return Err(Error::IllDefined { index: i, parity });
                }
            }
        }
        for i in 0..datum.endos.len() {
            for j in i + 1..datum.endos.len() {
                for parity in Parity::BOTH {
                    let a = datum.endos[i].get(parity);
                    let b = datum.endos[j].get(parity);
                    let comm = a.try_mul(b)?.try_sub(&b.try_mul(a)?)?;
                    if !datum.presentation(parity).kills_columns(&comm) {
                        return Err(Error::NonCommuting {
                            first: i,
                            second: j,
                            parity,
                        });
                    }
                }
            }
        }
        Ok(datum)
    }

    /// K with every βᵢ the identity.
    pub fn trivial_action(even: PresentedGroup, odd: PresentedGroup, n: usize) -> Self {
        let id = GradedEndo::identity(even.generators(), odd.generators());
        ModuleDatum {
            even,
            odd,
            endos: vec![id; n],
        }
    }

    /// Number of endomorphisms (the rank n of the acting group).
    pub fn n(&self) -> usize {
        self.endos.len()
    }

    pub fn presentation(&self, parity: Parity) -> &PresentedGroup {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn endos(&self) -> &[GradedEndo] {
        &self.endos
    }

    pub fn group(&self) -> GradedGroup {
        GradedGroup::new(self.even.group(), self.odd.group())
    }

    /// The same K with only the listed endomorphisms, in that order.
    pub fn select(&self, indices: &[usize]) -> ModuleDatum {
        ModuleDatum {
            even: self.even.clone(),
            odd: self.odd.clone(),
            endos: indices.iter().map(|&i| self.endos[i].clone()).collect(),
        }
    }

    /// Errors unless every βᵢ is an automorphism of K.
    ///
    /// A surjective endomorphism of a finitely generated abelian group is
    /// injective, so it suffices that coker βᵢ = 0.
    pub fn check_automorphisms(&self) -> Result<()> {
        for (i, e) in self.endos.iter().enumerate() {
            for parity in Parity::BOTH {
                let g = self.presentation(parity);
                let coker = crate::abgroup::cokernel_group(g, g, e.get(parity))?;
                if !coker.is_trivial() {
                    return Err(Error::NotAutomorphism { index: i, parity });
                }
            }
        }
        Ok(())
    }
}

/// Koszul complex over the Laurent ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicComplex {
    covector: Covector,
    /// `differentials[j - 1]` is ∂ⱼ.
    differentials: Vec<PolyMatrix>,
}

impl SymbolicComplex {
    pub fn n(&self) -> usize {
        self.covector.len()
    }

    pub fn covector(&self) -> &Covector {
        &self.covector
    }

    /// Rank of the free module ∧ʲ ⊗ R.
    pub fn spot_rank(&self, j: usize) -> usize {
        binomial(self.n(), j)
    }

    /// ∂ⱼ for 1 ≤ j ≤ n.
    pub fn differential(&self, j: usize) -> &PolyMatrix {
        &self.differentials[j - 1]
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    /// Exact check that ∂ⱼ₋₁∂ⱼ = 0 everywhere.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.differentials.windows(2) {
            if !w[0].try_mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether augmentation kills the image of ∂₁, so that it induces a
    /// surjection coker ∂₁ → ℤ (aug(1) = 1).
    pub fn augmentation_descends(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        self.differential(1).augmentation().is_zero()
    }
}

/// Koszul complex ∧*ℤⁿ ⊗ K with differential ι_{v_A}, split by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumComplex {
    n: usize,
    terms: [Vec<PresentedGroup>; 2],
    differentials: [Vec<IntMatrix>; 2],
}

impl DatumComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(parity: Parity) -> usize {
        match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// ∧ʲℤⁿ ⊗ K in the given degree.
    pub fn term(&self, parity: Parity, j: usize) -> &PresentedGroup {
        &self.terms[Self::slot(parity)][j]
    }

    /// ∂ⱼ in the given degree, 1 ≤ j ≤ n.
    pub fn differential(&self, parity: Parity, j: usize) -> &IntMatrix {
        &self.differentials[Self::slot(parity)][j - 1]
    }

    /// ∂ⱼ₋₁∂ⱼ vanishes on the quotient groups.
    pub fn is_complex(&self) -> Result<bool> {
        for parity in Parity::BOTH {
            for j in 2..=self.n {
                let comp = self.differential(parity, j - 1).try_mul(self.differential(parity, j))?;
                if !self.term(parity, j - 2).kills_columns(&comp) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Homology at spot j in one degree.
    pub fn homology(&self, parity: Parity, j: usize) -> Result<FGAbelianGroup> {
        let zero = PresentedGroup::free(0);
        let here = self.term(parity, j);
        let (above, d_in) = if j < self.n {
            (
                self.term(parity, j + 1).clone(),
                self.differential(parity, j + 1).clone(),
            )
        } else {
            (zero.clone(), IntMatrix::zeros(here.generators(), 0))
        };
        let (below, d_out) = if j > 0 {
            (self.term(parity, j - 1).clone(), self.differential(parity, j).clone())
        } else {
            (zero, IntMatrix::zeros(0, here.generators()))
        };
        homology_presented(&above, here, &below, &d_in, &d_out)
    }

    /// Cycles ker ∂ⱼ at spot j (all of the term when j = 0).
    pub fn cycles(&self, parity: Parity, j: usize) -> Result<FGAbelianGroup> {
        let here = self.term(parity, j);
        if j == 0 {
            return Ok(here.group());
        }
        crate::abgroup::kernel_group(here, self.term(parity, j - 1), self.differential(parity, j))
    }
}

/// The two construction modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KoszulComplex {
    Symbolic(SymbolicComplex),
    Datum(DatumComplex),
}

impl KoszulComplex {
    pub fn n(&self) -> usize {
        match self {
            KoszulComplex::Symbolic(c) => c.n(),
            KoszulComplex::Datum(c) => c.n(),
        }
    }

    pub fn is_complex(&self) -> Result<bool> {
        match self {
            KoszulComplex::Symbolic(c) => c.is_complex(),
            KoszulComplex::Datum(c) => c.is_complex(),
        }
    }
}

pub fn build_symbolic(v: &Covector) -> Result<SymbolicComplex> {
    let differentials = (1..=v.len()).map(|j| koszul_matrix(v, j)).collect::<Result<Vec<_>>>()?;
    let complex = SymbolicComplex {
        covector: v.clone(),
        differentials,
    };
    if !complex.is_complex()? {
        return Err(Error::CompositionNonzero);
    }
    Ok(complex)
}

pub fn build_datum(datum: &ModuleDatum) -> Result<DatumComplex> {
    let n = datum.n();
    let mut terms: [Vec<PresentedGroup>; 2] = [Vec::new(), Vec::new()];
    let mut differentials: [Vec<IntMatrix>; 2] = [Vec::new(), Vec::new()];
    for parity in Parity::BOTH {
        let slot = DatumComplex::slot(parity);
        let k = datum.presentation(parity);
        let g = k.generators();
        terms[slot] = (0..=n).map(|j| k.repeat(binomial(n, j))).collect();
        let blocks: Vec<IntMatrix> = datum
            .endos()
            .iter()
            .map(|e| IntMatrix::identity(g).try_sub(e.get(parity)))
            .collect::<Result<_>>()?;
        for j in 1..=n {
            let mut d = IntMatrix::zeros(binomial(n, j - 1) * g, binomial(n, j) * g);
            for e in koszul_pattern(n, j)? {
                let block = if e.sign > 0 {
                    blocks[e.var].clone()
                } else {
                    blocks[e.var].scale(&BigInt::from(-1))
                };
                d.set_block(e.row * g, e.col * g, &block);
            }
            differentials[slot].push(d);
        }
    }
    let complex = DatumComplex {
        n,
        terms,
        differentials,
    };
    if !complex.is_complex()? {
        return Err(Error::CompositionNonzero);
    }
    Ok(complex)
}

/// Cohomology of the datum Koszul complex at spots j = 0..=n.
pub fn datum_cohomology(datum: &ModuleDatum) -> Result<Vec<GradedGroup>> {
    let complex = build_datum(datum)?;
    (0..=complex.n())
        .map(|j| {
            Ok(GradedGroup::new(
                complex.homology(Parity::Even, j)?,
                complex.homology(Parity::Odd, j)?,
            ))
        })
        .collect()
}

/// Counts identically zero entries of `v` and drops them.
///
/// K(v) is the tensor product of K(reduced) with the Koszul complex of the
/// zero covector on z letters, whose differentials vanish. Hence
/// Hⱼ(K(v)) ≅ ⊕ₐ ∧ᵃℤᶻ ⊗ H_{j−a}(K(reduced)); see [`exterior_convolution`].
pub fn split_reduction(v: &Covector) -> (usize, Covector) {
    let kept: Vec<_> = v.entries().iter().filter(|p| !p.is_zero()).cloned().collect();
    let zeros = v.len() - kept.len();
    let reduced = Covector::new(v.nvars(), kept).expect("entries share nvars");
    (zeros, reduced)
}

/// Hⱼ = ⊕ₐ (H_{j−a})^{C(z, a)}: each deleted zero direction raises the
/// exterior degree by one and leaves the K-degree alone.
pub fn exterior_convolution(zeros: usize, reduced: &[GradedGroup]) -> Vec<GradedGroup> {
    let len = reduced.len() + zeros;
    (0..len)
        .map(|j| {
            let mut acc = GradedGroup::trivial();
            for a in 0..=zeros.min(j) {
                if let Some(h) = reduced.get(j - a) {
                    let mult = binomial(zeros, a);
                    acc = acc.direct_sum(&GradedGroup::new(h.even.power(mult), h.odd.power(mult)));
                }
            }
            acc
        })
        .collect()
}

/// Sampling setup for [`generic_rank_exactness`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactnessConfig {
    pub trials: usize,
    pub seed: u64,
    /// Numerators lie in [−bound, bound] ∖ {0}, denominators in [1, bound].
    pub bound: i64,
}

impl Default for ExactnessConfig {
    fn default() -> Self {
        ExactnessConfig {
            trials: 8,
            seed: 0,
            bound: 97,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotWitness {
    pub spot: usize,
    pub module_rank: usize,
    /// Largest observed rank of ∂ⱼ (out of this spot).
    pub rank_out: usize,
    /// Largest observed rank of ∂ⱼ₊₁ (into this spot).
    pub rank_in: usize,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    /// Spots 1..=n; the endpoint ∧⁰ is not expected to be exact.
    pub spots: Vec<SpotWitness>,
    /// Maximum observed rank of ∂ⱼ, j = 1..=n.
    pub max_ranks: Vec<usize>,
    /// Ranks per trial, in trial order.
    pub trial_ranks: Vec<Vec<usize>>,
}

impl ExactnessReport {
    pub fn all_consistent(&self) -> bool {
        self.spots.iter().all(|s| s.consistent)
    }
}

fn sample_point(rng: &mut ChaCha8Rng, nvars: usize, bound: i64) -> Vec<BigRational> {
    (0..nvars)
        .map(|_| loop {
            let mut num = rng.gen_range(-bound..=bound);
            if num == 0 {
                num = 1 + rng.gen_range(0..bound);
            }
            let den = rng.gen_range(1..=bound);
            let x = BigRational::new(num.into(), den.into());
            if !x.is_one() {
                break x;
            }
        })
        .collect()
}

/// Monte Carlo exactness witness for a symbolic Koszul complex.
///
/// Each trial substitutes independent random nonzero rationals (never 1)
/// for the variables and computes ranks over ℚ. A spot j ≥ 1 is consistent
/// when the maximum observed ranks satisfy rank ∂ⱼ + rank ∂ⱼ₊₁ = C(n, j).
///
/// This witnesses exactness after inverting every nonzero element of R;
/// cohomology that is torsion over R (supported on tᵢ = 1) is invisible to
/// it.
pub fn generic_rank_exactness(complex: &SymbolicComplex, config: &ExactnessConfig) -> Result<ExactnessReport> {
    if config.trials < 1 {
        return Err(Error::InvalidTrials);
    }
    if config.bound < 2 {
        return Err(Error::InvalidRange(format!("bound {} < 2", config.bound)));
    }
    let n = complex.n();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trial_ranks = Vec::with_capacity(config.trials);
    for _ in 0..config.trials {
        let point = sample_point(&mut rng, complex.covector().nvars(), config.bound);
        let ranks = complex
            .differentials()
            .iter()
            .map(|d| Ok(d.eval(&point)?.rank()))
            .collect::<Result<Vec<_>>>()?;
        trial_ranks.push(ranks);
    }
    let max_ranks: Vec<usize> = (0..n)
        .map(|k| trial_ranks.iter().map(|r| r[k]).max().unwrap_or(0))
        .collect();
    let spots = (1..=n)
        .map(|j| {
            let rank_out = max_ranks[j - 1];
            let rank_in = if j < n { max_ranks[j] } else { 0 };
            let module_rank = complex.spot_rank(j);
            SpotWitness {
                spot: j,
                module_rank,
                rank_out,
                rank_in,
                consistent: rank_out + rank_in == module_rank,
            }
        })
        .collect();
    Ok(ExactnessReport {
        spots,
        max_ranks,
        trial_ranks,
    })
}

/// Cohomology of the Koszul complex of (1 − t₁, …, 1 − t_k) over
/// ℤ[t₁^{±1},…,t_k^{±1}], as abelian groups: ℤ at spot 0, zero elsewhere.
///
/// The structure theorem for regular sequences is backed by the generic
/// rank witness and the augmentation check; a failed witness is an error.
pub fn resolve_augmentation_sequence(k: usize, config: &ExactnessConfig) -> Result<Vec<GradedGroup>> {
    let v = Covector::augmentation_sequence(k);
    let complex = build_symbolic(&v)?;
    if k > 0 {
        let report = generic_rank_exactness(&complex, config)?;
        if let Some(bad) = report.spots.iter().find(|s| !s.consistent) {
            return Err(Error::NotExact { spot: bad.spot });
        }
        if !complex.augmentation_descends() {
            return Err(Error::NotExact { spot: 0 });
        }
    }
    let mut out = vec![GradedGroup::trivial(); k + 1];
    out[0] = GradedGroup::concentrated(FGAbelianGroup::free(1), Parity::Even);
    Ok(out)
}
