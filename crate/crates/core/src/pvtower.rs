//! The Pimsner–Voiculescu tower in K-theory.
//!
//! For a ℤⁿ-action with K-theory datum K = K_*(A) and automorphisms βᵢ, the
//! tower is a chain F₀ = Y₀ → Y₁ → … → Yₙ = A⋊ℤⁿ whose successive cones are
//! Σᵐ(∧ᵐℤⁿ ⊗ A). In K-theory each triangle gives a short exact sequence
//!
//! ```text
//! 0 → coker(δₘ) → K(Yₘ) → ker(δₘ) → 0
//! ```
//!
//! and the connecting map δₘ restricts to the Koszul differential ∂ₘ. With
//! Hᵢ the Koszul homology at ∧ⁱ and Zₘ = ker ∂ₘ this yields
//!
//! ```text
//! K(Yₘ) = Σᵐ Zₘ ⊕ ⊕_{i<m} Σⁱ Hᵢ,     K(A⋊ℤⁿ) = ⊕ᵢ Σⁱ Hᵢ
//! ```
//!
//! up to the extension at each step. The split representative is returned;
//! when the kernel term Zₘ has torsion the extension is not forced to split
//! and the level carries a flag.
//!
//! The tower object D_l sits at m = n − l.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::abgroup::{cokernel_group, kernel_group, smith, GradedGroup, IntMatrix, PresentedGroup};
use crate::koszul::{build_datum, GradedEndo, ModuleDatum};
use crate::{binomial, Error, Parity, Result};

/// What a tower object is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectKind {
    /// ℂ^{w·kᵢ} ⊗ A (or ⊗ t(A) in the dual tower).
    Coefficient {
        k_index: usize,
    },
    /// Σⁿ D_l(A).
    DTerm {
        index: usize,
    },
    CrossedProduct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerObject {
    pub kind: ObjectKind,
    /// Raw suspension exponent; only its parity matters in K-theory.
    pub suspension: usize,
    pub multiplicity: usize,
    pub label: String,
}

impl TowerObject {
    pub fn parity(&self) -> Parity {
        Parity::of(self.suspension)
    }
}

/// An arrow between objects (indices into [`TowerShape::objects`]).
/// `degree_one` marks the connecting maps ΣX → Y drawn with a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerArrow {
    pub from: usize,
    pub to: usize,
    pub degree_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerShape {
    pub n: usize,
    pub w: usize,
    pub dual: bool,
    pub objects: Vec<TowerObject>,
    pub arrows: Vec<TowerArrow>,
}

impl TowerShape {
    /// Coefficient objects in order of suspension 0..=n.
    pub fn coefficients(&self) -> Vec<&TowerObject> {
        let mut c: Vec<&TowerObject> = self
            .objects
            .iter()
            .filter(|o| matches!(o.kind, ObjectKind::Coefficient { .. }))
            .collect();
        c.sort_by_key(|o| o.suspension);
        c
    }

    pub fn coefficient_multiplicities(&self) -> Vec<usize> {
        self.coefficients().iter().map(|o| o.multiplicity).collect()
    }
}

fn power_label(base: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => format!("{base} "),
        e => format!("{base}^{e} "),
    }
}

/// Objects and arrows of the tower for a rank-n group with Weyl order w.
///
/// The top row is ℂ^w ⊗ A → ΣⁿD_{n−1}(A) → … → ΣⁿD₁(A) → t(A⋊Ĝ); below
/// the arrow leaving the m-th top object hangs Σᵐℂ^{w·kᵢ} ⊗ A with
/// kᵢ = C(n, i−1) and i = n + 1 − m. The dual tower uses t(A) as
/// coefficient and ends in A⋊Ĝ.
pub fn tower_shape(n: usize, w: usize, dual: bool) -> Result<TowerShape> {
    if n == 0 || w == 0 {
        return Err(Error::InvalidRange(format!(
            "tower needs n >= 1 and w >= 1, got n={n}, w={w}"
        )));
    }
    let coeff = if dual { "t(A)" } else { "A" };
    let d = if dual { "D~" } else { "D" };
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    // top row: index m ↦ Yₘ; Y₀ is the first coefficient object
    let mut top = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let obj = if m == 0 {
            TowerObject {
                kind: ObjectKind::Coefficient { k_index: n + 1 },
                suspension: 0,
                multiplicity: w,
                label: format!("C^{w} ⊗ {coeff}"),
            }
        } else if m < n {
            let l = n - m;
            TowerObject {
                kind: ObjectKind::DTerm { index: l },
                suspension: n,
                multiplicity: 1,
                label: format!("{}{d}_{l}({coeff})", power_label("Σ", n)),
            }
        } else {
            TowerObject {
                kind: ObjectKind::CrossedProduct,
                suspension: 0,
                multiplicity: 1,
                label: if dual { "A ⋊ Ĝ".into() } else { "t(A ⋊ Ĝ)".into() },
            }
        };
        top.push(objects.len());
        objects.push(obj);
    }
    for m in 1..=n {
        arrows.push(TowerArrow {
            from: top[m - 1],
            to: top[m],
            degree_one: false,
        });
    }
    for m in 1..=n {
        let k_index = n + 1 - m;
        let mult = w * binomial(n, k_index - 1);
        let idx = objects.len();
        objects.push(TowerObject {
            kind: ObjectKind::Coefficient { k_index },
            suspension: m,
            multiplicity: mult,
            label: format!("{}C^{mult} ⊗ {coeff}", power_label("Σ", m)),
        });
        arrows.push(TowerArrow {
            from: top[m],
            to: idx,
            degree_one: false,
        });
        arrows.push(TowerArrow {
            from: idx,
            to: top[m - 1],
            degree_one: true,
        });
    }
    Ok(TowerShape {
        n,
        w,
        dual,
        objects,
        arrows,
    })
}

/// A kernel term Σᵐ ker ∂ₘ that is not finitely generated (Koszul
/// complexes over a Laurent ring); recorded by its rank over the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicKernel {
    pub spot: usize,
    pub parity: Parity,
    pub ring_rank: usize,
    pub ring_vars: usize,
}

impl fmt::Display for SymbolicKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ker(d_{}) in {} degree, free of rank {} over Z[",
            self.spot, self.parity, self.ring_rank
        )?;
        for i in 1..=self.ring_vars {
            if i > 1 {
                f.write_str(", ")?;
            }
            write!(f, "t{i}^±1")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    /// l in D_l.
    pub level: usize,
    /// Finitely generated part (the whole group for K-theory data).
    pub group: GradedGroup,
    pub symbolic: Option<SymbolicKernel>,
    pub ambiguity: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub n: usize,
    /// D_l for l = n−1 down to 1.
    pub levels: Vec<TowerLevel>,
    pub final_group: GradedGroup,
    pub final_ambiguity: Option<String>,
}

impl TowerReport {
    pub fn flags(&self) -> Vec<String> {
        self.levels
            .iter()
            .filter_map(|l| l.ambiguity.clone())
            .chain(self.final_ambiguity.clone())
            .collect()
    }

    pub fn is_ambiguous(&self) -> bool {
        self.levels.iter().any(|l| l.ambiguity.is_some()) || self.final_ambiguity.is_some()
    }
}

/// Input of the assembly: Koszul homology Hᵢ (i = 0..=n) and kernel terms
/// Zₘ (m = 1..=n; `cycles[0]` is ignored).
pub(crate) enum KernelTerm {
    Finite(GradedGroup),
    Symbolic(SymbolicKernel),
}

pub(crate) fn assemble(homology: &[GradedGroup], cycles: &[KernelTerm]) -> TowerReport {
    let n = homology.len() - 1;
    let mut lower = GradedGroup::trivial();
    let mut levels = Vec::with_capacity(n.saturating_sub(1));
    let mut final_group = homology[0].clone();
    let mut final_ambiguity = None;
    for m in 1..=n {
        // coker of δₘ into K(Y_{m−1}) replaces Σ^{m−1}Z_{m−1} by Σ^{m−1}H_{m−1}
        lower = lower.direct_sum(&homology[m - 1].shift(m - 1));
        let name = if m < n {
            format!("level {}", n - m)
        } else {
            "final".into()
        };
        let (group, symbolic, ambiguity) = match &cycles[m] {
            KernelTerm::Finite(z) => {
                let z = z.shift(m);
                let flag = (!z.is_free())
                    .then(|| format!("{name}: kernel term {z} has torsion; extension by {lower} is not determined"));
                (lower.direct_sum(&z), None, flag)
            }
            KernelTerm::Symbolic(k) => (lower.clone(), Some(k.clone()), None),
        };
        if m < n {
            levels.push(TowerLevel {
                level: n - m,
                group,
                symbolic,
                ambiguity,
            });
        } else {
            final_group = group;
            final_ambiguity = ambiguity;
        }
    }
    TowerReport {
        n,
        levels,
        final_group,
        final_ambiguity,
    }
}

/// K_*(A⋊ℤ) from one automorphism: K₀ ⊇ coker(1−β | K₀(A)) with quotient
/// ker(1−β | K₁(A)), and symmetrically for K₁.
///
/// Returns the split representative and a flag when a kernel term has
/// torsion.
pub fn pv_rank1(datum: &ModuleDatum) -> Result<(GradedGroup, Option<String>)> {
    if datum.n() != 1 {
        return Err(Error::EndoCount {
            expected: 1,
            got: datum.n(),
        });
    }
    datum.check_automorphisms()?;
    let beta = &datum.endos()[0];
    let mut coker = GradedGroup::trivial();
    let mut ker = GradedGroup::trivial();
    for parity in Parity::BOTH {
        let g = datum.presentation(parity);
        let f = IntMatrix::identity(g.generators()).try_sub(beta.get(parity))?;
        *coker.get_mut(parity) = cokernel_group(g, g, &f)?;
        *ker.get_mut(parity) = kernel_group(g, g, &f)?;
    }
    let ker = ker.suspend();
    let flag = (!ker.is_free())
        .then(|| format!("final: kernel term {ker} has torsion; extension by {coker} is not determined"));
    Ok((coker.direct_sum(&ker), flag))
}

/// K-theory of the crossed product and of every tower level.
pub fn pv_tower(datum: &ModuleDatum) -> Result<TowerReport> {
    datum.check_automorphisms()?;
    let complex = build_datum(datum)?;
    let n = datum.n();
    let mut homology = Vec::with_capacity(n + 1);
    let mut cycles = Vec::with_capacity(n + 1);
    for j in 0..=n {
        homology.push(GradedGroup::new(
            complex.homology(Parity::Even, j)?,
            complex.homology(Parity::Odd, j)?,
        ));
        cycles.push(KernelTerm::Finite(GradedGroup::new(
            complex.cycles(Parity::Even, j)?,
            complex.cycles(Parity::Odd, j)?,
        )));
    }
    Ok(assemble(&homology, &cycles))
}

/// ker f on ℤᵍ/R as a presented group, with each endomorphism in `induce`
/// restricted to it. The generators are a basis of {x : f x ∈ R}.
fn kernel_presentation(
    g: &PresentedGroup,
    f: &IntMatrix,
    induce: &[&IntMatrix],
) -> Result<(PresentedGroup, Vec<IntMatrix>)> {
    let gens = g.generators();
    let stacked = f.hstack(g.relations())?;
    let lattice: Vec<Vec<BigInt>> = smith(&stacked)
        .kernel_basis()
        .into_iter()
        .map(|v| v[..gens].to_vec())
        .collect();
    let basis = smith(&IntMatrix::from_columns(gens, &lattice)).image_basis();
    let b = IntMatrix::from_columns(gens, &basis);
    let coords = smith(&b);
    let express = |m: &IntMatrix| -> Result<IntMatrix> {
        let cols = (0..m.cols())
            .map(|j| {
                coords
                    .solve(&m.column(j))
                    .ok_or_else(|| Error::Dimension("vector outside the kernel lattice".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(basis.len(), &cols))
    };
    let relations = express(g.relations())?;
    let maps = induce
        .iter()
        .map(|beta| express(&beta.try_mul(&b)?))
        .collect::<Result<Vec<_>>>()?;
    Ok((PresentedGroup::new(relations), maps))
}

/// One rank-1 step: the crossed product by the `index`-th automorphism, as
/// a new datum carrying the remaining automorphisms on the split
/// representative coker(1−β) ⊕ Σ ker(1−β).
pub fn pv_step(datum: &ModuleDatum, index: usize) -> Result<(ModuleDatum, Option<String>)> {
    datum.check_automorphisms()?;
    let beta = &datum.endos()[index];
    let rest: Vec<&GradedEndo> = datum
        .endos()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, e)| e)
        .collect();
    let mut cokers = Vec::new();
    let mut kernels = Vec::new();
    for parity in Parity::BOTH {
        let g = datum.presentation(parity);
        let f = IntMatrix::identity(g.generators()).try_sub(beta.get(parity))?;
        let coker = PresentedGroup::new(g.relations().hstack(&f)?);
        let induce: Vec<&IntMatrix> = rest.iter().map(|e| e.get(parity)).collect();
        let (ker, ker_maps) = kernel_presentation(g, &f, &induce)?;
        cokers.push((coker, induce.iter().map(|m| (*m).clone()).collect::<Vec<_>>()));
        kernels.push((ker, ker_maps));
    }
    // even' = coker(even) ⊕ ker(odd), odd' = coker(odd) ⊕ ker(even)
    let mut flag = None;
    let mut parts = Vec::new();
    for (c, k) in [(0, 1), (1, 0)] {
        let (cg, cm) = &cokers[c];
        let (kg, km) = &kernels[k];
        if !kg.group().is_free() && flag.is_none() {
            flag = Some(format!(
                "step {index}: kernel term {} has torsion; extension by {} is not determined",
                kg.group(),
                cg.group()
            ));
        }
        let group = cg.direct_sum(kg);
        let maps: Vec<IntMatrix> = cm
            .iter()
            .zip(km)
            .map(|(a, b)| {
                let mut m = IntMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                m
            })
            .collect();
        parts.push((group, maps));
    }
    let (odd, odd_maps) = parts.pop().expect("two parities");
    let (even, even_maps) = parts.pop().expect("two parities");
    let endos = even_maps
        .into_iter()
        .zip(odd_maps)
        .map(|(e, o)| GradedEndo::new(e, o))
        .collect();
    Ok((ModuleDatum::new(even, odd, endos)?, flag))
}

/// Applies [`pv_step`] once per automorphism, in the given order of
/// original indices. Returns the final group and whether any step raised
/// a flag.
pub fn iterated_pv(datum: &ModuleDatum, order: &[usize]) -> Result<(GradedGroup, bool)> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..datum.n()).collect::<Vec<_>>() {
        return Err(Error::InvalidRange(format!(
            "{order:?} is not a permutation of 0..{}",
            datum.n()
        )));
    }
    let mut current = datum.clone();
    let mut remaining: Vec<usize> = (0..datum.n()).collect();
    let mut flagged = false;
    for &i in order {
        let pos = remaining.iter().position(|&r| r == i).expect("checked permutation");
        let (next, flag) = pv_step(&current, pos)?;
        remaining.remove(pos);
        flagged |= flag.is_some();
        current = next;
    }
    Ok((current.group(), flagged))
}

/// rank(even) − rank(odd) summed with sign (−1)ⁱ over Koszul homology.
pub fn koszul_euler_characteristic(homology: &[GradedGroup]) -> i64 {
    homology
        .iter()
        .enumerate()
        .map(|(i, h)| {
            if i % 2 == 0 {
                h.euler_characteristic()
            } else {
                -h.euler_characteristic()
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::datum_cohomology;
    use alloc::string::ToString;
    use alloc::vec;

    fn mat(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).unwrap()
    }

    fn datum(even: PresentedGroup, odd: PresentedGroup, endos: Vec<(IntMatrix, IntMatrix)>) -> ModuleDatum {
        ModuleDatum::new(
            even,
            odd,
            endos.into_iter().map(|(a, b)| GradedEndo::new(a, b)).collect(),
        )
        .unwrap()
    }

    fn free_rank_pair(g: &GradedGroup) -> (usize, usize) {
        (g.even.free_rank(), g.odd.free_rank())
    }

    fn torus(n: usize) -> ModuleDatum {
        ModuleDatum::trivial_action(PresentedGroup::free(1), PresentedGroup::free(0), n)
    }

    #[test]
    fn rank_one_examples() {
        let rot = ModuleDatum::trivial_action(PresentedGroup::free(1), PresentedGroup::free(1), 1);
        let (g, flag) = pv_rank1(&rot).unwrap();
        assert_eq!(g.to_string(), "{even: Z^2, odd: Z^2}");
        assert!(flag.is_none());

        let (g, flag) = pv_rank1(&torus(1)).unwrap();
        assert_eq!(g.to_string(), "{even: Z, odd: Z}");
        assert!(flag.is_none());

        let swap = datum(
            PresentedGroup::free(2),
            PresentedGroup::free(0),
            vec![(mat(2, &[vec![0, 1], vec![1, 0]]), IntMatrix::identity(0))],
        );
        let (g, _) = pv_rank1(&swap).unwrap();
        assert_eq!(g.to_string(), "{even: Z, odd: Z}");
    }

    #[test]
    fn rank_one_errors() {
        assert_eq!(
            pv_rank1(&torus(2)).unwrap_err(),
            Error::EndoCount { expected: 1, got: 2 }
        );
        let double = datum(
            PresentedGroup::free(1),
            PresentedGroup::free(0),
            vec![(mat(1, &[vec![2]]), IntMatrix::identity(0))],
        );
        assert!(matches!(pv_rank1(&double), Err(Error::NotAutomorphism { .. })));
        assert!(matches!(pv_tower(&double), Err(Error::NotAutomorphism { .. })));
    }

    #[test]
    fn torsion_kernel_is_flagged() {
        // K = Z/4, β = −1: coker Z/2 in even, ker Z/2 moves to odd
        let d = datum(
            PresentedGroup::new(mat(1, &[vec![4]])),
            PresentedGroup::free(0),
            vec![(mat(1, &[vec![-1]]), IntMatrix::identity(0))],
        );
        let (g, flag) = pv_rank1(&d).unwrap();
        assert_eq!(g.to_string(), "{even: Z/2, odd: Z/2}");
        assert!(flag.unwrap().contains("Z/2"));
        let t = pv_tower(&d).unwrap();
        assert!(t.is_ambiguous());
        assert_eq!(t.final_group, g);
    }

    #[test]
    fn torus_two() {
        let t = pv_tower(&torus(2)).unwrap();
        assert_eq!(t.final_group.to_string(), "{even: Z^2, odd: Z^2}");
        assert_eq!(t.levels.len(), 1);
        assert_eq!(t.levels[0].level, 1);
        // Y₁ = H₀ ⊕ Σ Z₁ = Z ⊕ Σ Z²
        assert_eq!(t.levels[0].group.to_string(), "{even: Z, odd: Z^2}");
        assert!(!t.is_ambiguous());
    }

    #[test]
    fn rank_one_tower_agrees() {
        let d = datum(
            PresentedGroup::free(2),
            PresentedGroup::free(1),
            vec![(mat(2, &[vec![2, 1], vec![1, 1]]), mat(1, &[vec![-1]]))],
        );
        let t = pv_tower(&d).unwrap();
        let (g, flag) = pv_rank1(&d).unwrap();
        assert_eq!(t.final_group, g);
        assert_eq!(t.final_ambiguity.is_some(), flag.is_some());
        assert!(t.levels.is_empty());
    }

    #[test]
    fn torus_iterated() {
        for n in 1..=4 {
            let d = torus(n);
            let t = pv_tower(&d).unwrap();
            let order: Vec<usize> = (0..n).collect();
            let (g, flagged) = iterated_pv(&d, &order).unwrap();
            assert!(!flagged);
            assert_eq!(t.final_group, g);
            let half = 1 << (n - 1);
            assert_eq!(free_rank_pair(&g), (half, half));
        }
    }

    #[test]
    fn level_formula() {
        let d = datum(
            PresentedGroup::free(2),
            PresentedGroup::free(1),
            vec![
                (mat(2, &[vec![0, 1], vec![1, 0]]), IntMatrix::identity(1)),
                (IntMatrix::identity(2), mat(1, &[vec![-1]])),
                (mat(2, &[vec![0, 1], vec![1, 0]]), mat(1, &[vec![-1]])),
            ],
        );
        let t = pv_tower(&d).unwrap();
        let c = build_datum(&d).unwrap();
        let h = datum_cohomology(&d).unwrap();
        for lvl in &t.levels {
            let m = 3 - lvl.level;
            let z = GradedGroup::new(c.cycles(Parity::Even, m).unwrap(), c.cycles(Parity::Odd, m).unwrap());
            let mut expect = z.shift(m);
            for (i, hi) in h.iter().enumerate().take(m) {
                expect = expect.direct_sum(&hi.shift(i));
            }
            assert_eq!(lvl.group, expect, "level {}", lvl.level);
        }
        assert_eq!(t.final_group.euler_characteristic(), koszul_euler_characteristic(&h));
    }

    #[test]
    fn pv_step_induces_actions() {
        let d = datum(
            PresentedGroup::free(2),
            PresentedGroup::free(0),
            vec![
                (mat(2, &[vec![0, 1], vec![1, 0]]), IntMatrix::identity(0)),
                (mat(2, &[vec![-1, 0], vec![0, -1]]), IntMatrix::identity(0)),
            ],
        );
        let (next, flag) = pv_step(&d, 0).unwrap();
        assert!(flag.is_none());
        assert_eq!(next.n(), 1);
        // coker(1 − swap) = Z in even, ker(1 − swap) = Z(1,1) in odd
        assert_eq!(next.group().to_string(), "{even: Z, odd: Z}");
        assert!(iterated_pv(&d, &[0, 0]).is_err());
    }

    #[test]
    fn shapes() {
        let s = tower_shape(1, 1, false).unwrap();
        assert_eq!(s.coefficient_multiplicities(), [1, 1]);
        assert_eq!(
            s.objects
                .iter()
                .filter(|o| o.kind == ObjectKind::CrossedProduct)
                .count(),
            1
        );
        let s = tower_shape(2, 2, false).unwrap();
        assert_eq!(s.coefficient_multiplicities(), [2, 4, 2]);
        let s = tower_shape(1, 2, true).unwrap();
        let labels: Vec<&str> = s.objects.iter().map(|o| o.label.as_str()).collect();
        assert_eq!(labels, ["C^2 ⊗ t(A)", "A ⋊ Ĝ", "Σ C^2 ⊗ t(A)"]);
        assert!(tower_shape(0, 1, false).is_err());
        let s = tower_shape(3, 1, false).unwrap();
        assert_eq!(s.objects[1].label, "Σ^3 D_2(A)");
        assert_eq!(s.arrows.iter().filter(|a| a.degree_one).count(), 3);
    }
}
