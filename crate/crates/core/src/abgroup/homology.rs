use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::snf::smith;
use super::{FGAbelianGroup, IntMatrix};
use crate::{Error, Result};

/// A finitely presented abelian group ℤ^generators / ⟨columns of relations⟩.
///
/// Maps between presented groups are integer matrices acting on generator
/// coordinates (column vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedGroup {
    generators: usize,
    relations: IntMatrix,
}

impl PresentedGroup {
    pub fn new(relations: IntMatrix) -> Self {
        PresentedGroup {
            generators: relations.rows(),
            relations,
        }
    }

    pub fn free(generators: usize) -> Self {
        PresentedGroup {
            generators,
            relations: IntMatrix::zeros(generators, 0),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn group(&self) -> FGAbelianGroup {
        FGAbelianGroup::from_relation_matrix(&self.relations)
    }

    /// `copies` independent copies of this presentation.
    pub fn repeat(&self, copies: usize) -> Self {
        PresentedGroup {
            generators: self.generators * copies,
            relations: self.relations.block_diag_repeat(copies),
        }
    }

    /// Block presentation of self ⊕ other.
    pub fn direct_sum(&self, other: &PresentedGroup) -> Self {
        let (g, h) = (self.generators, other.generators);
        let mut rel = IntMatrix::zeros(g + h, self.relations.cols() + other.relations.cols());
        rel.set_block(0, 0, &self.relations);
        rel.set_block(g, self.relations.cols(), &other.relations);
        PresentedGroup {
            generators: g + h,
            relations: rel,
        }
    }

    /// Whether every column of `vectors` is zero in the group.
    pub fn kills_columns(&self, vectors: &IntMatrix) -> bool {
        debug_assert_eq!(vectors.rows(), self.generators);
        if vectors.is_zero() {
            return true;
        }
        let full = smith(&self.relations);
        (0..vectors.cols()).all(|j| full.solve(&vectors.column(j)).is_some())
    }

    /// Whether `f`, read on generators, descends to a map out of this group
    /// into `target`.
    pub fn map_is_well_defined(&self, f: &IntMatrix, target: &PresentedGroup) -> Result<bool> {
        check_shape(f, target.generators, self.generators)?;
        let images = f.try_mul(&self.relations)?;
        Ok(target.kills_columns(&images))
    }
}

fn check_shape(f: &IntMatrix, rows: usize, cols: usize) -> Result<()> {
    if f.shape() != (rows, cols) {
        return Err(Error::Dimension(format!(
            "expected a {rows}x{cols} map, got {}x{}",
            f.rows(),
            f.cols()
        )));
    }
    Ok(())
}

/// Homology ker(d_out)/im(d_in) of ℤ^a → ℤ^b → ℤ^c.
///
/// `d_in` is b×a and `d_out` is c×b; their composite must vanish.
pub fn homology(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<FGAbelianGroup> {
    let a = PresentedGroup::free(d_in.cols());
    let b = PresentedGroup::free(d_in.rows());
    let c = PresentedGroup::free(d_out.rows());
    homology_presented(&a, &b, &c, d_in, d_out)
}

/// Homology at the middle of A → B → C for presented groups.
///
/// The kernel lattice K = {x : d_out·x ∈ rel(C)} is found from the integer
/// kernel of `[d_out | rel(C)]`; the subgroup N = im(d_in) + rel(B) is then
/// written in a basis of K and the quotient classified by SNF.
pub fn homology_presented(
    a: &PresentedGroup,
    b: &PresentedGroup,
    c: &PresentedGroup,
    d_in: &IntMatrix,
    d_out: &IntMatrix,
) -> Result<FGAbelianGroup> {
    check_shape(d_in, b.generators, a.generators)?;
    check_shape(d_out, c.generators, b.generators)?;
    if !a.map_is_well_defined(d_in, b)? || !b.map_is_well_defined(d_out, c)? {
        return Err(Error::Dimension("map does not preserve relations".into()));
    }
    if !c.kills_columns(&d_out.try_mul(d_in)?) {
        return Err(Error::CompositionNonzero);
    }

    let gb = b.generators;
    // generators of K
    let stacked = d_out.hstack(&c.relations)?;
    let kernel = smith(&stacked).kernel_basis();
    let k_gens: Vec<Vec<BigInt>> = kernel.into_iter().map(|v| v[..gb].to_vec()).collect();
    let k_span = smith(&IntMatrix::from_columns(gb, &k_gens));
    let basis = k_span.image_basis();
    let basis_mat = IntMatrix::from_columns(gb, &basis);
    let basis_snf = smith(&basis_mat);

    let n_gens = d_in.hstack(&b.relations)?;
    let mut coords = Vec::with_capacity(n_gens.cols());
    for j in 0..n_gens.cols() {
        let y = n_gens.column(j);
        if y.iter().all(Zero::is_zero) {
            continue;
        }
        let z = basis_snf.solve(&y).ok_or(Error::CompositionNonzero)?;
        coords.push(z);
    }
    let quotient = IntMatrix::from_columns(basis.len(), &coords);
    Ok(FGAbelianGroup::from_relation_matrix(&quotient))
}

/// ker(f) for f : A → B.
pub fn kernel_group(a: &PresentedGroup, b: &PresentedGroup, f: &IntMatrix) -> Result<FGAbelianGroup> {
    let zero = PresentedGroup::free(0);
    homology_presented(&zero, a, b, &IntMatrix::zeros(a.generators, 0), f)
}

/// coker(f) for f : A → B.
pub fn cokernel_group(a: &PresentedGroup, b: &PresentedGroup, f: &IntMatrix) -> Result<FGAbelianGroup> {
    let zero = PresentedGroup::free(0);
    homology_presented(a, b, &zero, f, &IntMatrix::zeros(0, b.generators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let h = homology(&m(1, &[vec![2]]), &IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(h.to_string(), "Z/2");
    }

    #[test]
    fn zero_complex() {
        let h = homology(&IntMatrix::zeros(2, 0), &IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(h, FGAbelianGroup::free(2));
    }

    #[test]
    fn koszul_with_unit_entry_is_exact() {
        // v = (1-β, 0) with β = 2: d_in = (-v2, v1)^T = (0, -1)^T, d_out = (v1, v2) = (-1, 0).
        // By hand: ker(d_out) = {(0, y)}, im(d_in) = {(0, -z)}, so H = 0.
        let d_in = m(1, &[vec![0], vec![-1]]);
        let d_out = m(2, &[vec![-1, 0]]);
        assert!(homology(&d_in, &d_out).unwrap().is_trivial());
    }

    #[test]
    fn nonzero_composite_rejected() {
        let e = homology(&m(1, &[vec![1]]), &m(1, &[vec![1]])).unwrap_err();
        assert_eq!(e, Error::CompositionNonzero);
        assert!(homology(&m(1, &[vec![1]]), &m(2, &[vec![1, 1]])).is_err());
    }

    #[test]
    fn presented_terms() {
        // Z/4 --x2--> Z/4 : kernel Z/2, cokernel Z/2
        let z4 = PresentedGroup::new(m(1, &[vec![4]]));
        let two = m(1, &[vec![2]]);
        assert_eq!(kernel_group(&z4, &z4, &two).unwrap().to_string(), "Z/2");
        assert_eq!(cokernel_group(&z4, &z4, &two).unwrap().to_string(), "Z/2");
        // Z --1--> Z/3 is onto with kernel 3Z ≅ Z
        let z = PresentedGroup::free(1);
        let z3 = PresentedGroup::new(m(1, &[vec![3]]));
        let one = m(1, &[vec![1]]);
        assert_eq!(kernel_group(&z, &z3, &one).unwrap(), FGAbelianGroup::free(1));
        assert!(cokernel_group(&z, &z3, &one).unwrap().is_trivial());
        // Z/3 --1--> Z is not a homomorphism
        assert!(kernel_group(&z3, &z, &one).is_err());
    }

    #[test]
    fn redundant_relations() {
        // Z^2 / <(2,0), (0,2), (2,2)> = (Z/2)^2
        let g = PresentedGroup::new(m(3, &[vec![2, 0, 2], vec![0, 2, 2]]));
        assert_eq!(g.group().to_string(), "Z/2 + Z/2");
        let id = IntMatrix::identity(2);
        assert!(kernel_group(&g, &g, &id).unwrap().is_trivial());
        assert_eq!(cokernel_group(&g, &g, &IntMatrix::zeros(2, 2)).unwrap(), g.group());
    }
}
