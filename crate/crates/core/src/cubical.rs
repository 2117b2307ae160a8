//! Equivariant cellular cochains of ℝⁿ for the decomposition into unit
//! cubes, built from face combinatorics alone.
//!
//! A ℤⁿ-orbit of open faces of the semi-open cube [0,1[ⁿ is determined by
//! its set of free coordinates; the representative has every other
//! coordinate pinned to 0. A boundary face of a representative lies either
//! at the lattice origin or one deck translation away, and that translation
//! becomes a monomial coefficient.
//!
//! Nothing here calls into [`crate::exterior::koszul_matrix`]; the point of
//! [`oracle_compare`] is to check the two constructions against each other.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::exterior::{exterior_basis, koszul_matrix, Covector, ExteriorIndex};
use crate::ring::{ExponentVector, LaurentPoly, PolyMatrix};
use crate::{binomial, Error, Result};

/// An open face of [0,1[ⁿ: free coordinates range over ]0,1[, the rest are 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeFace {
    free: ExteriorIndex,
}

impl CubeFace {
    pub fn new(free: ExteriorIndex) -> Self {
        CubeFace { free }
    }

    pub fn n(&self) -> usize {
        self.free.n()
    }

    pub fn free(&self) -> &ExteriorIndex {
        &self.free
    }

    pub fn dimension(&self) -> usize {
        self.free.degree()
    }
}

/// A face of the cube decomposition of ℝⁿ: an orbit representative moved by
/// a lattice vector.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PlacedFace {
    face: CubeFace,
    offset: Vec<i64>,
}

/// Faces of dimension d in lexicographic order of free sets.
pub fn enumerate_faces(n: usize, d: usize) -> Result<Vec<CubeFace>> {
    Ok(exterior_basis(n, d)?.into_iter().map(CubeFace::new).collect())
}

/// The oriented codimension-one faces of `f` together with the sign each
/// one carries. Position p (0-based) of the free set gives the pair
/// (coordinate 0, coordinate 1) with signs (−1)^p and −(−1)^p.
fn boundary(f: &CubeFace) -> Vec<(i64, PlacedFace)> {
    let n = f.n();
    let mut out = Vec::with_capacity(2 * f.dimension());
    for (p, &s) in f.free.subset().iter().enumerate() {
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let face = CubeFace::new(f.free.without_position(p));
        out.push((
            sign,
            PlacedFace {
                face: face.clone(),
                offset: vec![0; n],
            },
        ));
        let mut offset = vec![0; n];
        offset[s - 1] = 1;
        out.push((-sign, PlacedFace { face, offset }));
    }
    out
}

/// Matrix of the equivariant cochain map from d-face cochains to
/// (d−1)-face cochains over ℤ[t₁^{±1},…,tₙ^{±1}].
///
/// Rows are indexed by (d−1)-faces and columns by d-faces, both in
/// lexicographic order. A boundary face translated by a ∈ ℤⁿ contributes
/// its sign times t^a.
pub fn cellular_differential(n: usize, d: usize) -> Result<PolyMatrix> {
    if d == 0 || d > n {
        return Err(Error::DegreeOutOfRange { degree: d, n });
    }
    let rows = enumerate_faces(n, d - 1)?;
    let cols = enumerate_faces(n, d)?;
    let mut m = PolyMatrix::zeros(rows.len(), cols.len(), n);
    for (c, face) in cols.iter().enumerate() {
        for (sign, placed) in boundary(face) {
            let r = placed.face.free().lex_rank();
            debug_assert_eq!(rows[r], placed.face);
            let term = LaurentPoly::monomial(ExponentVector(placed.offset), sign);
            let entry = m.get(r, c).try_add(&term)?;
            m.set(r, c, entry)?;
        }
    }
    Ok(m)
}

/// Whether a = D_l · b · D_r for some diagonal ±1 matrices.
///
/// Entrywise a_ij = l_i r_j b_ij, so the zero patterns must agree and every
/// nonzero entry fixes l_i r_j. The constraints form a bipartite graph on
/// rows and columns; signs are propagated through each component and any
/// contradiction means no such pair exists.
pub fn sign_equivalent(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() || a.nvars() != b.nvars() {
        return false;
    }
    let (rows, cols) = (a.rows(), a.cols());
    // edge weight +1 if a_ij = b_ij, −1 if a_ij = −b_ij
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); rows + cols];
    for i in 0..rows {
        for j in 0..cols {
            let (x, y) = (a.get(i, j), b.get(i, j));
            let w = if x.is_zero() && y.is_zero() {
                continue;
            } else if x == y {
                1
            } else if *x == y.neg() {
                -1
            } else {
                return false;
            };
            adj[i].push((rows + j, w));
            adj[rows + j].push((i, w));
        }
    }
    let mut sign: Vec<i8> = vec![0; rows + cols];
    let mut queue = VecDeque::new();
    for start in 0..rows + cols {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &(v, w) in &adj[u] {
                let want = sign[u] * w;
                if sign[v] == 0 {
                    sign[v] = want;
                    queue.push_back(v);
                } else if sign[v] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// For every d, the cellular differential equals the Koszul matrix of
/// v = (1−t₁,…,1−tₙ) up to diagonal ±1 changes of basis on each side.
pub fn oracle_compare(n: usize) -> bool {
    let v = Covector::augmentation_sequence(n);
    (1..=n).all(|d| match (cellular_differential(n, d), koszul_matrix(&v, d)) {
        (Ok(c), Ok(k)) => sign_equivalent(&c, &k),
        _ => false,
    })
}

/// Stronger form: one sign vector per degree, shared by the two
/// differentials that touch it, i.e. a chain isomorphism.
///
/// Returns the signs when they exist.
pub fn oracle_compare_coherent(n: usize) -> Option<Vec<Vec<i8>>> {
    let v = Covector::augmentation_sequence(n);
    let mut signs: Vec<Vec<i8>> = (0..=n).map(|d| vec![0; binomial(n, d)]).collect();
    if n == 0 {
        return Some(signs);
    }
    signs[0][0] = 1;
    for d in 1..=n {
        let c = cellular_differential(n, d).ok()?;
        let k = koszul_matrix(&v, d).ok()?;
        // c_ij = s_{d-1}(i) s_d(j) k_ij with s_{d-1} already fixed
        for j in 0..c.cols() {
            for i in 0..c.rows() {
                let (x, y) = (c.get(i, j), k.get(i, j));
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                let w = if x == y {
                    1
                } else if *x == y.neg() {
                    -1
                } else {
                    return None;
                };
                let want = signs[d - 1][i] * w;
                match signs[d][j] {
                    0 => signs[d][j] = want,
                    s if s != want => return None,
                    _ => {}
                }
            }
        }
        if signs[d].contains(&0) {
            return None;
        }
    }
    Some(signs)
}

/// Integer cochain matrices after t ↦ 1: the cellular differentials of the
/// torus quotient ℝⁿ/ℤⁿ with its one-cube CW structure.
pub fn torus_differentials(n: usize) -> Result<Vec<crate::abgroup::IntMatrix>> {
    (1..=n)
        .map(|d| Ok(cellular_differential(n, d)?.augmentation()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::{homology, IntMatrix};

    #[test]
    fn face_enumeration() {
        assert_eq!(enumerate_faces(3, 1).unwrap().len(), 3);
        let origin = enumerate_faces(2, 0).unwrap();
        assert_eq!(origin.len(), 1);
        assert_eq!(origin[0].dimension(), 0);
        assert_eq!(enumerate_faces(5, 2).unwrap().len(), 10);
        assert!(enumerate_faces(2, 3).is_err());
        for n in 1..=8 {
            for i in 1..=n + 1 {
                assert_eq!(enumerate_faces(n, i - 1).unwrap().len(), binomial(n, i - 1));
            }
        }
    }

    #[test]
    fn rank_one_is_one_minus_t() {
        let m = cellular_differential(1, 1).unwrap();
        assert_eq!(m.get(0, 0), &LaurentPoly::one_minus_var(1, 0));
    }

    #[test]
    fn square() {
        // The square's four edges: {1} at x2=0 and x2=1, {2} at x1=0 and x1=1.
        let m = cellular_differential(2, 2).unwrap();
        assert_eq!(m.get(0, 0), &LaurentPoly::one_minus_var(2, 1).neg());
        assert_eq!(m.get(1, 0), &LaurentPoly::one_minus_var(2, 0));
    }

    #[test]
    fn range_errors() {
        assert!(cellular_differential(2, 0).is_err());
        assert!(cellular_differential(2, 3).is_err());
    }

    #[test]
    fn squares_to_zero() {
        for n in 1..=4 {
            for d in 2..=n {
                let a = cellular_differential(n, d - 1).unwrap();
                let b = cellular_differential(n, d).unwrap();
                assert!(a.try_mul(&b).unwrap().is_zero(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn oracle_small() {
        for n in 1..=4 {
            assert!(oracle_compare(n), "n={n}");
            assert!(oracle_compare_coherent(n).is_some(), "n={n}");
        }
    }

    #[test]
    fn sign_equivalence_rejects() {
        let t = |i| LaurentPoly::one_minus_var(2, i);
        let a = PolyMatrix::from_rows(2, vec![vec![t(0), t(1)], vec![t(1), t(0)]]).unwrap();
        // flip a single entry: l₀r₀ = l₀r₁ = l₁r₀ = 1 forces l₁r₁ = 1
        let b = PolyMatrix::from_rows(2, vec![vec![t(0), t(1)], vec![t(1), t(0).neg()]]).unwrap();
        assert!(!sign_equivalent(&a, &b));
        let c = PolyMatrix::from_rows(2, vec![vec![t(0).neg(), t(1)], vec![t(1).neg(), t(0)]]).unwrap();
        assert!(sign_equivalent(&a, &c));
        let z = PolyMatrix::zeros(2, 2, 2);
        assert!(!sign_equivalent(&a, &z));
    }

    #[test]
    fn torus_shadow() {
        for n in 1..=4 {
            let ds = torus_differentials(n).unwrap();
            for d in 0..=n {
                let d_in = if d < n { ds[d].clone() } else { IntMatrix::zeros(1, 0) };
                let d_out = if d > 0 {
                    ds[d - 1].clone()
                } else {
                    IntMatrix::zeros(0, 1)
                };
                let h = homology(&d_in, &d_out).unwrap();
                assert!(h.is_free());
                assert_eq!(h.free_rank(), binomial(n, d));
            }
        }
    }
}
