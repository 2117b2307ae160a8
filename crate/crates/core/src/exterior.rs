//! Exterior powers ∧ʲℤⁿ and interior multiplication by a covector.
//!
//! Basis convention: e_S for S ⊆ {1,…,n} sorted increasingly, with the
//! C(n, j) subsets of size j listed in lexicographic order. Contraction
//! against v = Σ vᵢ eᵢ* is
//!
//! ι_v(e_{s₁} ∧ ⋯ ∧ e_{s_j}) = Σ_p (−1)^{p−1} v_{s_p} · e_{S∖{s_p}}.
//!
//! The sparsity pattern of ι_v does not depend on the coefficient ring, so
//! [`koszul_pattern`] is shared by the Laurent, integer and rational builds.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::binomial;
use crate::ring::{LaurentPoly, PolyMatrix};
use crate::{Error, Result};

/// A basis element e_S of ∧^{|S|}ℤⁿ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExteriorIndex {
    n: usize,
    subset: Vec<usize>,
}

impl ExteriorIndex {
    /// `subset` must be strictly increasing with entries in 1..=n.
    pub fn new(n: usize, subset: Vec<usize>) -> Result<Self> {
        let increasing = subset.windows(2).all(|w| w[0] < w[1]);
        let in_range = subset.iter().all(|&s| (1..=n).contains(&s));
        if !increasing || !in_range {
            return Err(Error::Dimension(format!(
                "{subset:?} is not a strictly increasing subset of 1..={n}"
            )));
        }
        Ok(ExteriorIndex { n, subset })
    }

    pub fn empty(n: usize) -> Self {
        ExteriorIndex { n, subset: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.subset.len()
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// S with its p-th element (0-based) removed.
    pub fn without_position(&self, p: usize) -> ExteriorIndex {
        let mut subset = self.subset.clone();
        subset.remove(p);
        ExteriorIndex { n: self.n, subset }
    }

    /// Position of e_S in `exterior_basis(n, |S|)`.
    pub fn lex_rank(&self) -> usize {
        let j = self.subset.len();
        let mut rank = 0;
        let mut prev = 0;
        for (p, &s) in self.subset.iter().enumerate() {
            for x in prev + 1..s {
                rank += binomial(self.n - x, j - p - 1);
            }
            prev = s;
        }
        rank
    }
}

impl fmt::Display for ExteriorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.subset.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// All size-`j` subsets of {1,…,n} in lexicographic order.
pub fn exterior_basis(n: usize, j: usize) -> Result<Vec<ExteriorIndex>> {
    if j > n {
        return Err(Error::DegreeOutOfRange { degree: j, n });
    }
    let mut out = Vec::with_capacity(binomial(n, j));
    let mut cur: Vec<usize> = (1..=j).collect();
    loop {
        out.push(ExteriorIndex { n, subset: cur.clone() });
        // advance to the next combination
        let Some(i) = (0..j).rev().find(|&i| cur[i] < n - (j - 1 - i)) else {
            break;
        };
        cur[i] += 1;
        for k in i + 1..j {
            cur[k] = cur[k - 1] + 1;
        }
    }
    Ok(out)
}

/// v = Σ vᵢ eᵢ* with Laurent coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covector {
    nvars: usize,
    entries: Vec<LaurentPoly>,
}

impl Covector {
    pub fn new(nvars: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if let Some(p) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::VarMismatch {
                left: nvars,
                right: p.nvars(),
            });
        }
        Ok(Covector { nvars, entries })
    }

    /// (1 − t₁, …, 1 − tₙ) over n variables.
    pub fn augmentation_sequence(n: usize) -> Self {
        Covector {
            nvars: n,
            entries: (0..n).map(|i| LaurentPoly::one_minus_var(n, i)).collect(),
        }
    }

    /// Number of entries (the n of ∧*ℤⁿ).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &LaurentPoly {
        &self.entries[i]
    }
}

/// One nonzero slot of the contraction matrix ∧ʲ → ∧^{j−1}:
/// entry (row, col) is `sign · v[var]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KoszulEntry {
    pub row: usize,
    pub col: usize,
    /// 0-based covector index.
    pub var: usize,
    pub sign: i8,
}

/// Sparsity pattern of ι_v : ∧ʲℤⁿ → ∧^{j−1}ℤⁿ in the lexicographic bases.
pub fn koszul_pattern(n: usize, j: usize) -> Result<Vec<KoszulEntry>> {
    if j == 0 || j > n {
        return Err(Error::DegreeOutOfRange { degree: j, n });
    }
    let mut out = Vec::with_capacity(binomial(n, j) * j);
    for (col, s) in exterior_basis(n, j)?.iter().enumerate() {
        for (p, &sp) in s.subset.iter().enumerate() {
            out.push(KoszulEntry {
                row: s.without_position(p).lex_rank(),
                col,
                var: sp - 1,
                sign: if p % 2 == 0 { 1 } else { -1 },
            });
        }
    }
    Ok(out)
}

/// ι_v(e_S) as a formal sum. Degree 0 contracts to the empty sum.
pub fn interior_mul(v: &Covector, s: &ExteriorIndex) -> Result<Vec<(LaurentPoly, ExteriorIndex)>> {
    if v.len() != s.n {
        return Err(Error::Dimension(format!(
            "covector of length {} against a subset of 1..={}",
            v.len(),
            s.n
        )));
    }
    let mut out = Vec::with_capacity(s.degree());
    for (p, &sp) in s.subset.iter().enumerate() {
        let c = &v.entries[sp - 1];
        let c = if p % 2 == 0 { c.clone() } else { c.neg() };
        if !c.is_zero() {
            out.push((c, s.without_position(p)));
        }
    }
    Ok(out)
}

/// Matrix of ι_v : ∧ʲ ⊗ R → ∧^{j−1} ⊗ R, shape C(n, j−1) × C(n, j).
pub fn koszul_matrix(v: &Covector, j: usize) -> Result<PolyMatrix> {
    let n = v.len();
    let mut m = PolyMatrix::zeros(binomial(n, j.saturating_sub(1)), binomial(n, j), v.nvars());
    for e in koszul_pattern(n, j)? {
        let c = v.entry(e.var);
        m.set(e.row, e.col, if e.sign > 0 { c.clone() } else { c.neg() })?;
    }
    Ok(m)
}
