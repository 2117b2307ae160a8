//! Laurent polynomials over ℤ, modelling R(T) ≅ ℤ[t₁^{±1},…,tₙ^{±1}].
//!
//! A [`LaurentPoly`] is a finite map from exponent vectors to nonzero
//! integer coefficients. The map is a `BTreeMap`, so terms are kept in
//! lexicographic order of their exponent vectors; printing and equality are
//! therefore canonical.
//!
//! Every value carries its variable count and binary operations check it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abgroup::IntMatrix;
use crate::{Error, Result};

/// Exponents of a monomial t₁^{a₁}⋯tₙ^{aₙ}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    /// The exponent vector of the single variable `t_{var+1}`.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    /// `c · t^exps`.
    pub fn monomial(exps: ExponentVector, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `t_{var+1}` (variables are 0-based in code, 1-based in text).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, var), 1)
    }

    /// `1 − t_{var+1}`.
    pub fn one_minus_var(nvars: usize, var: usize) -> Self {
        let mut p = Self::one(nvars);
        p.add_term(ExponentVector::unit(nvars, var), BigInt::from(-1));
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VarMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            p.add_term(ExponentVector(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &ExponentVector) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Constant term if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, exps: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Sum of all coefficients: the augmentation tᵢ ↦ 1.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact value at a point with nonzero rational coordinates.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if let Some(i) = point.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate(i));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = BigRational::from_integer(c.clone());
            for (x, &a) in point.iter().zip(&e.0) {
                m *= pow_rational(x, a);
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Parses the text form written by `Display`, e.g. `1 - t1 + 3*t1^-2*t2`.
    ///
    /// Variables are `t1`..`tn`; a bare `t` is accepted as `t1`. Repeated
    /// factors multiply.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut p = Self::zero(nvars);
        for (sign, body) in split_signed_terms(&compact)? {
            let (exps, c) = parse_monomial(body, nvars)?;
            p.add_term(exps, c * sign);
        }
        Ok(p)
    }
}

fn pow_rational(x: &BigRational, a: i64) -> BigRational {
    let base = if a < 0 { x.recip() } else { x.clone() };
    let mut out = BigRational::one();
    for _ in 0..a.unsigned_abs() {
        out *= &base;
    }
    out
}

fn split_signed_terms(s: &str) -> Result<Vec<(i32, &str)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut sign = 1;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        start = 1;
    }
    let mut i = start;
    while i < bytes.len() {
        let b = bytes[i];
        // a sign right after '^' belongs to the exponent
        if (b == b'+' || b == b'-') && i > 0 && bytes[i - 1] != b'^' {
            if i == start {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            out.push((sign, &s[start..i]));
            sign = if b == b'-' { -1 } else { 1 };
            start = i + 1;
        }
        i += 1;
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((sign, &s[start..]));
    Ok(out)
}

fn parse_monomial(body: &str, nvars: usize) -> Result<(ExponentVector, BigInt)> {
    let mut exps = vec![0i64; nvars];
    let mut coeff = BigInt::one();
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {body:?}")));
        }
        if factor.as_bytes()[0].is_ascii_digit() {
            let c: BigInt = factor
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
            coeff *= c;
            continue;
        }
        let rest = factor
            .strip_prefix('t')
            .ok_or_else(|| Error::Parse(format!("unexpected factor {factor:?}")))?;
        let (idx, pow) = match rest.split_once('^') {
            Some((i, p)) => {
                let p: i64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (i, p)
            }
            None => (rest, 1),
        };
        let var = if idx.is_empty() {
            1
        } else {
            idx.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad variable in {factor:?}")))?
        };
        if var == 0 || var > nvars {
            return Err(Error::Parse(format!(
                "variable t{var} out of range for {nvars} variables"
            )));
        }
        exps[var - 1] += pow;
    }
    Ok((ExponentVector(exps), coeff))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut first = true;
            if e.is_zero() || !mag.is_one() {
                write!(f, "{mag}")?;
                first = false;
            }
            for (i, &a) in e.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if a == 1 {
                    write!(f, "t{}", i + 1)?;
                } else {
                    write!(f, "t{}^{}", i + 1, a)?;
                }
            }
        }
        Ok(())
    }
}

/// Matrix of Laurent polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![LaurentPoly::zero(nvars); rows * cols],
        }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, nvars);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p)?;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) -> Result<()> {
        if p.nvars() != self.nvars {
            return Err(Error::VarMismatch {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        self.entries[i * self.cols + j] = p;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = out.entries[idx].try_add(&a.try_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Entrywise evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<RatMatrix> {
        let entries = self.entries.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entrywise augmentation (every tᵢ ↦ 1).
    pub fn augmentation(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).augmentation();
            }
        }
        m
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

/// Dense rational matrix, produced by evaluating a [`PolyMatrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    /// Rank over ℚ by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
            let pivot = a[rank * cols + col].clone();
            for r in rank + 1..rows {
                let x = &a[r * cols + col];
                if x.is_zero() {
                    continue;
                }
                let factor = x / &pivot;
                for j in col..cols {
                    let sub = &factor * &a[rank * cols + j];
                    a[r * cols + j] -= sub;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("1 - t", 1).try_add(&p("1 + t", 1)).unwrap(), p("2", 1));
        let x = p("3*t1^2*t2^-1 - 7", 2);
        assert_eq!(x.try_add(&LaurentPoly::zero(2)).unwrap(), x);
        assert_eq!(p("1 - t1", 2).try_add(&p("t1 - t2", 2)).unwrap(), p("1 - t2", 2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("1 - t", 1).try_mul(&p("1 + t", 1)).unwrap(), p("1 - t^2", 1));
        assert_eq!(p("1 - t", 1).try_mul(&p("t^-1", 1)).unwrap(), p("t^-1 - 1", 1));
        assert_eq!(
            p("1 - t1", 2).try_mul(&p("1 - t2", 2)).unwrap(),
            p("1 - t1 - t2 + t1*t2", 2)
        );
    }

    #[test]
    fn mismatched_vars_rejected() {
        let err = LaurentPoly::one(1).try_add(&LaurentPoly::one(2)).unwrap_err();
        assert_eq!(err, Error::VarMismatch { left: 1, right: 2 });
        assert!(LaurentPoly::one(3).try_mul(&LaurentPoly::one(2)).is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("1 - t", 1).eval(&[q(2, 1)]).unwrap(), q(-1, 1));
        assert_eq!(p("t1*t2^-1", 2).eval(&[q(3, 1), q(2, 1)]).unwrap(), q(3, 2));
        let x = p("5*t1^-3*t2 - 2*t2^4 + 1", 2);
        assert_eq!(
            x.eval(&[q(1, 1), q(1, 1)]).unwrap(),
            BigRational::from_integer(x.augmentation())
        );
        assert_eq!(x.eval(&[q(1, 1), q(0, 1)]).unwrap_err(), Error::ZeroCoordinate(1));
        assert!(matches!(
            x.eval(&[q(1, 1)]),
            Err(Error::PointLength { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(p("1 - t", 1).augmentation(), BigInt::zero());
        assert_eq!(p("3*t1^2*t2^-1", 2).augmentation(), BigInt::from(3));
        assert_eq!(LaurentPoly::zero(4).augmentation(), BigInt::zero());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(LaurentPoly::one_minus_var(1, 0).to_string(), "1 - t1");
        assert_eq!(p("t^-1 - 1", 1).to_string(), "t1^-1 - 1");
        assert_eq!(p("-2*t2 + t1*t2^3 + 0", 2).to_string(), "-2*t2 + t1*t2^3");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        assert_eq!(p("t1*t1 - t1^2", 2).to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!(LaurentPoly::parse("", 1).is_err());
        assert!(LaurentPoly::parse("1 +", 1).is_err());
        assert!(LaurentPoly::parse("t3", 2).is_err());
        assert!(LaurentPoly::parse("t0", 2).is_err());
        assert!(LaurentPoly::parse("x1", 2).is_err());
        assert!(LaurentPoly::parse("2**t1", 2).is_err());
    }

    #[test]
    fn poly_matrix_product_and_eval() {
        let a = PolyMatrix::from_rows(1, vec![vec![p("1 - t", 1), p("t", 1)]]).unwrap();
        let b = PolyMatrix::from_rows(1, vec![vec![p("t", 1)], vec![p("t - 1", 1)]]).unwrap();
        assert!(a.try_mul(&b).unwrap().is_zero());
        let e = a.eval(&[q(3, 1)]).unwrap();
        assert_eq!(e.get(0, 0), &q(-2, 1));
        assert_eq!(e.rank(), 1);
        assert_eq!(a.to_string(), "[1 - t1, t1]");
        assert!(a.try_mul(&a).is_err());
    }

    #[test]
    fn rational_rank() {
        let m = RatMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(0, 1)],
            vec![q(1, 1), q(2, 3), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(5, 7)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(RatMatrix::from_rows(vec![]).rank(), 0);
    }
}
