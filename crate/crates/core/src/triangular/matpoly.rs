use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::ring::{RingElem, RingSpec};
use crate::triangular::matrix::{upper_positions, UTMatrix};

/// A polynomial `f = F_0 + F_1 x + ... + F_d x^d` with upper triangular
/// matrix coefficients. The highest stored coefficient matrix is nonzero.
///
/// The coefficient-sequence view stored here and the matrix-of-polynomials
/// view produced by [`phi`] are interchangeable; substitution iterates
/// coefficients while membership checking iterates entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPoly {
    n: usize,
    ring: RingSpec,
    coeffs: Vec<UTMatrix>,
}

impl MatrixPoly {
    pub fn zero(n: usize, ring: RingSpec) -> MatrixPoly {
        MatrixPoly {
            n,
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(n: usize, ring: RingSpec, coeffs: Vec<UTMatrix>) -> Result<MatrixPoly> {
        for c in &coeffs {
            if c.n() != n {
                return Err(Error::DimMismatch {
                    left: n,
                    right: c.n(),
                });
            }
            if c.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: c.ring(),
                });
            }
        }
        let mut p = MatrixPoly { n, ring, coeffs };
        p.trim();
        Ok(p)
    }

    /// Lifts a scalar-coefficient polynomial: each `f_k` becomes `f_k * I`.
    pub fn from_scalar(f: &UniPoly, n: usize) -> MatrixPoly {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| UTMatrix::identity(n, f.ring()).scalar_mul(c).unwrap())
            .collect();
        MatrixPoly::from_coeffs(n, f.ring(), coeffs).unwrap()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(UTMatrix::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> UTMatrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| UTMatrix::zero(self.n, self.ring))
    }

    pub fn coeffs(&self) -> &[UTMatrix] {
        &self.coeffs
    }

    fn check_same(&self, other: &MatrixPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.check_same(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k).add(&other.coeff(k))?);
        }
        MatrixPoly::from_coeffs(self.n, self.ring, coeffs)
    }

    pub fn neg(&self) -> MatrixPoly {
        MatrixPoly {
            n: self.n,
            ring: self.ring,
            coeffs: self.coeffs.iter().map(UTMatrix::neg).collect(),
        }
    }

    pub fn sub(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.add(&other.neg())
    }

    /// Product in `(T_n(R))[x]`; coefficient order matters since the
    /// coefficient ring is noncommutative.
    pub fn mul(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MatrixPoly::zero(self.n, self.ring));
        }
        let mut coeffs =
            vec![UTMatrix::zero(self.n, self.ring); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        MatrixPoly::from_coeffs(self.n, self.ring, coeffs)
    }

    pub fn scalar_mul(&self, factor: &RingElem) -> Result<MatrixPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.scalar_mul(factor))
            .collect::<Result<Vec<_>>>()?;
        MatrixPoly::from_coeffs(self.n, self.ring, coeffs)
    }

    /// Right substitution `f(C) = sum_k F_k C^k`.
    pub fn subst_right(&self, c: &UTMatrix) -> Result<UTMatrix> {
        self.check_matrix(c)?;
        let pows = c.powers(self.coeffs.len().saturating_sub(1));
        let mut acc = UTMatrix::zero(self.n, self.ring);
        for (k, fk) in self.coeffs.iter().enumerate() {
            acc = acc.add(&fk.mul(&pows[k])?)?;
        }
        Ok(acc)
    }

    /// Left substitution `f(C)_l = sum_k C^k F_k`.
    pub fn subst_left(&self, c: &UTMatrix) -> Result<UTMatrix> {
        self.check_matrix(c)?;
        let pows = c.powers(self.coeffs.len().saturating_sub(1));
        let mut acc = UTMatrix::zero(self.n, self.ring);
        for (k, fk) in self.coeffs.iter().enumerate() {
            acc = acc.add(&pows[k].mul(fk)?)?;
        }
        Ok(acc)
    }

    fn check_matrix(&self, c: &UTMatrix) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: c.n(),
            });
        }
        if c.ring() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: c.ring(),
            });
        }
        Ok(())
    }

    /// Writes a rational matrix polynomial as `g/d` with `d` the least
    /// common multiple of all entry denominators and `g` over the integers.
    pub fn clear_denominators(&self) -> Result<(BigInt, MatrixPoly)> {
        if self.ring != RingSpec::Rationals {
            return Err(Error::RingMismatch {
                left: RingSpec::Rationals,
                right: self.ring,
            });
        }
        let mut d = BigInt::one();
        for fk in &self.coeffs {
            for (i, j) in upper_positions(self.n) {
                if let RingElem::Rat(q) = fk.get(i, j) {
                    d = d.lcm(q.denom());
                }
            }
        }
        let factor = RingElem::int_to_rat(&d);
        let coeffs = self
            .coeffs
            .iter()
            .map(|fk| {
                let scaled = fk.scalar_mul(&factor)?;
                let mut out = UTMatrix::zero(self.n, RingSpec::Integers);
                for (i, j) in upper_positions(self.n) {
                    match scaled.get(i, j) {
                        RingElem::Rat(q) => {
                            debug_assert!(q.denom().is_one());
                            out.set(i, j, RingElem::Int(q.to_integer()))?;
                        }
                        _ => unreachable!(),
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((
            d,
            MatrixPoly::from_coeffs(self.n, RingSpec::Integers, coeffs)?,
        ))
    }

    /// Coefficient-wise reduction of an integer matrix polynomial modulo `m`.
    pub fn reduce_mod(&self, m: u64) -> Result<MatrixPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce_mod(m))
            .collect::<Result<Vec<_>>>()?;
        MatrixPoly::from_coeffs(self.n, RingSpec::modular(m)?, coeffs)
    }

    /// The explicit embedding of an integer matrix polynomial into `Q`.
    pub fn to_rationals(&self) -> Result<MatrixPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(UTMatrix::to_rationals)
            .collect::<Result<Vec<_>>>()?;
        MatrixPoly::from_coeffs(self.n, RingSpec::Rationals, coeffs)
    }
}

/// An upper triangular matrix of univariate polynomials: the image of a
/// [`MatrixPoly`] under the coefficient-transpose isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    ring: RingSpec,
    entries: Vec<UniPoly>, // row-major upper triangle
}

impl PolyMatrix {
    pub fn zero(n: usize, ring: RingSpec) -> PolyMatrix {
        assert!(n >= 1);
        PolyMatrix {
            n,
            ring,
            entries: vec![UniPoly::zero(ring); n * (n + 1) / 2],
        }
    }

    /// Builds from a full square array of polynomials; entries in strictly
    /// lower positions must be zero.
    pub fn from_rows(ring: RingSpec, rows: &[Vec<UniPoly>]) -> Result<PolyMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadMatrixData("empty matrix".into()));
        }
        let mut m = PolyMatrix::zero(n, ring);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (c, p) in row.iter().enumerate() {
                let (i, j) = (r + 1, c + 1);
                if i > j {
                    if !p.is_zero() {
                        return Err(Error::NotUpperTriangular { i, j });
                    }
                } else {
                    m.set(i, j, p.clone())?;
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i <= j && j <= self.n);
        let a = i - 1;
        a * self.n - a * a.saturating_sub(1) / 2 + (j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> UniPoly {
        assert!(i >= 1 && j >= 1 && i <= self.n && j <= self.n);
        if i > j {
            return UniPoly::zero(self.ring);
        }
        self.entries[self.idx(i, j)].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, p: UniPoly) -> Result<()> {
        if i < 1 || i > j {
            return Err(Error::NotUpperTriangular { i, j });
        }
        if j > self.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: j,
            });
        }
        if p.ring() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: p.ring(),
            });
        }
        let k = self.idx(i, j);
        self.entries[k] = p;
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        let mut out = PolyMatrix::zero(self.n, self.ring);
        for (i, j) in upper_positions(self.n) {
            out.set(i, j, self.get(i, j).add(&other.get(i, j))?)?;
        }
        Ok(out)
    }

    /// Matrix product in `T_n(R[x])`.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        let mut out = PolyMatrix::zero(self.n, self.ring);
        for (i, j) in upper_positions(self.n) {
            let mut acc = UniPoly::zero(self.ring);
            for h in i..=j {
                acc = acc.add(&self.get(i, h).mul(&other.get(h, j))?)?;
            }
            out.set(i, j, acc)?;
        }
        Ok(out)
    }

    fn check_same(&self, other: &PolyMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }
}

/// The coefficient transpose `(T_n(R))[x] -> T_n(R[x])`: the `(i,j)` entry
/// of the image is `sum_k [F_k]_{ij} x^k`.
pub fn phi(f: &MatrixPoly) -> PolyMatrix {
    let mut out = PolyMatrix::zero(f.n(), f.ring());
    for (i, j) in upper_positions(f.n()) {
        let coeffs: Vec<RingElem> = f.coeffs().iter().map(|fk| fk.get(i, j)).collect();
        out.set(i, j, UniPoly::from_coeffs(f.ring(), coeffs).unwrap())
            .unwrap();
    }
    out
}

/// Inverse of [`phi`]: collects the `k`-th coefficients of all entries into
/// the coefficient matrix `F_k`.
pub fn phi_inv(m: &PolyMatrix) -> MatrixPoly {
    let n = m.n();
    let ring = m.ring();
    let max_len = upper_positions(n)
        .map(|(i, j)| m.get(i, j).coeffs().len())
        .max()
        .unwrap_or(0);
    let mut coeffs = Vec::with_capacity(max_len);
    for k in 0..max_len {
        let mut fk = UTMatrix::zero(n, ring);
        for (i, j) in upper_positions(n) {
            fk.set(i, j, m.get(i, j).coeff(k)).unwrap();
        }
        coeffs.push(fk);
    }
    MatrixPoly::from_coeffs(n, ring, coeffs).unwrap()
}

/// Substitution of a matrix into a scalar-coefficient polynomial:
/// `sum_k f_k C^k` with each `f_k` acting as a scalar multiple of the
/// identity. Right and left substitution agree here since scalars are
/// central.
pub fn scalar_subst(f: &UniPoly, c: &UTMatrix) -> Result<UTMatrix> {
    if f.ring() != c.ring() {
        return Err(Error::RingMismatch {
            left: f.ring(),
            right: c.ring(),
        });
    }
    let pows = c.powers(f.coeffs().len().saturating_sub(1));
    let mut acc = UTMatrix::zero(c.n(), c.ring());
    for (k, fk) in f.coeffs().iter().enumerate() {
        acc = acc.add(&pows[k].scalar_mul(fk)?)?;
    }
    Ok(acc)
}
