use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

/// The upper triangular positions of an `n x n` matrix in row-major order:
/// `(1,1), (1,2), ..., (1,n), (2,2), ..., (n,n)`.
pub fn upper_positions(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i..=n).map(move |j| (i, j)))
}

/// An `n x n` upper triangular matrix. Only the positions `(i, j)` with
/// `1 <= i <= j <= n` are stored; everything below the diagonal is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UTMatrix {
    n: usize,
    ring: RingSpec,
    entries: Vec<RingElem>, // row-major upper triangle, length n(n+1)/2
}

impl UTMatrix {
    pub fn zero(n: usize, ring: RingSpec) -> UTMatrix {
        assert!(n >= 1, "dimension must be at least 1");
        UTMatrix {
            n,
            ring,
            entries: vec![RingElem::zero(ring); n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize, ring: RingSpec) -> UTMatrix {
        let mut m = UTMatrix::zero(n, ring);
        for i in 1..=n {
            m.set(i, i, RingElem::one(ring)).unwrap();
        }
        m
    }

    /// Builds a matrix from a full square array, rejecting nonzero entries
    /// below the diagonal.
    pub fn from_rows(ring: RingSpec, rows: &[Vec<RingElem>]) -> Result<UTMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadMatrixData("empty matrix".into()));
        }
        let mut m = UTMatrix::zero(n, ring);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (c, v) in row.iter().enumerate() {
                let (i, j) = (r + 1, c + 1);
                if i > j {
                    if !v.is_zero() {
                        return Err(Error::NotUpperTriangular { i, j });
                    }
                } else {
                    m.set(i, j, v.clone())?;
                }
            }
        }
        Ok(m)
    }

    /// Test/CLI convenience: entries coerced from machine integers.
    pub fn from_int_rows(ring: RingSpec, rows: &[&[i64]]) -> Result<UTMatrix> {
        let rows: Vec<Vec<RingElem>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| RingElem::from_i64(ring, v)).collect())
            .collect();
        UTMatrix::from_rows(ring, &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i <= j && j <= self.n);
        let a = i - 1; // rows above contribute n, n-1, ..., n-a+1 slots
        a * self.n - a * a.saturating_sub(1) / 2 + (j - i)
    }

    /// The `(i, j)` entry. Positions below the diagonal or beyond the
    /// dimension read as zero, matching the view of the matrix as a vector
    /// indexed by all of `N x N`.
    pub fn get(&self, i: usize, j: usize) -> RingElem {
        assert!(i >= 1 && j >= 1);
        if i > j || j > self.n {
            return RingElem::zero(self.ring);
        }
        self.entries[self.idx(i, j)].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, value: RingElem) -> Result<()> {
        if i < 1 || j < 1 || i > j {
            return Err(Error::NotUpperTriangular { i, j });
        }
        if j > self.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: j,
            });
        }
        if value.spec() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: value.spec(),
            });
        }
        let k = self.idx(i, j);
        self.entries[k] = value;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElem::is_zero)
    }

    fn check_compatible(&self, other: &UTMatrix) -> Result<()> {
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

    pub fn add(&self, other: &UTMatrix) -> Result<UTMatrix> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(UTMatrix {
            n: self.n,
            ring: self.ring,
            entries,
        })
    }

    pub fn sub(&self, other: &UTMatrix) -> Result<UTMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UTMatrix {
        UTMatrix {
            n: self.n,
            ring: self.ring,
            entries: self.entries.iter().map(RingElem::neg).collect(),
        }
    }

    pub fn mul(&self, other: &UTMatrix) -> Result<UTMatrix> {
        self.check_compatible(other)?;
        let mut out = UTMatrix::zero(self.n, self.ring);
        for (i, j) in upper_positions(self.n) {
            let mut acc = RingElem::zero(self.ring);
            for h in i..=j {
                acc = acc.add(&self.get(i, h).mul(&other.get(h, j))?)?;
            }
            out.set(i, j, acc)?;
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, factor: &RingElem) -> Result<UTMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.mul(factor))
            .collect::<Result<Vec<_>>>()?;
        Ok(UTMatrix {
            n: self.n,
            ring: self.ring,
            entries,
        })
    }

    /// `C^k` by iterated multiplication; `C^0` is the identity.
    pub fn pow(&self, k: usize) -> UTMatrix {
        let mut acc = UTMatrix::identity(self.n, self.ring);
        for _ in 0..k {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// All powers `C^0, ..., C^d`, computed once and shared by substitution.
    pub fn powers(&self, d: usize) -> Vec<UTMatrix> {
        let mut pows = Vec::with_capacity(d + 1);
        pows.push(UTMatrix::identity(self.n, self.ring));
        for k in 1..=d {
            pows.push(pows[k - 1].mul(self).unwrap());
        }
        pows
    }

    /// `C^{[h,j]}`: zeros every entry whose row or column index lies outside
    /// the interval `[h, j]`.
    pub fn restrict(&self, h: usize, j: usize) -> Result<UTMatrix> {
        if h < 1 || h > j || j > self.n {
            return Err(Error::BadInterval { h, j, n: self.n });
        }
        let mut out = UTMatrix::zero(self.n, self.ring);
        for (r, c) in upper_positions(self.n) {
            if r >= h && c <= j {
                out.set(r, c, self.get(r, c))?;
            }
        }
        Ok(out)
    }

    /// Entry-wise reduction of an integer matrix modulo `m`.
    pub fn reduce_mod(&self, m: u64) -> Result<UTMatrix> {
        let ring = RingSpec::modular(m)?;
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                RingElem::Int(z) => RingElem::int_to_mod(z, m),
                other => Err(Error::RingMismatch {
                    left: RingSpec::Integers,
                    right: other.spec(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(UTMatrix {
            n: self.n,
            ring,
            entries,
        })
    }

    /// The explicit embedding of an integer matrix into the rationals.
    pub fn to_rationals(&self) -> Result<UTMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                RingElem::Int(z) => Ok(RingElem::int_to_rat(z)),
                other => Err(Error::RingMismatch {
                    left: RingSpec::Integers,
                    right: other.spec(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(UTMatrix {
            n: self.n,
            ring: RingSpec::Rationals,
            entries,
        })
    }

    /// The full `n x n` array including the zero positions below the diagonal.
    pub fn rows(&self) -> Vec<Vec<RingElem>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl fmt::Display for UTMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 1..=self.n {
            if i > 1 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 1..=self.n {
                if j > 1 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
