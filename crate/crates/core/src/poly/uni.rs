use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

/// A univariate polynomial with a dense coefficient sequence `(f_0, ..., f_d)`.
///
/// The highest stored coefficient is always nonzero; the zero polynomial is
/// the empty sequence and its degree is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    ring: RingSpec,
    coeffs: Vec<RingElem>,
}

impl UniPoly {
    pub fn zero(ring: RingSpec) -> UniPoly {
        UniPoly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(value: RingElem) -> UniPoly {
        let ring = value.spec();
        UniPoly::from_coeffs(ring, vec![value]).unwrap()
    }

    /// The monomial `x^k` with coefficient one.
    pub fn x_pow(ring: RingSpec, k: usize) -> UniPoly {
        let mut coeffs = vec![RingElem::zero(ring); k + 1];
        coeffs[k] = RingElem::one(ring);
        UniPoly::from_coeffs(ring, coeffs).unwrap()
    }

    pub fn from_coeffs(ring: RingSpec, coeffs: Vec<RingElem>) -> Result<UniPoly> {
        for c in &coeffs {
            if c.spec() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: c.spec(),
                });
            }
        }
        let mut p = UniPoly { ring, coeffs };
        p.trim();
        Ok(p)
    }

    /// Convenience constructor from machine integers, coerced into `ring`.
    pub fn from_ints(ring: RingSpec, coeffs: &[i64]) -> UniPoly {
        let coeffs = coeffs
            .iter()
            .map(|&v| RingElem::from_i64(ring, v))
            .collect();
        UniPoly::from_coeffs(ring, coeffs).unwrap()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RingElem::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The `k`-th coefficient, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> RingElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| RingElem::zero(self.ring))
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    fn check_same(&self, other: &UniPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_same(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k).add(&other.coeff(k))?);
        }
        UniPoly::from_coeffs(self.ring, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> Result<UniPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        let coeffs = self.coeffs.iter().map(RingElem::neg).collect();
        UniPoly {
            ring: self.ring,
            coeffs,
        }
    }

    pub fn mul(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero(self.ring));
        }
        let mut coeffs =
            vec![RingElem::zero(self.ring); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        UniPoly::from_coeffs(self.ring, coeffs)
    }

    pub fn scale(&self, factor: &RingElem) -> Result<UniPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(factor))
            .collect::<Result<Vec<_>>>()?;
        UniPoly::from_coeffs(self.ring, coeffs)
    }

    /// Evaluation by the substitution homomorphism of the commutative ring.
    pub fn eval(&self, r: &RingElem) -> Result<RingElem> {
        if r.spec() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: r.spec(),
            });
        }
        let mut acc = RingElem::zero(self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(r)?.add(c)?;
        }
        Ok(acc)
    }

    /// Writes a rational polynomial as `g/d` with `d` the least common
    /// multiple of the coefficient denominators and `g` over the integers.
    pub fn clear_denominators(&self) -> Result<(BigInt, UniPoly)> {
        if self.ring != RingSpec::Rationals {
            return Err(Error::RingMismatch {
                left: RingSpec::Rationals,
                right: self.ring,
            });
        }
        let mut d = BigInt::one();
        for c in &self.coeffs {
            if let RingElem::Rat(q) = c {
                d = d.lcm(q.denom());
            }
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                RingElem::Rat(q) => {
                    let scaled = q * BigRational::from_integer(d.clone());
                    debug_assert!(scaled.denom().is_one());
                    RingElem::Int(scaled.to_integer())
                }
                _ => unreachable!(),
            })
            .collect();
        Ok((d, UniPoly::from_coeffs(RingSpec::Integers, coeffs)?))
    }

    /// Coefficient-wise reduction of an integer polynomial modulo `m`.
    pub fn reduce_mod(&self, m: u64) -> Result<UniPoly> {
        if self.ring != RingSpec::Integers {
            return Err(Error::RingMismatch {
                left: RingSpec::Integers,
                right: self.ring,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                RingElem::Int(z) => RingElem::int_to_mod(z, m),
                _ => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        UniPoly::from_coeffs(RingSpec::modular(m)?, coeffs)
    }

    /// The explicit embedding of an integer polynomial into the rationals.
    pub fn to_rationals(&self) -> Result<UniPoly> {
        if self.ring != RingSpec::Integers {
            return Err(Error::RingMismatch {
                left: RingSpec::Integers,
                right: self.ring,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                RingElem::Int(z) => RingElem::int_to_rat(z),
                _ => unreachable!(),
            })
            .collect();
        UniPoly::from_coeffs(RingSpec::Rationals, coeffs)
    }
}

fn coeff_sign_split(c: &RingElem) -> (bool, RingElem) {
    match c {
        RingElem::Int(z) if z.is_negative() => (true, RingElem::Int(-z)),
        RingElem::Rat(q) if q.is_negative() => (true, RingElem::Rat(-q)),
        _ => (false, c.clone()),
    }
}

impl fmt::Display for UniPoly {
    /// Descending powers in the same grammar the parser accepts:
    /// `c`, `c*x^k`, `x^k`, `x`, joined by `+`/`-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = coeff_sign_split(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}
