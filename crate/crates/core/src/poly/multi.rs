use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

/// Index pair `(i, j)` of a variable `x_{i,j}`; always `1 <= i <= j`.
pub type VarId = (usize, usize);

/// A power product of the variables `x_{i,j}`, stored as a sorted list of
/// `(variable, exponent)` factors with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Monomial {
        Monomial {
            factors: Vec::new(),
        }
    }

    pub fn var(i: usize, j: usize) -> Result<Monomial> {
        Monomial::from_vars(&[(i, j)])
    }

    /// Builds a monomial from a list of variables with multiplicity, e.g.
    /// the edges of a path.
    pub fn from_vars(vars: &[VarId]) -> Result<Monomial> {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for &(i, j) in vars {
            if i < 1 || i > j {
                return Err(Error::NotUpperTriangular { i, j });
            }
            *map.entry((i, j)).or_insert(0) += 1;
        }
        Ok(Monomial {
            factors: map.into_iter().collect(),
        })
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<VarId, u32> = self.factors.iter().copied().collect();
        for &(v, e) in &other.factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            factors: map.into_iter().collect(),
        }
    }

    /// Renames every `x_{i,j}` to `x_{i+delta,j+delta}`.
    pub fn shift(&self, delta: i64) -> Result<Monomial> {
        let mut factors = Vec::with_capacity(self.factors.len());
        for &((i, j), e) in &self.factors {
            let si = i as i64 + delta;
            let sj = j as i64 + delta;
            if si < 1 {
                return Err(Error::IndexUnderflow { shift: delta });
            }
            factors.push(((si as usize, sj as usize), e));
        }
        Ok(Monomial { factors })
    }

    fn flattened(&self) -> impl Iterator<Item = VarId> + '_ {
        self.factors
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
    }
}

impl Ord for Monomial {
    /// Graded order: by total degree, then lexicographically on the variable
    /// sequence with multiplicity. For path monomials this coincides with
    /// lexicographic order on the underlying vertex chains.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.flattened().cmp(other.flattened()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &((i, j), e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x_{{{i},{j}}}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A multivariate polynomial in the variables `x_{i,j}`, stored sparsely as
/// a map from monomials to nonzero coefficients. Iteration order over terms
/// is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: RingSpec,
    terms: BTreeMap<Monomial, RingElem>,
}

impl MultiPoly {
    pub fn zero(ring: RingSpec) -> MultiPoly {
        MultiPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: RingElem) -> MultiPoly {
        let ring = value.spec();
        MultiPoly::from_terms(ring, [(Monomial::one(), value)]).unwrap()
    }

    pub fn one(ring: RingSpec) -> MultiPoly {
        MultiPoly::constant(RingElem::one(ring))
    }

    pub fn var(ring: RingSpec, i: usize, j: usize) -> Result<MultiPoly> {
        MultiPoly::from_terms(ring, [(Monomial::var(i, j)?, RingElem::one(ring))])
    }

    pub fn from_terms(
        ring: RingSpec,
        terms: impl IntoIterator<Item = (Monomial, RingElem)>,
    ) -> Result<MultiPoly> {
        let mut map: BTreeMap<Monomial, RingElem> = BTreeMap::new();
        for (mono, coeff) in terms {
            if coeff.spec() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: coeff.spec(),
                });
            }
            match map.entry(mono) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&coeff)?;
                    *e.get_mut() = sum;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { ring, terms: map })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RingElem)> {
        self.terms.iter()
    }

    /// The set of variables occurring in some term.
    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect()
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        MultiPoly::from_terms(
            self.ring,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut acc: Vec<(Monomial, RingElem)> = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(mb), ca.mul(cb)?));
            }
        }
        MultiPoly::from_terms(self.ring, acc)
    }

    pub fn scale(&self, factor: &RingElem) -> Result<MultiPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.mul(factor)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(self.ring, terms)
    }

    /// Evaluates by substituting `lookup(v)` for each variable `v`. The
    /// lookup must produce elements of this polynomial's ring.
    pub fn eval_with(&self, lookup: impl Fn(VarId) -> RingElem) -> Result<RingElem> {
        let mut acc = RingElem::zero(self.ring);
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for &(v, e) in mono.factors() {
                let value = lookup(v);
                if value.spec() != self.ring {
                    return Err(Error::RingMismatch {
                        left: self.ring,
                        right: value.spec(),
                    });
                }
                term = term.mul(&value.pow(e))?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Renames every variable `x_{i,j}` to `x_{i+delta,j+delta}`.
    pub fn shift(&self, delta: i64) -> Result<MultiPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.shift(delta)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(self.ring, terms)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_one() {
                write!(f, "{coeff}")?;
            } else if coeff.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}
