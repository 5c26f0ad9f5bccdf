//! Exact commutative-ring arithmetic for the three supported coefficient
//! rings: arbitrary-precision integers, rationals in canonical form, and
//! modular integers with a machine-word modulus.
//!
//! Values are immutable after construction and safe to share across
//! threads. Integers embed into the rationals only through the explicit
//! [`RingElem::int_to_rat`] injection, never implicitly, so an accidental
//! mix of rings always surfaces as [`Error::RingMismatch`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, ParseError, Result};

/// Names one of the supported coefficient rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Arbitrary-precision integers.
    Integers,
    /// Rationals, always kept in reduced form with positive denominator.
    Rationals,
    /// Integers modulo `m`, residues in `[0, m)`. Moduli fit a machine word.
    Modular(u64),
}

impl RingSpec {
    /// A modular ring, rejecting moduli below 2.
    pub fn modular(m: u64) -> Result<RingSpec> {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        Ok(RingSpec::Modular(m))
    }

    /// Parses `"Z"`, `"Q"` or `"Zmod:m"`.
    pub fn parse(text: &str) -> Result<RingSpec> {
        match text.trim() {
            "Z" => Ok(RingSpec::Integers),
            "Q" => Ok(RingSpec::Rationals),
            s => {
                if let Some(m) = s.strip_prefix("Zmod:") {
                    let m: u64 = m
                        .parse()
                        .map_err(|_| ParseError::new(5, "a decimal modulus after Zmod:"))?;
                    RingSpec::modular(m)
                } else {
                    Err(ParseError::new(0, "one of Z, Q, Zmod:m").into())
                }
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Modular(m) => write!(f, "Zmod:{m}"),
        }
    }
}

/// An exact element of one of the rings named by [`RingSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElem {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl RingElem {
    pub fn spec(&self) -> RingSpec {
        match self {
            RingElem::Int(_) => RingSpec::Integers,
            RingElem::Rat(_) => RingSpec::Rationals,
            RingElem::Mod { modulus, .. } => RingSpec::Modular(*modulus),
        }
    }

    pub fn zero(spec: RingSpec) -> RingElem {
        match spec {
            RingSpec::Integers => RingElem::Int(BigInt::zero()),
            RingSpec::Rationals => RingElem::Rat(BigRational::zero()),
            RingSpec::Modular(m) => RingElem::Mod {
                value: 0,
                modulus: m,
            },
        }
    }

    pub fn one(spec: RingSpec) -> RingElem {
        match spec {
            RingSpec::Integers => RingElem::Int(BigInt::one()),
            RingSpec::Rationals => RingElem::Rat(BigRational::one()),
            RingSpec::Modular(m) => RingElem::Mod {
                value: 1 % m,
                modulus: m,
            },
        }
    }

    /// Coerces a machine integer into the given ring.
    pub fn from_i64(spec: RingSpec, v: i64) -> RingElem {
        match spec {
            RingSpec::Integers => RingElem::Int(BigInt::from(v)),
            RingSpec::Rationals => RingElem::Rat(BigRational::from_integer(BigInt::from(v))),
            RingSpec::Modular(m) => RingElem::Mod {
                value: BigInt::from(v)
                    .mod_floor(&BigInt::from(m))
                    .to_u64()
                    .unwrap(),
                modulus: m,
            },
        }
    }

    /// Canonical fraction: reduced, positive denominator.
    pub fn rat_canon(num: BigInt, den: BigInt) -> Result<RingElem> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RingElem::Rat(BigRational::new(num, den)))
    }

    /// The reduction homomorphism from the integers onto the modular ring.
    pub fn int_to_mod(z: &BigInt, m: u64) -> Result<RingElem> {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        let value = z.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        Ok(RingElem::Mod { value, modulus: m })
    }

    /// The explicit injection of the integers into the rationals.
    pub fn int_to_rat(z: &BigInt) -> RingElem {
        RingElem::Rat(BigRational::from_integer(z.clone()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(z) => z.is_zero(),
            RingElem::Rat(q) => q.is_zero(),
            RingElem::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElem::Int(z) => z.is_one(),
            RingElem::Rat(q) => q.is_one(),
            RingElem::Mod { value, modulus } => *value == 1 % *modulus,
        }
    }

    fn check_same(&self, other: &RingElem) -> Result<()> {
        if self.spec() != other.spec() {
            return Err(Error::RingMismatch {
                left: self.spec(),
                right: other.spec(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a + b),
            (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a + b),
            (RingElem::Mod { value: a, modulus }, RingElem::Mod { value: b, .. }) => {
                RingElem::Mod {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a * b),
            (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a * b),
            (RingElem::Mod { value: a, modulus }, RingElem::Mod { value: b, .. }) => {
                RingElem::Mod {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> RingElem {
        match self {
            RingElem::Int(a) => RingElem::Int(-a),
            RingElem::Rat(a) => RingElem::Rat(-a),
            RingElem::Mod { value, modulus } => RingElem::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn pow(&self, e: u32) -> RingElem {
        let mut acc = RingElem::one(self.spec());
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// Parses the textual form appropriate to `spec`: optional-sign decimal
    /// integers, `p/q` rationals, or a decimal residue.
    pub fn parse(text: &str, spec: RingSpec) -> Result<RingElem> {
        let text = text.trim();
        let parse_int = |s: &str| -> Result<BigInt> {
            s.parse::<BigInt>()
                .map_err(|_| ParseError::new(0, format!("a decimal integer, got {s:?}")).into())
        };
        match spec {
            RingSpec::Integers => Ok(RingElem::Int(parse_int(text)?)),
            RingSpec::Rationals => match text.split_once('/') {
                Some((num, den)) => RingElem::rat_canon(parse_int(num)?, parse_int(den)?),
                None => Ok(RingElem::Rat(BigRational::from_integer(parse_int(text)?))),
            },
            RingSpec::Modular(m) => RingElem::int_to_mod(&parse_int(text)?, m),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(z) => write!(f, "{z}"),
            RingElem::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            RingElem::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True if `q` has denominator 1, i.e. lies in the image of the
/// integer-to-rational injection.
pub fn rat_is_integer(elem: &RingElem) -> bool {
    match elem {
        RingElem::Rat(q) => q.denom().is_one(),
        RingElem::Int(_) => true,
        RingElem::Mod { .. } => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> RingElem {
        RingElem::rat_canon(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    fn zm(v: i64, m: u64) -> RingElem {
        RingElem::int_to_mod(&BigInt::from(v), m).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(q(1, 2).add(&q(1, 3)).unwrap(), q(5, 6));
    }

    #[test]
    fn modular_multiplication() {
        assert_eq!(zm(3, 5).mul(&zm(4, 5)).unwrap(), zm(2, 5));
    }

    #[test]
    fn multiplicative_identity() {
        let one = RingElem::one(RingSpec::Integers);
        for a in -50..50i64 {
            let a = RingElem::from_i64(RingSpec::Integers, a);
            assert_eq!(a.mul(&one).unwrap(), a);
        }
    }

    #[test]
    fn rat_canon_normalizes() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(2, -4).to_string(), "-1/2");
        assert_eq!(q(0, 7).to_string(), "0");
        assert_eq!(q(6, 3).to_string(), "2");
    }

    #[test]
    fn rat_canon_rejects_zero_denominator() {
        assert_eq!(
            RingElem::rat_canon(BigInt::from(1), BigInt::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn rat_canon_idempotent() {
        let v = q(10, -15);
        if let RingElem::Rat(r) = &v {
            let again = RingElem::rat_canon(r.numer().clone(), r.denom().clone()).unwrap();
            assert_eq!(again, v);
        }
    }

    #[test]
    fn int_to_mod_examples() {
        assert_eq!(zm(7, 5), zm(2, 5));
        assert_eq!(zm(-1, 4), zm(3, 4));
        for k in -20..20i64 {
            assert!(zm(6 * k, 6).is_zero());
        }
        assert_eq!(
            RingElem::int_to_mod(&BigInt::from(3), 1),
            Err(Error::BadModulus(1))
        );
    }

    #[test]
    fn mismatched_rings_error() {
        let a = RingElem::from_i64(RingSpec::Integers, 1);
        let b = RingElem::from_i64(RingSpec::Rationals, 1);
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
        let c = zm(1, 3);
        let d = zm(1, 5);
        assert!(matches!(c.mul(&d), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for (text, spec) in [
            ("-17", RingSpec::Integers),
            ("5/6", RingSpec::Rationals),
            ("-1/2", RingSpec::Rationals),
            ("4", RingSpec::Modular(7)),
        ] {
            let e = RingElem::parse(text, spec).unwrap();
            assert_eq!(e.to_string(), text);
        }
        assert_eq!(
            RingElem::parse("9", RingSpec::Modular(7)).unwrap(),
            zm(2, 7)
        );
        assert!(RingElem::parse("x", RingSpec::Integers).is_err());
        assert!(RingElem::parse("1/0", RingSpec::Rationals).is_err());
    }

    #[test]
    fn ring_spec_parse() {
        assert_eq!(RingSpec::parse("Z").unwrap(), RingSpec::Integers);
        assert_eq!(RingSpec::parse("Q").unwrap(), RingSpec::Rationals);
        assert_eq!(RingSpec::parse("Zmod:6").unwrap(), RingSpec::Modular(6));
        assert_eq!(RingSpec::parse("Zmod:1"), Err(Error::BadModulus(1)));
        assert!(RingSpec::parse("F_2").is_err());
    }

    fn arb_elem(spec: RingSpec) -> impl Strategy<Value = RingElem> {
        (-1000i64..1000).prop_map(move |v| RingElem::from_i64(spec, v))
    }

    proptest! {
        #[test]
        fn integer_ring_axioms(
            a in arb_elem(RingSpec::Integers),
            b in arb_elem(RingSpec::Integers),
            c in arb_elem(RingSpec::Integers),
        ) {
            ring_axioms(&a, &b, &c);
        }

        #[test]
        fn rational_ring_axioms(
            a in (-100i64..100, 1i64..30).prop_map(|(n, d)| RingElem::rat_canon(n.into(), d.into()).unwrap()),
            b in (-100i64..100, 1i64..30).prop_map(|(n, d)| RingElem::rat_canon(n.into(), d.into()).unwrap()),
            c in (-100i64..100, 1i64..30).prop_map(|(n, d)| RingElem::rat_canon(n.into(), d.into()).unwrap()),
        ) {
            ring_axioms(&a, &b, &c);
        }

        #[test]
        fn modular_ring_axioms(
            a in arb_elem(RingSpec::Modular(12)),
            b in arb_elem(RingSpec::Modular(12)),
            c in arb_elem(RingSpec::Modular(12)),
        ) {
            ring_axioms(&a, &b, &c);
        }

        #[test]
        fn reduction_is_homomorphism(a in -2000i64..2000, b in -2000i64..2000, m in 2u64..50) {
            let (za, zb) = (BigInt::from(a), BigInt::from(b));
            let ra = RingElem::int_to_mod(&za, m).unwrap();
            let rb = RingElem::int_to_mod(&zb, m).unwrap();
            prop_assert_eq!(
                RingElem::int_to_mod(&(&za + &zb), m).unwrap(),
                ra.add(&rb).unwrap()
            );
            prop_assert_eq!(
                RingElem::int_to_mod(&(&za * &zb), m).unwrap(),
                ra.mul(&rb).unwrap()
            );
        }
    }

    fn ring_axioms(a: &RingElem, b: &RingElem, c: &RingElem) {
        let ab = a.add(b).unwrap();
        let bc = b.add(c).unwrap();
        assert_eq!(ab.add(c).unwrap(), a.add(&bc).unwrap());
        assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
        assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
        let ab = a.mul(b).unwrap();
        let bc = b.mul(c).unwrap();
        assert_eq!(ab.mul(c).unwrap(), a.mul(&bc).unwrap());
        let right = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
        assert_eq!(a.mul(&b.add(c).unwrap()).unwrap(), right);
        assert_eq!(a.add(&a.neg()).unwrap(), RingElem::zero(a.spec()));
    }
}
