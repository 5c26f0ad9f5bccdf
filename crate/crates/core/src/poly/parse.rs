use num_bigint::BigInt;

use crate::error::{ParseError, Result};
use crate::poly::UniPoly;
use crate::ring::{RingElem, RingSpec};

// Parser for the univariate polynomial grammar:
//   poly  := [sign] term { sign term }
//   term  := coeff [ '*' xpart ] | xpart
//   coeff := int [ '/' int ]          ('/' only over the rationals)
//   xpart := 'x' [ '^' int ]
// Whitespace is insignificant. Multivariate polynomials are constructed
// programmatically and need no parser.

const MAX_EXPONENT: usize = 1 << 16;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn err(&self, expected: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, expected)
    }

    fn integer(&mut self) -> std::result::Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("a decimal integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn exponent(&mut self) -> std::result::Result<usize, ParseError> {
        let start = self.pos;
        let e = self.integer()?;
        let e: usize = e
            .try_into()
            .map_err(|_| ParseError::new(start, format!("an exponent at most {MAX_EXPONENT}")))?;
        if e > MAX_EXPONENT {
            return Err(ParseError::new(
                start,
                format!("an exponent at most {MAX_EXPONENT}"),
            ));
        }
        Ok(e)
    }
}

/// Parses a univariate polynomial over the given ring.
pub fn parse_unipoly(text: &str, ring: RingSpec) -> Result<UniPoly> {
    let mut cur = Cursor::new(text);
    let mut coeffs: Vec<RingElem> = Vec::new();
    let mut add_term = |k: usize, c: RingElem| -> Result<()> {
        if coeffs.len() <= k {
            coeffs.resize(k + 1, RingElem::zero(ring));
        }
        coeffs[k] = coeffs[k].add(&c)?;
        Ok(())
    };

    let mut negate = match cur.peek() {
        Some(b'-') => {
            cur.bump();
            true
        }
        Some(b'+') => {
            cur.bump();
            false
        }
        Some(_) => false,
        None => return Err(cur.err("a polynomial").into()),
    };

    loop {
        // one term
        let (coeff, power) = match cur.peek() {
            Some(b'x') => {
                cur.bump();
                (RingElem::one(ring), parse_power(&mut cur)?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = cur.integer()?;
                let coeff = match cur.peek() {
                    Some(b'/') => {
                        if ring != RingSpec::Rationals {
                            return Err(cur
                                .err(format!("no '/' in coefficients over {ring}"))
                                .into());
                        }
                        cur.bump();
                        let den_pos = cur.pos;
                        let den = cur.integer()?;
                        RingElem::rat_canon(num, den)
                            .map_err(|_| ParseError::new(den_pos, "a nonzero denominator"))?
                    }
                    _ => make_coeff(ring, num),
                };
                match cur.peek() {
                    Some(b'*') => {
                        cur.bump();
                        match cur.peek() {
                            Some(b'x') => {
                                cur.bump();
                                (coeff, parse_power(&mut cur)?)
                            }
                            _ => return Err(cur.err("x after '*'").into()),
                        }
                    }
                    _ => (coeff, 0),
                }
            }
            _ => return Err(cur.err("a coefficient or x").into()),
        };
        let coeff = if negate { coeff.neg() } else { coeff };
        add_term(power, coeff)?;

        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            Some(_) => return Err(cur.err("'+', '-', or end of input").into()),
        }
    }

    UniPoly::from_coeffs(ring, coeffs)
}

fn parse_power(cur: &mut Cursor) -> std::result::Result<usize, ParseError> {
    match cur.peek() {
        Some(b'^') => {
            cur.bump();
            cur.exponent()
        }
        _ => Ok(1),
    }
}

fn make_coeff(ring: RingSpec, num: BigInt) -> RingElem {
    match ring {
        RingSpec::Integers => RingElem::Int(num),
        RingSpec::Rationals => RingElem::int_to_rat(&num),
        RingSpec::Modular(m) => RingElem::int_to_mod(&num, m).unwrap(),
    }
}
