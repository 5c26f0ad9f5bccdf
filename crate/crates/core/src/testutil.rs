//! Shared helpers for the unit test suites.

use crate::poly::UniPoly;
use crate::ring::{RingElem, RingSpec};
use crate::triangular::{upper_positions, UTMatrix};

/// Every polynomial over `Z/m` of degree at most `max_deg`, by counting
/// coefficient vectors.
pub fn all_mod_polys(m: u64, max_deg: usize) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let total = (m as i64).pow(max_deg as u32 + 1);
    for code in 0..total {
        let mut c = code;
        let mut coeffs = Vec::with_capacity(max_deg + 1);
        for _ in 0..=max_deg {
            coeffs.push(c % m as i64);
            c /= m as i64;
        }
        out.push(UniPoly::from_ints(RingSpec::Modular(m), &coeffs));
    }
    out
}

/// Every matrix in `T_n(Z/m)`.
pub fn all_matrices(n: usize, m: u64) -> Vec<UTMatrix> {
    let ring = RingSpec::Modular(m);
    let len = n * (n + 1) / 2;
    let total = (m as usize).pow(len as u32);
    (0..total)
        .map(|mut code| {
            let mut c = UTMatrix::zero(n, ring);
            let positions: Vec<_> = upper_positions(n).collect();
            for &(i, j) in positions.iter().rev() {
                c.set(
                    i,
                    j,
                    RingElem::Mod {
                        value: (code % m as usize) as u64,
                        modulus: m,
                    },
                )
                .unwrap();
                code /= m as usize;
            }
            c
        })
        .collect()
}
