//! Degree-bounded bases of null-polynomial spaces over `Z/p` by exact
//! linear algebra, integer-valued polynomial generators derived from them,
//! and randomized verification that the null sets are ideals and the
//! integer-valued sets are rings.
//!
//! Randomness is ChaCha8 seeded from a user-supplied 64-bit seed;
//! per-trial generators derive their sub-seed from the trial counter, so
//! reports are bit-reproducible.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decision::{
    is_iv_scalar, is_member_matrix_reduction, is_member_matrix_structural, is_null_scalar_brute,
    Mode, ProblemConfig, Side,
};
use crate::enumerate::{required_points, EnumOpts};
use crate::error::{Error, Result};
use crate::pathpoly::path_poly;
use crate::poly::{UniPoly, VarId};
use crate::ring::{RingElem, RingSpec};
use crate::triangular::{phi_inv, upper_positions, MatrixPoly, PolyMatrix, UTMatrix};

/// A basis of the space of null polynomials of degree at most `max_degree`
/// on `T_n(Z/p)`. Every element is null (re-verified against the brute
/// force check on construction) and the elements are linearly independent,
/// spanning the full kernel of the evaluation map.
#[derive(Debug, Clone)]
pub struct NullBasis {
    pub modulus: u64,
    pub n: usize,
    pub max_degree: usize,
    pub basis: Vec<UniPoly>,
    rank: usize,
}

impl NullBasis {
    /// Dimension of the constraint row space; the kernel has dimension
    /// `max_degree + 1 - rank`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Whether `f` (over `Z/p`, degree at most `max_degree`) lies in the
    /// span of the basis.
    pub fn span_contains(&self, f: &UniPoly) -> bool {
        if f.ring() != RingSpec::Modular(self.modulus) {
            return false;
        }
        if f.degree().is_some_and(|d| d > self.max_degree) {
            return false;
        }
        let width = self.max_degree + 1;
        let mut rows: Vec<Vec<u64>> = self.basis.iter().map(|b| coeff_vector(b, width)).collect();
        let pivots = rref_mod_p(&mut rows, self.modulus);
        let mut target = coeff_vector(f, width);
        for (row, &pc) in rows.iter().zip(&pivots) {
            let factor = target[pc];
            if factor != 0 {
                for (t, r) in target.iter_mut().zip(row) {
                    *t = sub_mod(*t, mul_mod(factor, *r, self.modulus), self.modulus);
                }
            }
        }
        target.iter().all(|&v| v == 0)
    }
}

fn coeff_vector(f: &UniPoly, width: usize) -> Vec<u64> {
    (0..width)
        .map(|k| match f.coeff(k) {
            RingElem::Mod { value, .. } => value,
            _ => unreachable!(),
        })
        .collect()
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat, p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// In-place reduced row echelon form over `Z/p` with the fixed pivot rule
/// "first row with a nonzero entry in the leftmost unresolved column".
/// Returns the pivot columns; zero rows are removed.
fn rref_mod_p(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = inv_mod(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v = sub_mod(*v, mul_mod(factor, *pv, p), p);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Kernel basis of the row system `M c = 0`, one vector per free column.
fn kernel_basis(mut rows: Vec<Vec<u64>>, width: usize, p: u64) -> (Vec<Vec<u64>>, usize) {
    let pivots = rref_mod_p(&mut rows, p);
    let rank = pivots.len();
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; width];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = sub_mod(0, row[free], p);
        }
        basis.push(v);
    }
    (basis, rank)
}

/// Computes a basis of the null polynomials of degree at most `max_degree`
/// on `T_n(Z/p)` as the kernel of the evaluation map
/// `c -> (entries of sum_k c_k C^k over all C)`.
///
/// Constraint rows are generated per window width from path-polynomial
/// evaluations rather than full matrix substitution: the row contributed
/// by entry `(i, j)` depends only on the entries of `C` inside the window
/// `[i, j]`, so one window of each width covers all entries. Duplicate
/// rows are merged.
pub fn null_basis(p: u64, n: usize, max_degree: usize, opts: &EnumOpts) -> Result<NullBasis> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let width = max_degree + 1;
    let mut needed: u128 = 0;
    for d in 0..n {
        needed = needed.saturating_add(required_points(p, (d + 1) * (d + 2) / 2));
    }
    if needed > opts.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }

    let ring = RingSpec::Modular(p);
    let mut rows: BTreeSet<Vec<u64>> = BTreeSet::new();
    for d in 0..n {
        let window: Vec<VarId> = upper_positions(d + 1).collect();
        let paths: Vec<_> = (0..width).map(|k| path_poly(ring, 1, 1 + d, k)).collect();
        let mut tuple = vec![0u64; window.len()];
        loop {
            let row: Vec<u64> = paths
                .iter()
                .map(|pk| {
                    let v = pk
                        .eval_with(|var| {
                            let idx = window.binary_search(&var).unwrap();
                            RingElem::Mod {
                                value: tuple[idx],
                                modulus: p,
                            }
                        })
                        .unwrap();
                    match v {
                        RingElem::Mod { value, .. } => value,
                        _ => unreachable!(),
                    }
                })
                .collect();
            rows.insert(row);
            // odometer
            let mut pos = tuple.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < p {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&v| v == 0) {
                break;
            }
        }
    }

    let (vectors, rank) = kernel_basis(rows.into_iter().collect(), width, p);
    let basis: Vec<UniPoly> = vectors
        .into_iter()
        .map(|v| {
            let coeffs: Vec<RingElem> = v
                .into_iter()
                .map(|value| RingElem::Mod { value, modulus: p })
                .collect();
            UniPoly::from_coeffs(ring, coeffs).unwrap()
        })
        .collect();

    for f in &basis {
        let verdict = is_null_scalar_brute(f, n, opts)?;
        assert!(
            verdict.is_member(),
            "kernel vector is not null on T_{n}(Z/{p}): {f}"
        );
    }

    Ok(NullBasis {
        modulus: p,
        n,
        max_degree,
        basis,
        rank,
    })
}

/// Integer-valued polynomials `g/d` on `T_n(Z)` obtained by lifting the
/// null basis modulo `d` to integer coefficients in `[0, d)`.
pub fn iv_generators(n: usize, d: u64, max_degree: usize, opts: &EnumOpts) -> Result<Vec<UniPoly>> {
    let nb = null_basis(d, n, max_degree, opts)?;
    let divisor = RingElem::rat_canon(1.into(), d.into()).unwrap();
    let mut out = Vec::with_capacity(nb.basis.len());
    for g in &nb.basis {
        let lifted: Vec<RingElem> = g
            .coeffs()
            .iter()
            .map(|c| match c {
                RingElem::Mod { value, .. } => {
                    RingElem::from_i64(RingSpec::Integers, *value as i64)
                }
                _ => unreachable!(),
            })
            .collect();
        let g_int = UniPoly::from_coeffs(RingSpec::Integers, lifted)?;
        let f = g_int.to_rationals()?.scale(&divisor)?;
        let verdict = is_iv_scalar(&f, n, opts)?;
        assert!(
            verdict.is_member(),
            "lifted generator is not integer-valued: {f}"
        );
        out.push(f);
    }
    Ok(out)
}

/// Outcome of a randomized closure verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub trials: u32,
    pub failures: u32,
    pub seed: u64,
}

impl Report {
    /// The deterministic part of the report. Timing, when wanted for
    /// display, is supplied by the caller so that reports from repeated
    /// runs stay byte-identical.
    pub fn to_json(&self, elapsed_ms: Option<u128>) -> serde_json::Value {
        let mut v = serde_json::json!({
            "schema": 1,
            "trials": self.trials,
            "failures": self.failures,
            "seed": self.seed,
        });
        if let Some(ms) = elapsed_ms {
            v["elapsed_ms"] = serde_json::json!(ms as u64);
        }
        v
    }
}

fn trial_rng(seed: u64, trial: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A random element of the null set: each entry of the coefficient
/// transpose is a random combination of null-basis elements of the window
/// width governing that entry.
fn random_null_element(
    rng: &mut ChaCha8Rng,
    bases: &[NullBasis],
    n: usize,
    side: Side,
    m: u64,
) -> Result<MatrixPoly> {
    let ring = RingSpec::Modular(m);
    let mut entries = PolyMatrix::zero(n, ring);
    for (i, j) in upper_positions(n) {
        let width = match side {
            Side::Right => n - j + 1,
            Side::Left => i,
        };
        let basis = &bases[width - 1].basis;
        let mut entry = UniPoly::zero(ring);
        for b in basis {
            let c = RingElem::from_i64(ring, rng.gen_range(0..m as i64));
            entry = entry.add(&b.scale(&c)?)?;
        }
        entries.set(i, j, entry)?;
    }
    Ok(phi_inv(&entries))
}

fn random_mod_matrix_poly(rng: &mut ChaCha8Rng, n: usize, m: u64, max_deg: usize) -> MatrixPoly {
    let ring = RingSpec::Modular(m);
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg)
        .map(|_| {
            let mut c = UTMatrix::zero(n, ring);
            for (i, j) in upper_positions(n) {
                c.set(i, j, RingElem::from_i64(ring, rng.gen_range(0..m as i64)))
                    .unwrap();
            }
            c
        })
        .collect();
    MatrixPoly::from_coeffs(n, ring, coeffs).unwrap()
}

/// Verifies ideal closure of the null set on `T_n(Z/m)`:
/// random null elements stay null under addition and under multiplication
/// by arbitrary matrix polynomials on either side, re-checked by the
/// exhaustive oracle.
pub fn verify_ideal_closure(
    m: u64,
    n: usize,
    max_degree: usize,
    trials: u32,
    seed: u64,
    side: Side,
    opts: &EnumOpts,
) -> Result<Report> {
    let bases: Vec<NullBasis> = (1..=n)
        .map(|w| null_basis(m, w, max_degree, opts))
        .collect::<Result<_>>()?;
    let cfg = ProblemConfig {
        mode: Mode::Null { modulus: m },
        n,
        side,
    };
    let mut failures = 0;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let a = random_null_element(&mut rng, &bases, n, side, m)?;
        let b = random_null_element(&mut rng, &bases, n, side, m)?;
        let r = random_mod_matrix_poly(&mut rng, n, m, 2);
        let candidates = [a.clone(), a.add(&b)?, a.mul(&r)?, r.mul(&a)?];
        for candidate in &candidates {
            if !is_member_matrix_reduction(candidate, cfg, opts)?.is_member() {
                failures += 1;
            }
        }
    }
    Ok(Report {
        trials,
        failures,
        seed,
    })
}

/// A random element of the integer-valued set: entries combine the lifted
/// generators of the governing window width with random integer
/// polynomials (which are integer-valued for free).
fn random_iv_element(
    rng: &mut ChaCha8Rng,
    gens: &[Vec<UniPoly>],
    n: usize,
    side: Side,
) -> Result<MatrixPoly> {
    let q = RingSpec::Rationals;
    let mut entries = PolyMatrix::zero(n, q);
    for (i, j) in upper_positions(n) {
        let width = match side {
            Side::Right => n - j + 1,
            Side::Left => i,
        };
        let mut entry = UniPoly::zero(q);
        for g in &gens[width - 1] {
            let z = RingElem::from_i64(q, rng.gen_range(-2..=2));
            entry = entry.add(&g.scale(&z)?)?;
        }
        let extra: Vec<i64> = (0..=rng.gen_range(0..=2))
            .map(|_| rng.gen_range(-2..=2))
            .collect();
        entry = entry.add(&UniPoly::from_ints(q, &extra))?;
        entries.set(i, j, entry)?;
    }
    Ok(phi_inv(&entries))
}

/// Verifies ring closure of the integer-valued set on `T_n(Z)`: sums and
/// products of random members stay members, with the structural and
/// oracle verdicts required to agree. Also spot-checks the scalar
/// inclusion `Int^{T_i} * Int^{T_j} <= Int^{T_min(i,j)}` on all generator
/// pairs.
pub fn verify_ring_closure(
    n: usize,
    d: u64,
    max_degree: usize,
    trials: u32,
    seed: u64,
    side: Side,
    opts: &EnumOpts,
) -> Result<Report> {
    let gens: Vec<Vec<UniPoly>> = (1..=n)
        .map(|w| iv_generators(w, d, max_degree, opts))
        .collect::<Result<_>>()?;
    let cfg = ProblemConfig {
        mode: Mode::Iv,
        n,
        side,
    };
    let mut failures = 0;

    // scalar inclusion on generator pairs
    for i in 1..=n {
        for j in 1..=n {
            for a in &gens[i - 1] {
                for b in &gens[j - 1] {
                    let product = a.mul(b)?;
                    if !is_iv_scalar(&product, i.min(j), opts)?.is_member() {
                        failures += 1;
                    }
                }
            }
        }
    }

    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let f = random_iv_element(&mut rng, &gens, n, side)?;
        let g = random_iv_element(&mut rng, &gens, n, side)?;
        for candidate in [f.add(&g)?, f.mul(&g)?] {
            let structural = is_member_matrix_structural(&candidate, cfg, opts)?;
            let oracle = is_member_matrix_reduction(&candidate, cfg, opts)?;
            if structural.decision != oracle.decision || !structural.is_member() {
                failures += 1;
            }
        }
    }
    Ok(Report {
        trials,
        failures,
        seed,
    })
}
