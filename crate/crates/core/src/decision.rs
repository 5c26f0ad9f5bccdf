//! Decision procedures for membership of scalar- and matrix-coefficient
//! polynomials in integer-valued and null-polynomial sets, each along two
//! independent routes: the structural path through entry-wise scalar
//! criteria and path-polynomial windows, and an exhaustive enumeration
//! oracle over a finite ring.

use num_traits::{One, ToPrimitive};

use crate::enumerate::{lex_find, EnumOpts};
use crate::error::{Error, Result};
use crate::pathpoly::{image_in_ideal, scalar_product, ImageCheck};
use crate::poly::UniPoly;
use crate::ring::{RingElem, RingSpec};
use crate::triangular::{phi, scalar_subst, upper_positions, MatrixPoly, UTMatrix};

/// Which side of the coefficients the matrix argument is substituted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

/// The supported membership problems. Each instance fixes the triple
/// `(R, S, I)`: coefficients in `R`, arguments in `T_n(S)`, target `T_n(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Integer-valued polynomials: `R = Q`, `S = I = Z`.
    Iv,
    /// Null polynomials over a finite ring: `R = S = Z/m`, `I = (0)`.
    Null { modulus: u64 },
    /// Values in a proper ideal: `R = S = Z/m`, `I = (t)`.
    GeneralFinite { modulus: u64, generator: u64 },
}

impl Mode {
    fn ideal_generator(self) -> u64 {
        match self {
            Mode::Iv | Mode::Null { .. } => 0,
            Mode::GeneralFinite { generator, .. } => generator,
        }
    }
}

/// A membership problem: mode, matrix dimension, substitution side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemConfig {
    pub mode: Mode,
    pub n: usize,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Member,
    NonMember,
}

/// How a verdict was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Entry-wise criteria and path-polynomial windows.
    Structural,
    /// Exhaustive enumeration of `T_n(S)`.
    BruteForce,
    /// Denominator clearing followed by a null check over `Z/d`.
    Reduction,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Structural => "structural",
            Method::BruteForce => "brute_force",
            Method::Reduction => "reduction",
        }
    }
}

/// A concrete counterexample: a matrix argument, the entry at which the
/// value escapes the target, and the escaping value. Re-substituting the
/// matrix always reproduces the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub matrix: UTMatrix,
    pub entry: (usize, usize),
    pub value: RingElem,
}

/// A membership decision; rejections always carry a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn member(method: Method) -> Verdict {
        Verdict {
            decision: Decision::Member,
            method,
            witness: None,
        }
    }

    fn non_member(method: Method, witness: Witness) -> Verdict {
        Verdict {
            decision: Decision::NonMember,
            method,
            witness: Some(witness),
        }
    }

    pub fn is_member(&self) -> bool {
        self.decision == Decision::Member
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witness = self.witness.as_ref().map(|w| {
            serde_json::json!({
                "matrix": crate::triangular::ut_matrix_entries_json(&w.matrix),
                "entry": [w.entry.0, w.entry.1],
                "value": w.value.to_string(),
            })
        });
        serde_json::json!({
            "schema": 1,
            "decision": match self.decision {
                Decision::Member => "member",
                Decision::NonMember => "non_member",
            },
            "method": self.method.as_str(),
            "witness": witness,
        })
    }
}

fn expect_modular(ring: RingSpec) -> Result<u64> {
    match ring {
        RingSpec::Modular(m) => Ok(m),
        other => Err(Error::NotModular { found: other }),
    }
}

fn residue_in_ideal(value: u64, generator: u64, modulus: u64) -> bool {
    let g = num_integer::gcd(generator % modulus, modulus);
    value.is_multiple_of(g)
}

fn residue_of(elem: &RingElem) -> u64 {
    match elem {
        RingElem::Mod { value, .. } => *value,
        _ => unreachable!("finite checks work on modular elements"),
    }
}

/// Builds the matrix whose upper entries, in row-major order, are the
/// residues of `tuple`.
fn matrix_from_tuple(n: usize, m: u64, tuple: &[u64]) -> UTMatrix {
    let ring = RingSpec::Modular(m);
    let mut c = UTMatrix::zero(n, ring);
    for ((i, j), &v) in upper_positions(n).zip(tuple) {
        c.set(
            i,
            j,
            RingElem::Mod {
                value: v,
                modulus: m,
            },
        )
        .unwrap();
    }
    c
}

/// Decides by brute force whether every value of the scalar polynomial on
/// `T_n(Z/m)` lands in the ideal `(t)`; `t = 0` is the null-polynomial
/// problem. Matrices are enumerated lexicographically by their upper
/// entries in row-major order, values `0..m-1`.
pub fn is_scalar_finite_brute(
    f: &UniPoly,
    n: usize,
    generator: u64,
    opts: &EnumOpts,
) -> Result<Verdict> {
    let m = expect_modular(f.ring())?;
    let len = n * (n + 1) / 2;
    let hit = lex_find(m, len, opts, |tuple| {
        let c = matrix_from_tuple(n, m, tuple);
        let fc = scalar_subst(f, &c).unwrap();
        upper_positions(n).find_map(|(i, j)| {
            let v = fc.get(i, j);
            (!residue_in_ideal(residue_of(&v), generator, m)).then_some(((i, j), v))
        })
    })?;
    Ok(match hit {
        None => Verdict::member(Method::BruteForce),
        Some((tuple, (entry, value))) => Verdict::non_member(
            Method::BruteForce,
            Witness {
                matrix: matrix_from_tuple(n, m, &tuple),
                entry,
                value,
            },
        ),
    })
}

/// Brute-force null-polynomial decision over `Z/m`.
pub fn is_null_scalar_brute(f: &UniPoly, n: usize, opts: &EnumOpts) -> Result<Verdict> {
    is_scalar_finite_brute(f, n, 0, opts)
}

/// Decides the same membership as [`is_scalar_finite_brute`] through the
/// windowed criterion: `f` lies in the set iff for every window width
/// `k < n` the pairing `<f, p_{1,1+k}>` takes values in the ideal. A
/// failing assignment is lifted to a matrix supported on rows and columns
/// `1..=k+1` and validated by re-substitution.
pub fn is_scalar_finite_windowed(
    f: &UniPoly,
    n: usize,
    generator: u64,
    opts: &EnumOpts,
) -> Result<Verdict> {
    let m = expect_modular(f.ring())?;
    for k in 0..n {
        let window = scalar_product(f, 1, 1 + k);
        match image_in_ideal(&window, generator, opts)? {
            ImageCheck::InIdeal => continue,
            ImageCheck::Escapes { assignment, value } => {
                let c = assignment.to_matrix(n)?;
                let entry = (1, 1 + k);
                let recheck = scalar_subst(f, &c)?.get(entry.0, entry.1);
                assert_eq!(
                    recheck, value,
                    "windowed witness failed re-substitution at {entry:?}"
                );
                assert!(!residue_in_ideal(residue_of(&recheck), generator, m));
                return Ok(Verdict::non_member(
                    Method::Structural,
                    Witness {
                        matrix: c,
                        entry,
                        value,
                    },
                ));
            }
        }
    }
    Ok(Verdict::member(Method::Structural))
}

/// Windowed null-polynomial decision over `Z/m`.
pub fn is_null_scalar_windowed(f: &UniPoly, n: usize, opts: &EnumOpts) -> Result<Verdict> {
    is_scalar_finite_windowed(f, n, 0, opts)
}

/// Decides whether a rational polynomial is integer-valued on `T_n(Z)`:
/// write `f = g/d` with minimal `d`; then `f` is integer-valued iff the
/// residue of `g` is a null polynomial on `T_n(Z/d)`. Witnesses are lifted
/// to integer matrices with entries in `[0, d)` and report the offending
/// non-integral entry of `f(C)`.
pub fn is_iv_scalar(f: &UniPoly, n: usize, opts: &EnumOpts) -> Result<Verdict> {
    if f.ring() != RingSpec::Rationals {
        return Err(Error::RingMismatch {
            left: RingSpec::Rationals,
            right: f.ring(),
        });
    }
    let (d, g) = f.clear_denominators()?;
    if d.is_one() {
        return Ok(Verdict::member(Method::Reduction));
    }
    let m: u64 = d.to_u64().ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget: opts.budget,
    })?;
    let verdict = is_null_scalar_windowed(&g.reduce_mod(m)?, n, opts)?;
    Ok(match verdict.witness {
        None => Verdict::member(Method::Reduction),
        Some(w) => {
            let c_int = lift_to_integers(&w.matrix);
            let value = scalar_subst(f, &c_int.to_rationals()?)?.get(w.entry.0, w.entry.1);
            assert!(
                !crate::ring::rat_is_integer(&value),
                "lifted witness re-substituted to an integral value"
            );
            Verdict::non_member(
                Method::Reduction,
                Witness {
                    matrix: c_int,
                    entry: w.entry,
                    value,
                },
            )
        }
    })
}

/// Canonical lift of a matrix over `Z/m` to integer entries in `[0, m)`.
fn lift_to_integers(c: &UTMatrix) -> UTMatrix {
    let mut out = UTMatrix::zero(c.n(), RingSpec::Integers);
    for (i, j) in upper_positions(c.n()) {
        let v = residue_of(&c.get(i, j));
        out.set(i, j, RingElem::from_i64(RingSpec::Integers, v as i64))
            .unwrap();
    }
    out
}

/// Window width governing entry `(i, j)` of the characterization: the
/// column determines it for right substitution, the row for left.
fn window_width(n: usize, side: Side, i: usize, j: usize) -> usize {
    match side {
        Side::Right => n - j + 1,
        Side::Left => i,
    }
}

/// Scalar membership of one entry polynomial at the given window width.
fn scalar_entry_verdict(
    entry_poly: &UniPoly,
    width: usize,
    mode: Mode,
    opts: &EnumOpts,
) -> Result<Verdict> {
    match mode {
        Mode::Iv => is_iv_scalar(entry_poly, width, opts),
        Mode::Null { .. } | Mode::GeneralFinite { .. } => {
            is_scalar_finite_windowed(entry_poly, width, mode.ideal_generator(), opts)
        }
    }
}

/// Entry scan order under which the first failing entry admits a valid
/// witness embedding: for right substitution all entries to its right in
/// the same row must already have passed, for left substitution all
/// entries above it in the same column.
fn scan_order(n: usize, side: Side) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(n * (n + 1) / 2);
    match side {
        Side::Right => {
            for i in 1..=n {
                for j in (i..=n).rev() {
                    order.push((i, j));
                }
            }
        }
        Side::Left => {
            for j in 1..=n {
                for i in 1..=j {
                    order.push((i, j));
                }
            }
        }
    }
    order
}

/// The structural membership decision for matrix-coefficient polynomials:
/// `f` is a member iff each entry `f_ij` of its coefficient transpose lies
/// in the scalar membership set of the governing window width.
///
/// On failure the scalar witness, supported on rows and columns `1..=k+1`
/// of the window, is shifted to the position where the violated entry
/// actually reads it and validated by re-substituting into `f` itself.
pub fn is_member_matrix_structural(
    f: &MatrixPoly,
    cfg: ProblemConfig,
    opts: &EnumOpts,
) -> Result<Verdict> {
    check_problem(f, cfg)?;
    let n = cfg.n;
    let entries = phi(f);
    for (i, j) in scan_order(n, cfg.side) {
        let width = window_width(n, cfg.side, i, j);
        let verdict = scalar_entry_verdict(&entries.get(i, j), width, cfg.mode, opts)?;
        let Some(w) = verdict.witness else { continue };
        // scalar witness lives on rows/cols [1, k+1]; w.entry = (1, k+1)
        let k = w.entry.1 - 1;
        let (row_shift, target) = match cfg.side {
            // witness window moves to [j, j+k]; violation shows at (i, j+k)
            Side::Right => (j - 1, (i, j + k)),
            // witness window moves to [i-k, i]; violation shows at (i-k, j)
            Side::Left => (i - k - 1, (i - k, j)),
        };
        let c = shift_matrix_support(&w.matrix, row_shift, n);
        let witness = validate_matrix_witness(f, cfg, c, target)?;
        return Ok(Verdict::non_member(Method::Structural, witness));
    }
    Ok(Verdict::member(Method::Structural))
}

/// Moves the support of a window witness `s` positions down the diagonal
/// and embeds it into `T_n`.
fn shift_matrix_support(c: &UTMatrix, s: usize, n: usize) -> UTMatrix {
    let mut out = UTMatrix::zero(n, c.ring());
    for (i, j) in upper_positions(c.n()) {
        let v = c.get(i, j);
        if !v.is_zero() {
            out.set(i + s, j + s, v).unwrap();
        }
    }
    out
}

/// Re-substitutes a candidate witness matrix into `f` and confirms the
/// designated entry escapes the target set; returns the finished witness
/// with the escaping value filled in.
fn validate_matrix_witness(
    f: &MatrixPoly,
    cfg: ProblemConfig,
    c: UTMatrix,
    entry: (usize, usize),
) -> Result<Witness> {
    let value = match cfg.mode {
        Mode::Iv => {
            let arg = c.to_rationals()?;
            let image = match cfg.side {
                Side::Right => f.subst_right(&arg)?,
                Side::Left => f.subst_left(&arg)?,
            };
            let value = image.get(entry.0, entry.1);
            assert!(
                !crate::ring::rat_is_integer(&value),
                "matrix witness re-substituted to an integral value at {entry:?}"
            );
            value
        }
        Mode::Null { modulus } | Mode::GeneralFinite { modulus, .. } => {
            let image = match cfg.side {
                Side::Right => f.subst_right(&c)?,
                Side::Left => f.subst_left(&c)?,
            };
            let value = image.get(entry.0, entry.1);
            assert!(
                !residue_in_ideal(residue_of(&value), cfg.mode.ideal_generator(), modulus),
                "matrix witness re-substituted into the ideal at {entry:?}"
            );
            value
        }
    };
    Ok(Witness {
        matrix: c,
        entry,
        value,
    })
}

fn check_problem(f: &MatrixPoly, cfg: ProblemConfig) -> Result<()> {
    if f.n() != cfg.n {
        return Err(Error::DimMismatch {
            left: cfg.n,
            right: f.n(),
        });
    }
    let expected = match cfg.mode {
        Mode::Iv => RingSpec::Rationals,
        Mode::Null { modulus } | Mode::GeneralFinite { modulus, .. } => RingSpec::Modular(modulus),
    };
    if f.ring() != expected {
        return Err(Error::RingMismatch {
            left: expected,
            right: f.ring(),
        });
    }
    if let Mode::Null { modulus } | Mode::GeneralFinite { modulus, .. } = cfg.mode {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
    }
    Ok(())
}

/// The exhaustive oracle for matrix-coefficient membership. Finite modes
/// enumerate all of `T_n(Z/m)` directly; the integer-valued mode clears
/// denominators entry-wise and runs the null check over `Z/d`.
pub fn is_member_matrix_reduction(
    f: &MatrixPoly,
    cfg: ProblemConfig,
    opts: &EnumOpts,
) -> Result<Verdict> {
    check_problem(f, cfg)?;
    let n = cfg.n;
    match cfg.mode {
        Mode::Iv => {
            let (d, g) = f.clear_denominators()?;
            if d.is_one() {
                return Ok(Verdict::member(Method::Reduction));
            }
            let m: u64 = d.to_u64().ok_or(Error::BudgetExceeded {
                needed: u128::MAX,
                budget: opts.budget,
            })?;
            let gm = g.reduce_mod(m)?;
            let hit = enumerate_matrices(&gm, cfg.side, n, m, 0, opts)?;
            Ok(match hit {
                None => Verdict::member(Method::Reduction),
                Some((c_mod, entry, _)) => {
                    let c_int = lift_to_integers(&c_mod);
                    let arg = c_int.to_rationals()?;
                    let image = match cfg.side {
                        Side::Right => f.subst_right(&arg)?,
                        Side::Left => f.subst_left(&arg)?,
                    };
                    let value = image.get(entry.0, entry.1);
                    assert!(!crate::ring::rat_is_integer(&value));
                    Verdict::non_member(
                        Method::Reduction,
                        Witness {
                            matrix: c_int,
                            entry,
                            value,
                        },
                    )
                }
            })
        }
        Mode::Null { modulus } | Mode::GeneralFinite { modulus, .. } => {
            let hit =
                enumerate_matrices(f, cfg.side, n, modulus, cfg.mode.ideal_generator(), opts)?;
            Ok(match hit {
                None => Verdict::member(Method::Reduction),
                Some((matrix, entry, value)) => Verdict::non_member(
                    Method::Reduction,
                    Witness {
                        matrix,
                        entry,
                        value,
                    },
                ),
            })
        }
    }
}

type MatrixHit = (UTMatrix, (usize, usize), RingElem);

fn enumerate_matrices(
    f: &MatrixPoly,
    side: Side,
    n: usize,
    m: u64,
    generator: u64,
    opts: &EnumOpts,
) -> Result<Option<MatrixHit>> {
    let len = n * (n + 1) / 2;
    let hit = lex_find(m, len, opts, |tuple| {
        let c = matrix_from_tuple(n, m, tuple);
        let image = match side {
            Side::Right => f.subst_right(&c).unwrap(),
            Side::Left => f.subst_left(&c).unwrap(),
        };
        upper_positions(n).find_map(|(i, j)| {
            let v = image.get(i, j);
            (!residue_in_ideal(residue_of(&v), generator, m)).then_some(((i, j), v))
        })
    })?;
    Ok(hit.map(|(tuple, (entry, value))| (matrix_from_tuple(n, m, &tuple), entry, value)))
}

/// The entry-wise requirement table of the membership characterization:
/// entry `(i, j)` of a member must lie in the scalar membership set for
/// dimension `n-j+1` (right) or `i` (left); strictly lower entries are zero.
pub fn characterize(n: usize, side: Side, mode: Mode) -> Vec<Vec<String>> {
    let tag = match mode {
        Mode::Iv => "Int",
        Mode::Null { .. } | Mode::GeneralFinite { .. } => "N",
    };
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if i > j {
                        "zero".to_string()
                    } else {
                        format!("{tag}^{{T{}}}", window_width(n, side, i, j))
                    }
                })
                .collect()
        })
        .collect()
}
