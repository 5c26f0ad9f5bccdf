//! Path polynomials over the relation `(N, <=)`, the pairing of a scalar
//! polynomial with a sequence of path polynomials, substitution of matrices
//! into multivariate polynomials, shift canonicalization, and exhaustive
//! image testing over finite rings.
//!
//! The `k`-th path polynomial from `i` to `j` is the sum, over all
//! nondecreasing chains `i = i_1 <= ... <= i_{k+1} = j`, of the monomials
//! `x_{i_1 i_2} ... x_{i_k i_{k+1}}`. It equals the `(i,j)` entry of the
//! `k`-th power of a generic upper triangular matrix.

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, Mutex};

use num_integer::Integer;

use crate::enumerate::{lex_find, EnumOpts};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, UniPoly, VarId};
use crate::ring::{RingElem, RingSpec};
use crate::triangular::UTMatrix;

// Chains only depend on the distance j - i and the length k; instances at
// other start indices are shift renamings of the canonical one at i = 1.
type ChainCache = HashMap<(usize, usize), Vec<Monomial>>;
static CHAIN_CACHE: LazyLock<Mutex<ChainCache>> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn canonical_chain_monomials(dist: usize, k: usize) -> Vec<Monomial> {
    if let Some(hit) = CHAIN_CACHE.lock().unwrap().get(&(dist, k)) {
        return hit.clone();
    }
    let mut out = Vec::new();
    let mut chain = vec![1usize];
    collect_chains(&mut chain, k, 1 + dist, &mut out);
    CHAIN_CACHE.lock().unwrap().insert((dist, k), out.clone());
    out
}

fn collect_chains(
    chain: &mut Vec<usize>,
    remaining: usize,
    target: usize,
    out: &mut Vec<Monomial>,
) {
    let last = *chain.last().unwrap();
    if remaining == 0 {
        if last == target {
            let edges: Vec<VarId> = chain.windows(2).map(|w| (w[0], w[1])).collect();
            out.push(Monomial::from_vars(&edges).unwrap());
        }
        return;
    }
    for next in last..=target {
        chain.push(next);
        collect_chains(chain, remaining - 1, target, out);
        chain.pop();
    }
}

/// The `k`-th path polynomial from `i` to `j`, with coefficients in `ring`.
///
/// `p_ij^(0)` is the Kronecker delta and `p_ij^(k) = 0` whenever `i > j`.
pub fn path_poly(ring: RingSpec, i: usize, j: usize, k: usize) -> MultiPoly {
    assert!(i >= 1 && j >= 1, "path polynomial indices start at 1");
    if i > j {
        return MultiPoly::zero(ring);
    }
    if k == 0 {
        return if i == j {
            MultiPoly::one(ring)
        } else {
            MultiPoly::zero(ring)
        };
    }
    let monos = canonical_chain_monomials(j - i, k);
    let one = RingElem::one(ring);
    MultiPoly::from_terms(
        ring,
        monos
            .into_iter()
            .map(|m| (m.shift(i as i64 - 1).unwrap(), one.clone())),
    )
    .unwrap()
}

/// The pairing `<f, p_ab> = sum_k f_k p_ab^(k)`, whose evaluation at `C`
/// gives the `(a,b)` entry of `f(C)` for scalar-coefficient `f`.
pub fn scalar_product(f: &UniPoly, a: usize, b: usize) -> MultiPoly {
    let ring = f.ring();
    let mut acc = MultiPoly::zero(ring);
    for (k, fk) in f.coeffs().iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        let pk = path_poly(ring, a, b, k).scale(fk).unwrap();
        acc = acc.add(&pk).unwrap();
    }
    acc
}

/// Substitutes the entries of `C` for the variables of `p`: `c_{ij}` for
/// `x_{ij}` with `i, j <= n`, and zero for variables indexed beyond `n`.
pub fn multi_subst_matrix(p: &MultiPoly, c: &UTMatrix) -> Result<RingElem> {
    if p.ring() != c.ring() {
        return Err(Error::RingMismatch {
            left: p.ring(),
            right: c.ring(),
        });
    }
    p.eval_with(|(i, j)| c.get(i, j))
}

/// Renames every variable `x_{hk}` of `p` to `x_{h+delta, k+delta}`.
pub fn shift_canonical(p: &MultiPoly, delta: i64) -> Result<MultiPoly> {
    p.shift(delta)
}

/// A substitution of ring elements for variables, used both as input to
/// evaluation and as the witness payload of a failed image check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarAssignment {
    ring: RingSpec,
    values: BTreeMap<VarId, RingElem>,
}

impl VarAssignment {
    pub fn new(ring: RingSpec) -> VarAssignment {
        VarAssignment {
            ring,
            values: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn set(&mut self, var: VarId, value: RingElem) -> Result<()> {
        let (i, j) = var;
        if i < 1 || i > j {
            return Err(Error::NotUpperTriangular { i, j });
        }
        if value.spec() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: value.spec(),
            });
        }
        self.values.insert(var, value);
        Ok(())
    }

    /// The assigned value, zero for unassigned variables.
    pub fn get(&self, var: VarId) -> RingElem {
        self.values
            .get(&var)
            .cloned()
            .unwrap_or_else(|| RingElem::zero(self.ring))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarId, &RingElem)> {
        self.values.iter()
    }

    /// Embeds the assignment as a matrix in `T_n`, zero at unassigned
    /// positions. Fails if some assigned variable lies outside `T_n`.
    pub fn to_matrix(&self, n: usize) -> Result<UTMatrix> {
        let mut m = UTMatrix::zero(n, self.ring);
        for (&(i, j), v) in &self.values {
            m.set(i, j, v.clone())?;
        }
        Ok(m)
    }
}

/// Outcome of an exhaustive image check of a polynomial over a finite ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageCheck {
    /// Every substitution of ring elements lands in the ideal.
    InIdeal,
    /// Some substitution escapes; carries the lexicographically first
    /// failing assignment and the value it produces.
    Escapes {
        assignment: VarAssignment,
        value: RingElem,
    },
}

/// Decides whether `p` takes values in the ideal `(t)` of `Z/m` whenever
/// ring elements are substituted for its variables.
///
/// Only the variables occurring in `p` are enumerated, in lexicographic
/// order of the sorted variable list with values `0..m-1`. `t = 0` denotes
/// the zero ideal. The ideals of `Z/m` are exactly the `(t)` with `t | m`,
/// and membership in `(t)` is divisibility by `gcd(t, m)`.
pub fn image_in_ideal(p: &MultiPoly, t: u64, opts: &EnumOpts) -> Result<ImageCheck> {
    let m = match p.ring() {
        RingSpec::Modular(m) => m,
        other => return Err(Error::NotModular { found: other }),
    };
    let gen = t % m;
    let in_ideal = move |v: u64| -> bool {
        let g = gen.gcd(&m); // gcd(0, m) = m, so (0) is exactly {0}
        v.is_multiple_of(g)
    };
    let vars: Vec<VarId> = p.vars().into_iter().collect();
    let hit = lex_find(m, vars.len(), opts, |tuple| {
        let value = p
            .eval_with(|v| {
                let idx = vars.binary_search(&v).unwrap();
                RingElem::Mod {
                    value: tuple[idx],
                    modulus: m,
                }
            })
            .unwrap();
        match &value {
            RingElem::Mod { value: v, .. } if !in_ideal(*v) => Some(value),
            _ => None,
        }
    })?;
    Ok(match hit {
        None => ImageCheck::InIdeal,
        Some((tuple, value)) => {
            let mut assignment = VarAssignment::new(p.ring());
            for (var, v) in vars.iter().zip(tuple) {
                assignment.set(
                    *var,
                    RingElem::Mod {
                        value: v,
                        modulus: m,
                    },
                )?;
            }
            ImageCheck::Escapes { assignment, value }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_unipoly;
    use crate::triangular::upper_positions;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Z: RingSpec = RingSpec::Integers;

    fn mono(vars: &[VarId]) -> Monomial {
        Monomial::from_vars(vars).unwrap()
    }

    fn poly_of(monos: &[&[VarId]]) -> MultiPoly {
        MultiPoly::from_terms(
            Z,
            monos.iter().map(|vs| (mono(vs), RingElem::from_i64(Z, 1))),
        )
        .unwrap()
    }

    #[test]
    fn worked_example_from_2_to_4() {
        assert!(path_poly(Z, 2, 4, 0).is_zero());
        assert_eq!(path_poly(Z, 2, 4, 1), poly_of(&[&[(2, 4)]]));
        assert_eq!(
            path_poly(Z, 2, 4, 2),
            poly_of(&[&[(2, 2), (2, 4)], &[(2, 3), (3, 4)], &[(2, 4), (4, 4)],])
        );
        assert_eq!(
            path_poly(Z, 2, 4, 3),
            poly_of(&[
                &[(2, 2), (2, 2), (2, 4)],
                &[(2, 2), (2, 3), (3, 4)],
                &[(2, 2), (2, 4), (4, 4)],
                &[(2, 3), (3, 3), (3, 4)],
                &[(2, 3), (3, 4), (4, 4)],
                &[(2, 4), (4, 4), (4, 4)],
            ])
        );
    }

    #[test]
    fn degenerate_cases() {
        assert_eq!(path_poly(Z, 3, 3, 0), MultiPoly::one(Z));
        assert!(path_poly(Z, 3, 2, 5).is_zero());
        assert!(path_poly(Z, 3, 2, 0).is_zero());
        // single loop chain
        for k in 0..5 {
            let p = path_poly(Z, 1, 1, k);
            assert_eq!(p.num_terms(), 1);
            let (m, c) = p.terms().next().unwrap();
            assert_eq!(m.degree() as usize, k);
            assert!(c.is_one());
            if k > 0 {
                assert_eq!(m.factors(), &[((1, 1), k as u32)]);
            }
        }
    }

    #[test]
    fn display_matches_expected_form() {
        assert_eq!(
            path_poly(Z, 2, 4, 2).to_string(),
            "x_{2,2}*x_{2,4} + x_{2,3}*x_{3,4} + x_{2,4}*x_{4,4}"
        );
    }

    fn count_chains(i: usize, j: usize, k: usize) -> usize {
        // independent oracle: depth-first count of nondecreasing sequences
        fn go(last: usize, target: usize, remaining: usize) -> usize {
            if remaining == 0 {
                return usize::from(last == target);
            }
            (last..=target).map(|n| go(n, target, remaining - 1)).sum()
        }
        if i > j {
            return 0;
        }
        go(i, j, k)
    }

    #[test]
    fn term_count_matches_chain_count() {
        for i in 1..=3 {
            for j in i..=(i + 3) {
                for k in 0..=5 {
                    assert_eq!(
                        path_poly(Z, i, j, k).num_terms(),
                        count_chains(i, j, k),
                        "i={i} j={j} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn scalar_product_examples() {
        let xsq = parse_unipoly("x^2", Z).unwrap();
        assert_eq!(scalar_product(&xsq, 2, 4), path_poly(Z, 2, 4, 2));
        let one = parse_unipoly("1", Z).unwrap();
        assert!(scalar_product(&one, 2, 4).is_zero());
        assert_eq!(scalar_product(&one, 2, 2), MultiPoly::one(Z));
        let f = parse_unipoly("x^2 + x", Z).unwrap();
        assert_eq!(
            scalar_product(&f, 1, 2),
            poly_of(&[&[(1, 2)], &[(1, 1), (1, 2)], &[(1, 2), (2, 2)]])
        );
        assert!(scalar_product(&UniPoly::zero(Z), 1, 3).is_zero());
    }

    #[test]
    fn substitution_cross_checks_matrix_power() {
        let mut c = UTMatrix::zero(4, Z);
        for (pos, v) in [
            ((2, 2), 1),
            ((2, 3), 2),
            ((2, 4), 3),
            ((3, 4), 4),
            ((4, 4), 5),
        ] {
            c.set(pos.0, pos.1, RingElem::from_i64(Z, v)).unwrap();
        }
        let p = path_poly(Z, 2, 4, 2);
        let v = multi_subst_matrix(&p, &c).unwrap();
        assert_eq!(v, RingElem::from_i64(Z, 26));
        assert_eq!(c.pow(2).get(2, 4), v);
    }

    #[test]
    fn out_of_range_variables_are_zero() {
        let p = MultiPoly::var(Z, 5, 7).unwrap();
        let c = UTMatrix::identity(4, Z);
        assert!(multi_subst_matrix(&p, &c).unwrap().is_zero());
        let one = MultiPoly::one(Z);
        assert!(multi_subst_matrix(&one, &c).unwrap().is_one());
    }

    #[test]
    fn power_identity_randomized() {
        // [C^k]_{ij} = p_ij^(k)(C) over T_4(Z/5)
        let ring = RingSpec::Modular(5);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..60 {
            let mut c = UTMatrix::zero(4, ring);
            for (i, j) in upper_positions(4) {
                c.set(i, j, RingElem::from_i64(ring, rng.gen_range(0..5)))
                    .unwrap();
            }
            for k in 0..=6 {
                let ck = c.pow(k);
                for (i, j) in upper_positions(4) {
                    assert_eq!(
                        ck.get(i, j),
                        multi_subst_matrix(&path_poly(ring, i, j, k), &c).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn entry_identity_randomized() {
        // [f(C)]_{ij} = <f, p_ij>(C)
        let ring = RingSpec::Modular(6);
        let mut rng = ChaCha8Rng::seed_from_u64(78);
        for _ in 0..80 {
            let coeffs: Vec<i64> = (0..rng.gen_range(1..6))
                .map(|_| rng.gen_range(0..6))
                .collect();
            let f = UniPoly::from_ints(ring, &coeffs);
            let mut c = UTMatrix::zero(4, ring);
            for (i, j) in upper_positions(4) {
                c.set(i, j, RingElem::from_i64(ring, rng.gen_range(0..6)))
                    .unwrap();
            }
            let fc = crate::triangular::scalar_subst(&f, &c).unwrap();
            for (i, j) in upper_positions(4) {
                assert_eq!(
                    fc.get(i, j),
                    multi_subst_matrix(&scalar_product(&f, i, j), &c).unwrap()
                );
            }
        }
    }

    #[test]
    fn zero_row_or_column_kills_entry() {
        // If row i or column j of C is zero then <f, p_ij>(C) = 0. For
        // i = j the k = 0 term contributes f_0 regardless of C, so the
        // diagonal case needs a vanishing constant term.
        let ring = RingSpec::Modular(7);
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for _ in 0..40 {
            let coeffs: Vec<i64> = (0..rng.gen_range(1..6))
                .map(|_| rng.gen_range(0..7))
                .collect();
            let f = UniPoly::from_ints(ring, &coeffs);
            let mut c = UTMatrix::zero(3, ring);
            for (i, j) in upper_positions(3) {
                c.set(i, j, RingElem::from_i64(ring, rng.gen_range(0..7)))
                    .unwrap();
            }
            let mut zero_row2 = c.clone();
            for j in 2..=3 {
                zero_row2.set(2, j, RingElem::zero(ring)).unwrap();
            }
            let mut zero_col3 = c.clone();
            for i in 1..=3 {
                zero_col3.set(i, 3, RingElem::zero(ring)).unwrap();
            }
            for k in 1..=4 {
                assert!(multi_subst_matrix(&path_poly(ring, 2, 3, k), &zero_row2)
                    .unwrap()
                    .is_zero());
                assert!(multi_subst_matrix(&path_poly(ring, 1, 3, k), &zero_col3)
                    .unwrap()
                    .is_zero());
            }
            assert!(multi_subst_matrix(&scalar_product(&f, 2, 3), &zero_row2)
                .unwrap()
                .is_zero());
            assert!(multi_subst_matrix(&scalar_product(&f, 1, 3), &zero_col3)
                .unwrap()
                .is_zero());
            let no_const = f.sub(&UniPoly::constant(f.coeff(0))).unwrap();
            assert!(
                multi_subst_matrix(&scalar_product(&no_const, 2, 2), &zero_row2)
                    .unwrap()
                    .is_zero()
            );
        }
    }

    #[test]
    fn shift_matches_path_polys() {
        assert_eq!(
            shift_canonical(&path_poly(Z, 2, 4, 2), -1).unwrap(),
            path_poly(Z, 1, 3, 2)
        );
        let p = path_poly(Z, 1, 3, 3);
        assert_eq!(shift_canonical(&p, 0).unwrap(), p);
        assert_eq!(
            shift_canonical(&shift_canonical(&p, 4).unwrap(), -4).unwrap(),
            p
        );
        assert!(matches!(
            shift_canonical(&p, -1),
            Err(Error::IndexUnderflow { .. })
        ));
    }

    #[test]
    fn image_set_depends_only_on_distance() {
        // full image sets of <f, p_ij> and <f, p_{i+s, j+s}> agree
        let ring = RingSpec::Modular(3);
        let mut rng = ChaCha8Rng::seed_from_u64(80);
        for _ in 0..10 {
            let coeffs: Vec<i64> = (0..rng.gen_range(1..5))
                .map(|_| rng.gen_range(0..3))
                .collect();
            let f = UniPoly::from_ints(ring, &coeffs);
            for dist in 0..=2usize {
                let images: Vec<std::collections::BTreeSet<u64>> = (1..=3)
                    .map(|start| collect_image(&scalar_product(&f, start, start + dist), 3))
                    .collect();
                assert!(images.windows(2).all(|w| w[0] == w[1]), "f={f} dist={dist}");
            }
        }
    }

    fn collect_image(p: &MultiPoly, m: u64) -> std::collections::BTreeSet<u64> {
        let vars: Vec<VarId> = p.vars().into_iter().collect();
        let mut out = std::collections::BTreeSet::new();
        let count = (m as usize).pow(vars.len() as u32);
        for mut idx in 0..count {
            let mut values = Vec::with_capacity(vars.len());
            for _ in 0..vars.len() {
                values.push((idx % m as usize) as u64);
                idx /= m as usize;
            }
            let v = p
                .eval_with(|v| {
                    let k = vars.binary_search(&v).unwrap();
                    RingElem::Mod {
                        value: values[k],
                        modulus: m,
                    }
                })
                .unwrap();
            if let RingElem::Mod { value, .. } = v {
                out.insert(value);
            }
        }
        out
    }

    #[test]
    fn image_in_ideal_examples() {
        let ring = RingSpec::Modular(2);
        let opts = EnumOpts::default();
        // x_{11}^2 + x_{11} vanishes identically over Z/2
        let p = MultiPoly::from_terms(
            ring,
            [
                (mono(&[(1, 1), (1, 1)]), RingElem::one(ring)),
                (mono(&[(1, 1)]), RingElem::one(ring)),
            ],
        )
        .unwrap();
        assert_eq!(image_in_ideal(&p, 0, &opts).unwrap(), ImageCheck::InIdeal);

        // x_{11} + x_{12} escapes; lexicographically first failure is
        // x_{11} = 0, x_{12} = 1
        let q = MultiPoly::from_terms(
            ring,
            [
                (mono(&[(1, 1)]), RingElem::one(ring)),
                (mono(&[(1, 2)]), RingElem::one(ring)),
            ],
        )
        .unwrap();
        match image_in_ideal(&q, 0, &opts).unwrap() {
            ImageCheck::Escapes { assignment, value } => {
                assert_eq!(
                    assignment.get((1, 1)),
                    RingElem::Mod {
                        value: 0,
                        modulus: 2
                    }
                );
                assert_eq!(
                    assignment.get((1, 2)),
                    RingElem::Mod {
                        value: 1,
                        modulus: 2
                    }
                );
                assert_eq!(
                    value,
                    RingElem::Mod {
                        value: 1,
                        modulus: 2
                    }
                );
            }
            other => panic!("expected escape, got {other:?}"),
        }

        let zero = MultiPoly::zero(ring);
        assert_eq!(
            image_in_ideal(&zero, 0, &opts).unwrap(),
            ImageCheck::InIdeal
        );
    }

    #[test]
    fn image_in_ideal_proper_ideal() {
        // 2*x_{11} over Z/6 always lands in (2); x_{11} does not
        let ring = RingSpec::Modular(6);
        let opts = EnumOpts::default();
        let two_x = MultiPoly::var(ring, 1, 1)
            .unwrap()
            .scale(&RingElem::from_i64(ring, 2))
            .unwrap();
        assert_eq!(
            image_in_ideal(&two_x, 2, &opts).unwrap(),
            ImageCheck::InIdeal
        );
        let x = MultiPoly::var(ring, 1, 1).unwrap();
        assert!(matches!(
            image_in_ideal(&x, 2, &opts).unwrap(),
            ImageCheck::Escapes { .. }
        ));
        // the full ring: t coprime to m accepts everything
        assert_eq!(image_in_ideal(&x, 5, &opts).unwrap(), ImageCheck::InIdeal);
    }

    #[test]
    fn image_budget() {
        let ring = RingSpec::Modular(5);
        // 6 variables at modulus 5 needs 15625 points
        let f = UniPoly::from_ints(ring, &[0, 0, 0, 1]);
        let p = scalar_product(&f, 1, 3);
        let tight = EnumOpts {
            budget: 100,
            threads: 1,
        };
        assert!(matches!(
            image_in_ideal(&p, 0, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(image_in_ideal(&p, 0, &EnumOpts::default()).is_ok());
    }
}
