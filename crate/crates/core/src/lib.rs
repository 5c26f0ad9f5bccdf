//! Exact-arithmetic library for polynomial functions on upper triangular
//! matrix algebras `T_n(R)`.
//!
//! The crate decides membership in integer-valued and null-polynomial sets
//! two independent ways: a fast structural path that reduces a matrix
//! question to entry-wise scalar questions through path polynomials, and an
//! exhaustive brute-force oracle over finite rings. It also computes
//! degree-bounded null-polynomial bases by exact linear algebra and runs
//! randomized verification of the ideal/ring closure properties.

pub mod decision;
pub mod enumerate;
pub mod error;
pub mod pathpoly;
pub mod poly;
pub mod ring;
pub mod structures;
#[cfg(test)]
pub(crate) mod testutil;
pub mod triangular;

pub use decision::{characterize, Decision, Method, ProblemConfig, Side, Verdict, Witness};
pub use enumerate::{EnumOpts, DEFAULT_BUDGET};
pub use error::{Error, ParseError, Result};
pub use pathpoly::{
    image_in_ideal, multi_subst_matrix, path_poly, scalar_product, shift_canonical, ImageCheck,
    VarAssignment,
};
pub use poly::{parse_unipoly, Monomial, MultiPoly, UniPoly, VarId};
pub use ring::{RingElem, RingSpec};
pub use structures::{iv_generators, null_basis, NullBasis, Report};
pub use triangular::{phi, phi_inv, scalar_subst, MatrixPoly, PolyMatrix, UTMatrix};
