//! Upper triangular matrices over an exact ring, polynomials with matrix
//! coefficients, the coefficient-transpose isomorphism between the two views,
//! right/left substitution, and interval restriction.

mod json;
mod matpoly;
mod matrix;

pub use json::{
    mat_poly_from_json, mat_poly_to_json, ut_matrix_entries_json, ut_matrix_from_json,
    ut_matrix_to_json,
};
pub use matpoly::{phi, phi_inv, scalar_subst, MatrixPoly, PolyMatrix};
pub use matrix::{upper_positions, UTMatrix};
