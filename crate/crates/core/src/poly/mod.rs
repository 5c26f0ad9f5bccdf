//! Univariate polynomials over a [`crate::ring::RingSpec`] and multivariate
//! polynomials in the doubly indexed variables `x_{i,j}` with `i <= j`.

mod multi;
mod parse;
mod uni;

pub use multi::{Monomial, MultiPoly, VarId};
pub use parse::parse_unipoly;
pub use uni::UniPoly;
