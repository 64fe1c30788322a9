//! Exact arithmetic over ℚ(i): scalars, polynomials, matrices.

mod gaussian;
mod matrix;
mod poly;

pub use gaussian::{fmt_rat, parse_rat, rat, rat_to_f64, GaussRat, Rational};
pub use matrix::{Matrix, Rref, SparseMat};
pub use poly::{homogeneous_subst, monomials_of_degree, poly_arith, Monomial, MultiPoly, PolyOp, TermRecord, MAX_VARS};
