//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are small integer indices; the caller owns the mapping between
//! indices and names (see [`Polynomial::parse`] and [`Polynomial::display_with`]).
//! Variable `0` is the largest in the monomial order, so a scheme's listing
//! order carries over directly.

mod monomial;
mod parse;
mod poly;

pub use monomial::{Monomial, Var};
pub use parse::ParseError;
pub use poly::{Coeff, EvalError, Polynomial, SubstError};

/// Polynomials over arbitrary-precision integers.
pub type IntPoly = Polynomial<num_bigint::BigInt>;
