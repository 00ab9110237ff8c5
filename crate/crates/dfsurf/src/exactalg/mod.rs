//! Exact arithmetic over the rationals: univariate polynomials in `x`,
//! Laurent polynomials, sparse multivariate polynomials and rational
//! functions, together with the x-adic valuation and truncation operations
//! the tree and surface modules are built on.

mod laurent;
mod linsolve;
mod multipoly;
mod parse;
mod poly;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use linsolve::{solve_linear, LinearSolution};
pub use multipoly::MultiPoly;
pub use parse::{parse_multipoly, parse_poly, parse_rational};
pub use poly::Poly;
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar. `BigRational` keeps the invariants we need:
/// reduced fraction, positive denominator, canonical zero.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactAlgError {
    #[error("polynomial is not divisible by x^{0}")]
    NotDivisible(usize),
    #[error("unbound variable `{0}` in substitution")]
    UnboundVariable(String),
    #[error("division by a zero polynomial")]
    ZeroDenominator,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
