//! Exact rational scalars and sparse multivariate polynomial arithmetic.
//!
//! Coefficients are arbitrary-precision rationals stored in lowest terms with a
//! positive denominator (`num_rational::BigRational` maintains exactly that
//! canonical form). Exponent vectors are nonnegative integers of a fixed
//! dimension; polynomials keep only nonzero coefficients in graded
//! lexicographic term order, so structural equality is semantic equality.

mod parse;
mod polynomial;

pub use parse::{format_polynomial, format_rational, parse_polynomial, parse_rational};
pub use polynomial::{Exponent, PolyVector, Polynomial};

/// Exact rational scalar used for coefficients and rate constants.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer pair. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Shorthand for an integer-valued rational.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(num.into())
}
