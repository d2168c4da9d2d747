//! Exact arithmetic substrate: rationals, dense univariate polynomials over a
//! field, and rational functions kept in canonical form.
//!
//! Everything above this module is written against the [`Field`] trait so the
//! same code runs over ℚ, ℚ(q), ℚ(y) or a nested field such as ℚ(x₁)(x₂).

mod field;
mod modular;
mod polynomial;
mod ratfunc;
mod rational;

pub use field::Field;
pub use polynomial::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;

/// ℚ(q): the field in which the q-identities are compared.
pub type QFunction = RationalFunction<Rational>;

/// ℚ[q].
pub type QPolynomial = Polynomial<Rational>;
