use std::fmt;
use std::hash::Hash;

use super::{Polynomial, Rational};
use crate::error::Result;

/// Exact field arithmetic.
///
/// Implementations must satisfy the field axioms without rounding. Division by
/// zero is an error, never a value. Equality must be decidable structurally,
/// so every implementor keeps its values in a canonical form.
pub trait Field:
    Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Hash + Send + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    /// Image of a rational number under the canonical embedding ℚ → F.
    fn from_rational(value: &Rational) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Integer power; negative exponents invert first.
    fn powi(&self, exp: i64) -> Result<Self> {
        let magnitude = u32::try_from(exp.unsigned_abs()).expect("exponent out of range");
        if exp < 0 {
            Ok(self.inv()?.pow(magnitude))
        } else {
            Ok(self.pow(magnitude))
        }
    }

    /// Sum of many elements. Implementors with expensive canonicalization
    /// override this to defer reduction to the end.
    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        items
            .into_iter()
            .fold(Self::zero(), |acc, item| acc.add(&item))
    }

    /// Product of many elements.
    fn product_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        items
            .into_iter()
            .fold(Self::one(), |acc, item| acc.mul(&item))
    }

    /// Field-specific polynomial gcd. `None` selects the generic Euclidean
    /// algorithm; implementors return `Some` only for a monic gcd.
    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        let _ = (a, b);
        None
    }

    /// Whether `Display` output needs parentheses when used as a coefficient.
    fn is_atomic(&self) -> bool {
        true
    }
}
