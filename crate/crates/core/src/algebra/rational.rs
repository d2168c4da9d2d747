use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;
use crate::error::{Error, Result};

/// Arbitrary-precision rational number in lowest terms with a positive
/// denominator. Zero is `0/1`.
///
/// Values whose numerator and denominator both fit in an `i64` are stored
/// inline; everything else falls back to a heap-allocated big rational. The
/// inline form is used whenever it is possible, so derived equality and
/// hashing see one representation per value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    /// Reduce `n / d` given in 128-bit intermediates; `d` must be nonzero.
    fn from_i128(n: i128, d: i128) -> Rational {
        debug_assert!(d != 0);
        if n == 0 {
            return Rational(Repr::Small(0, 1));
        }
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(value: BigRational) -> Rational {
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(value)),
        }
    }

    fn from_big_integer(value: BigInt) -> Rational {
        match value.to_i64() {
            Some(n) => Rational(Repr::Small(n, 1)),
            None => Rational(Repr::Big(BigRational::from_integer(value))),
        }
    }

    /// The value as an integer when its denominator is 1.
    fn as_big_integer(&self) -> Option<Cow<'_, BigInt>> {
        match &self.0 {
            Repr::Small(n, 1) => Some(Cow::Owned(BigInt::from(*n))),
            Repr::Big(b) if b.denom().is_one() => Some(Cow::Borrowed(b.numer())),
            _ => None,
        }
    }

    /// Applies `op` directly to integer operands, bypassing gcd normalization.
    fn integer_op(&self, rhs: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Option<Rational> {
        let (a, b) = (self.as_big_integer()?, rhs.as_big_integer()?);
        Some(Rational::from_big_integer(op(&a, &b)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self::from_big(BigRational::from_integer(value.into()))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            Field::neg(self)
        } else {
            self.clone()
        }
    }

    /// Numerator and denominator as `i64` when both fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(n, d) => Some((*n, *d)),
            Repr::Big(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Larger of |numerator| and denominator.
    pub fn height(&self) -> BigInt {
        let n = self.numer().abs();
        let d = self.denom();
        if n > d {
            n
        } else {
            d
        }
    }

    /// Least common multiple of the denominators of `values`.
    pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
        values
            .into_iter()
            .fold(BigInt::one(), |acc, v| match &v.0 {
                Repr::Small(_, 1) => acc,
                _ => acc.lcm(&v.denom()),
            })
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational(Repr::Small(value, 1))
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational::from_big(value)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `-p`, `p/q`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational(Repr::Small(0, 1))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn from_i64(value: i64) -> Self {
        Rational::from(value)
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    fn add(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Rational(Repr::Small(s, 1)),
                None => Rational::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => self
                .integer_op(rhs, |a, b| a + b)
                .unwrap_or_else(|| Rational::from_big(self.to_big() + rhs.to_big())),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_sub(*c) {
                Some(s) => Rational(Repr::Small(s, 1)),
                None => Rational::from_i128(*a as i128 - *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d - c * b, b * d)
            }
            _ => self
                .integer_op(rhs, |a, b| a - b)
                .unwrap_or_else(|| Rational::from_big(self.to_big() - rhs.to_big())),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Rational(Repr::Small(p, 1)),
                None => Rational::from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::zero(),
            _ => self
                .integer_op(rhs, |a, b| a * b)
                .unwrap_or_else(|| Rational::from_big(self.to_big() * rhs.to_big())),
        }
    }

    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Rational::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(b) => Rational::from_big(-b),
        }
    }

    fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::DivisionByZero),
            Repr::Small(n, d) => Ok(Rational::from_i128(*d as i128, *n as i128)),
            Repr::Big(b) => Ok(Rational::from_big(b.recip())),
        }
    }

    fn is_atomic(&self) -> bool {
        self.is_integer() && !self.is_negative()
    }

    fn poly_gcd(
        a: &super::Polynomial<Self>,
        b: &super::Polynomial<Self>,
    ) -> Option<super::Polynomial<Self>> {
        super::modular::gcd(a, b)
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Field::add(&self, &rhs)
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Field::sub(&self, &rhs)
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Field::mul(&self, &rhs)
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Field::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn textbook_arithmetic() {
        assert_eq!(Field::add(&r("1/2"), &r("1/3")), r("5/6"));
        let diff = Field::sub(&r("3/4"), &r("3/4"));
        assert_eq!(diff, Rational::zero());
        assert_eq!(diff.numer(), BigInt::from(0));
        assert_eq!(diff.denom(), BigInt::from(1));
        assert_eq!(Field::mul(&r("-2/3"), &r("9/4")), r("-3/2"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Field::div(&r("2/3"), &r("0/1")), Err(Error::DivisionByZero));
        assert_eq!(Rational::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(Rational::new(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_form() {
        let x = Rational::new(6, -8).unwrap();
        assert_eq!(x.numer(), BigInt::from(-3));
        assert_eq!(x.denom(), BigInt::from(4));
        assert_eq!(x.to_string(), "-3/4");
        assert_eq!(r(" 10/5 ").to_string(), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!("1/x".parse::<Rational>(), Err(Error::Parse(_))));
        assert!(matches!("".parse::<Rational>(), Err(Error::Parse(_))));
        assert_eq!("3/0".parse::<Rational>(), Err(Error::DivisionByZero));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(r("2/3").powi(-2).unwrap(), r("9/4"));
        assert_eq!(r("2/3").powi(0).unwrap(), Rational::one());
        assert!(Rational::zero().powi(-1).is_err());
    }

    #[test]
    fn overflow_promotes_and_shrinks_back() {
        let big = Rational::from(i64::MAX);
        let sum = Field::add(&big, &big);
        assert_eq!(sum.to_string(), "18446744073709551614");
        assert!(sum.to_i64_pair().is_none());
        let back = Field::sub(&sum, &big);
        assert_eq!(back.to_i64_pair(), Some((i64::MAX, 1)));
        assert_eq!(Field::neg(&Rational::from(i64::MIN)).to_string(), "9223372036854775808");
        let min_inv = Rational::from(i64::MIN).inv().unwrap();
        assert_eq!(Field::mul(&min_inv, &Rational::from(i64::MIN)), Rational::one());
    }

    fn small() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn fast_path_agrees_with_big_rationals(a in small(), b in small()) {
            let (ba, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!(Field::add(&a, &b).to_big(), &ba + &bb);
            prop_assert_eq!(Field::sub(&a, &b).to_big(), &ba - &bb);
            prop_assert_eq!(Field::mul(&a, &b).to_big(), &ba * &bb);
            if !b.is_zero() {
                prop_assert_eq!(Field::div(&a, &b).unwrap().to_big(), &ba / &bb);
            }
            prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        }

        #[test]
        fn field_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(Field::add(&Field::add(&a, &b), &c), Field::add(&a, &Field::add(&b, &c)));
            prop_assert_eq!(
                Field::mul(&a, &Field::add(&b, &c)),
                Field::add(&Field::mul(&a, &b), &Field::mul(&a, &c))
            );
            prop_assert_eq!(Field::mul(&a, &b), Field::mul(&b, &a));
        }
    }
}
