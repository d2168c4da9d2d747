use std::collections::HashMap;
use std::fmt;

use super::{Field, Polynomial};
use crate::error::{Error, Result};

/// Quotient of two polynomials in canonical form: coprime numerator and
/// denominator, denominator monic. Two rational functions are equal exactly
/// when their canonical forms are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<F> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    /// Reduce `num / den` to canonical form.
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero_value());
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        Ok(Self::with_monic_den(num, den))
    }

    fn with_monic_den(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        let lc = den.leading().expect("denominator is nonzero").clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.inv().expect("leading coefficient is nonzero");
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    fn zero_value() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn from_polynomial(num: Polynomial<F>) -> Self {
        RationalFunction {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    /// The indeterminate.
    pub fn var() -> Self {
        Self::from_polynomial(Polynomial::x())
    }

    /// `c · xᵏ` for any integer `k`.
    pub fn monomial(c: F, k: i64) -> Self {
        let mag = usize::try_from(k.unsigned_abs()).expect("exponent out of range");
        if k >= 0 {
            Self::from_polynomial(Polynomial::monomial(c, mag))
        } else {
            Self::with_monic_den(Polynomial::constant(c), Polynomial::monomial(F::one(), mag))
        }
    }

    pub fn numer(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Exact value at `point`.
    pub fn evaluate(&self, point: &F) -> Result<F> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluation(point.to_string()));
        }
        self.num.eval(point).div(&d)
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> RatFuncDisplay<'a, F> {
        RatFuncDisplay { f: self, var }
    }

    /// Sum of many terms with a single reduction at the end.
    ///
    /// Terms are grouped by denominator, the least common multiple of the
    /// distinct denominators is built incrementally, and numerators are carried
    /// over it unreduced. Only the final fraction goes through a gcd.
    pub fn sum_deferred<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let mut groups: HashMap<Polynomial<F>, Polynomial<F>> = HashMap::new();
        let mut order = Vec::new();
        for item in items {
            if item.num.is_zero() {
                continue;
            }
            match groups.get_mut(&item.den) {
                Some(acc) => *acc = acc.add(&item.num),
                None => {
                    order.push(item.den.clone());
                    groups.insert(item.den, item.num);
                }
            }
        }
        let mut lcm = Polynomial::one();
        let mut acc = Polynomial::zero();
        for den in order {
            let num = &groups[&den];
            if num.is_zero() {
                continue;
            }
            let (cofactor, rem) = lcm.divrem(&den).expect("monic denominator");
            let cofactor = if rem.is_zero() {
                cofactor
            } else {
                let g = lcm.gcd(&den).expect("nonzero inputs");
                let extend = den.exact_div(&g).expect("gcd divides");
                acc = acc.mul(&extend);
                lcm = lcm.mul(&extend);
                lcm.exact_div(&den).expect("lcm is a multiple")
            };
            acc = acc.add(&num.mul(&cofactor));
        }
        Self::new(acc, lcm).expect("lcm is nonzero")
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }

    fn from_i64(value: i64) -> Self {
        Self::constant(F::from_i64(value))
    }

    fn from_rational(value: &super::Rational) -> Self {
        Self::constant(F::from_rational(value))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone())
                .expect("denominator is nonzero");
        }
        // Henrici: with g = gcd(b, d), a/b + c/d = (a·d/g + c·b/g) / (b·d/g),
        // and only g can share factors with the new numerator.
        let g = self.den.gcd(&rhs.den).expect("nonzero denominators");
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return RationalFunction {
                num,
                den: self.den.mul(&rhs.den),
            };
        }
        let b_red = self.den.exact_div(&g).expect("gcd divides");
        let d_red = rhs.den.exact_div(&g).expect("gcd divides");
        let t = self.num.mul(&d_red).add(&rhs.num.mul(&b_red));
        if t.is_zero() {
            return Self::zero_value();
        }
        let g2 = t.gcd(&g).expect("nonzero");
        if g2.is_one() {
            RationalFunction {
                num: t,
                den: b_red.mul(&rhs.den),
            }
        } else {
            RationalFunction {
                num: t.exact_div(&g2).expect("gcd divides"),
                den: b_red.mul(&rhs.den.exact_div(&g2).expect("gcd divides")),
            }
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_value();
        }
        let g1 = self.num.gcd(&rhs.den).expect("nonzero");
        let g2 = rhs.num.gcd(&self.den).expect("nonzero");
        let cancel = |p: &Polynomial<F>, g: &Polynomial<F>| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        RationalFunction {
            num: cancel(&self.num, &g1).mul(&cancel(&rhs.num, &g2)),
            den: cancel(&self.den, &g2).mul(&cancel(&rhs.den, &g1)),
        }
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        Self::sum_deferred(items)
    }

    fn is_atomic(&self) -> bool {
        false
    }
}

pub struct RatFuncDisplay<'a, F> {
    f: &'a RationalFunction<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for RatFuncDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.num.display_in(self.var);
        if self.f.den.is_one() {
            return write!(f, "{num}");
        }
        let den = self.f.den.display_in(self.var);
        let wrap_num = self.f.num.support_len() > 1;
        let wrap_den = self.f.den.support_len() > 1 || !self.f.den.leading().is_some_and(F::is_one);
        match (wrap_num, wrap_den) {
            (true, true) => write!(f, "({num})/({den})"),
            (true, false) => write!(f, "({num})/{den}"),
            (false, true) => write!(f, "{num}/({den})"),
            (false, false) => write!(f, "{num}/{den}"),
        }
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction[{self}]")
    }
}
