use std::fmt;

use super::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial over a field.
///
/// `coeffs[k]` is the coefficient of the k-th power of the indeterminate.
/// The last stored coefficient is never zero; the zero polynomial is the empty
/// vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c · xᵏ`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    /// `1 − c·xᵏ`, the building block of every q-Pochhammer product.
    pub fn one_minus_monomial(c: F, k: usize) -> Self {
        Self::one().sub(&Self::monomial(c, k))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Number of nonzero coefficients.
    pub fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            if !s.is_zero() {
                *c = c.add(s);
            }
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), F::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            if !s.is_zero() {
                *c = c.sub(s);
            }
        }
        Self::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a.mul(b);
                coeffs[i + j] = coeffs[i + j].add(&t);
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by `xᵏ`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..exp {
            result = result.mul(self);
        }
        result
    }

    /// Quotient and remainder with `deg(remainder) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d_deg = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(n_deg) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n_deg < d_deg {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = divisor.coeffs[d_deg].inv()?;
        let monic_divisor = lead_inv.is_one();
        // Only the nonzero lower coefficients of the divisor take part in the
        // elimination, so sparse divisors such as 1 − qᵏ cost O(deg) per step.
        let lower: Vec<(usize, &F)> = divisor.coeffs[..d_deg]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); n_deg - d_deg + 1];
        for k in (0..=n_deg - d_deg).rev() {
            let top = &rem[k + d_deg];
            if top.is_zero() {
                continue;
            }
            let factor = if monic_divisor {
                top.clone()
            } else {
                top.mul(&lead_inv)
            };
            for &(j, c) in &lower {
                rem[k + j] = rem[k + j].sub(&factor.mul(c));
            }
            rem[k + d_deg] = F::zero();
            quot[k] = factor;
        }
        rem.truncate(d_deg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InternalNonExactDivision(format!(
                "({self}) / ({divisor})"
            )));
        }
        Ok(q)
    }

    /// Scale so the leading coefficient is one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        if !self.is_zero() && !other.is_zero() {
            if let Some(g) = F::poly_gcd(self, other) {
                return Ok(g);
            }
        }
        self.euclid_gcd(other)
    }

    /// Monic greatest common divisor by the Euclidean algorithm over `F`.
    pub fn euclid_gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Ok(Self::one());
            }
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    /// Horner evaluation.
    pub fn eval(&self, point: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(point).add(c))
    }

    /// Evaluate at a point of another field, mapping coefficients through `embed`.
    pub fn eval_in<G: Field>(&self, point: &G, embed: impl Fn(&F) -> G) -> G {
        self.coeffs
            .iter()
            .rev()
            .fold(G::zero(), |acc, c| acc.mul(point).add(&embed(c)))
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Adapter that prints with a chosen variable name.
    pub fn display_in<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, var }
    }
}

pub struct PolyDisplay<'a, F> {
    poly: &'a Polynomial<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if c.is_atomic() || !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let body = if c.is_atomic() || !body.contains(['+', '-', '/']) {
                body
            } else {
                format!("({body})")
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = body == "1";
            match k {
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    if k == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{k}", self.var)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{self}]")
    }
}

impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        Polynomial::add(self, rhs)
    }
}

impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        Polynomial::sub(self, rhs)
    }
}

impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        Polynomial::mul(self, rhs)
    }
}

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type P = Polynomial<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_i64s(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p(&[1, -1]).mul(&p(&[1, 1])), p(&[1, 0, -1]));
    }

    #[test]
    fn exact_division() {
        let (q, r) = p(&[-1, 0, 1]).divrem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn zero_is_additive_identity() {
        let f = p(&[3, 0, -2, 5]);
        assert_eq!(P::zero().add(&f), f);
        assert_eq!(f.sub(&f), P::zero());
    }

    #[test]
    fn divrem_by_zero_fails() {
        assert_eq!(p(&[1, 2]).divrem(&P::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(P::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[4]).degree(), Some(0));
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
    }

    #[test]
    fn divrem_non_monic_divisor() {
        // (2x² + 3x + 1) = (2x + 1)(x + 1)
        let (q, r) = p(&[1, 3, 2]).divrem(&p(&[1, 2])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 0, 1]).divrem(&p(&[0, 2])).unwrap();
        assert_eq!(q, P::new(vec!["0".parse().unwrap(), "0".parse().unwrap(), "1/2".parse().unwrap()]));
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn gcd_examples() {
        // q² − 1 and q² − 2q + 1 share q − 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
        // gcd with zero is the monic input
        assert_eq!(p(&[2, 4]).gcd(&P::zero()).unwrap(), p(&[1, 2]).monic());
        // q³ − q = q(q−1)(q+1) and q² + q = q(q+1): gcd q² + q
        assert_eq!(p(&[0, -1, 0, 1]).gcd(&p(&[0, 1, 1])).unwrap(), p(&[0, 1, 1]));
        assert_eq!(P::zero().gcd(&P::zero()), Err(Error::UndefinedGcd));
    }

    #[test]
    fn gcd_oracle_by_factors() {
        // both inputs built from known linear factors; the gcd is the shared part
        let lin = |r: i64| p(&[-r, 1]);
        let a = lin(1).mul(&lin(2)).mul(&lin(2)).mul(&lin(5));
        let b = lin(2).mul(&lin(5)).mul(&lin(7)).scale(&Rational::from(3));
        assert_eq!(a.gcd(&b).unwrap(), lin(2).mul(&lin(5)));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, -1, 0, 1]).display_in("q").to_string(), "1 - q - q^2 + q^4");
        assert_eq!(p(&[0, 2]).display_in("q").to_string(), "2*q");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn horner() {
        assert_eq!(p(&[1, 2, 3]).eval(&Rational::from(2)), Rational::from(17));
    }
}
