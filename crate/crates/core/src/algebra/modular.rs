//! Polynomial gcd over ℚ by reduction modulo word-sized primes.
//!
//! Inputs are scaled to primitive integer polynomials. For each prime not
//! dividing either leading coefficient the monic gcd is computed over 𝔽ₚ,
//! scaled by the gcd of the leading coefficients, and the images are combined
//! by Chinese remaindering. Images of higher degree than the smallest seen so
//! far come from unlucky primes and are discarded. Once the reconstructed
//! candidate stops changing it is checked by exact division of both inputs;
//! a candidate that divides both and has the minimal modular degree is the
//! gcd, so the result never depends on a probabilistic argument.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Polynomial, Rational};

/// Below this degree the Euclidean algorithm over ℚ is cheaper.
const MODULAR_THRESHOLD: usize = 6;

const PRIME_COUNT: usize = 256;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from 2⁶².
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut candidate = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(candidate) {
                out.push(candidate);
            }
            candidate -= 2;
        }
        out
    })
}

/// Scale to integer coefficients with content one and positive leading coefficient.
fn primitive_integer(p: &Polynomial<Rational>) -> Vec<BigInt> {
    let lcm = Rational::denominator_lcm(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(ints)
}

fn primitive_part(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let negate = ints.last().is_some_and(|c| c.is_negative());
    if !content.is_one() || negate {
        let divisor = if negate { -content } else { content };
        for c in &mut ints {
            *c = &*c / &divisor;
        }
    }
    ints
}

fn reduce(ints: &[BigInt], p: u64) -> Vec<u64> {
    let modulus = BigInt::from(p);
    ints.iter()
        .map(|c| c.mod_floor(&modulus).to_u64().expect("residue fits"))
        .collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn make_monic(v: &mut [u64], p: u64) {
    if let Some(&lc) = v.last() {
        if lc != 1 {
            let inv = pow_mod(lc, p - 2, p);
            for c in v.iter_mut() {
                *c = mul_mod(*c, inv, p);
            }
        }
    }
}

/// `a mod b` over 𝔽ₚ with `b` monic and nonzero.
fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let top = a.len() - 1;
        let factor = a[top];
        if factor != 0 {
            let shift = top - db;
            for (j, &bj) in b[..db].iter().enumerate() {
                if bj != 0 {
                    let t = mul_mod(factor, bj, p);
                    let slot = &mut a[shift + j];
                    *slot = if *slot >= t { *slot - t } else { *slot + p - t };
                }
            }
        }
        a.pop();
    }
    trim(&mut a);
    a
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(&mut a, p);
    make_monic(&mut b, p);
    while !b.is_empty() {
        let mut r = rem_mod(a, &b, p);
        make_monic(&mut r, p);
        a = b;
        b = r;
    }
    a
}

fn symmetric_lift(image: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half = modulus >> 1;
    image
        .iter()
        .map(|c| if c > &half { c - modulus } else { c.clone() })
        .collect()
}

fn divides(divisor: &Polynomial<Rational>, target: &[BigInt]) -> bool {
    let target = Polynomial::new(target.iter().cloned().map(Rational::from).collect());
    matches!(target.divrem(divisor), Ok((_, r)) if r.is_zero())
}

/// Monic gcd of two nonzero polynomials, or `None` when the inputs are small
/// enough that the caller's Euclidean fallback is preferable.
pub(super) fn gcd(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> Option<Polynomial<Rational>> {
    let (da, db) = (a.degree()?, b.degree()?);
    if da.min(db) < MODULAR_THRESHOLD {
        return None;
    }
    let ia = primitive_integer(a);
    let ib = primitive_integer(b);
    let lca = ia.last().expect("nonzero");
    let lcb = ib.last().expect("nonzero");
    let gamma = lca.gcd(lcb);

    let mut min_degree = usize::MAX;
    let mut modulus = BigInt::one();
    let mut image: Vec<BigInt> = Vec::new();
    let mut previous: Option<Vec<BigInt>> = None;

    for &p in primes() {
        let big_p = BigInt::from(p);
        if (lca % &big_p).is_zero() || (lcb % &big_p).is_zero() {
            continue;
        }
        let mut g = gcd_mod(reduce(&ia, p), reduce(&ib, p), p);
        let degree = g.len() - 1;
        if degree == 0 {
            return Some(Polynomial::one());
        }
        if degree > min_degree {
            continue;
        }
        let gamma_p = gamma.mod_floor(&big_p).to_u64().expect("residue fits");
        for c in g.iter_mut() {
            *c = mul_mod(*c, gamma_p, p);
        }
        if degree < min_degree {
            min_degree = degree;
            modulus = big_p;
            image = g.into_iter().map(BigInt::from).collect();
            previous = None;
            continue;
        }
        // Chinese remaindering: x ≡ c (mod M), x ≡ r (mod p).
        let m_inv = pow_mod(modulus.mod_floor(&big_p).to_u64().expect("fits"), p - 2, p);
        for (c, r) in image.iter_mut().zip(g) {
            let c_mod = c.mod_floor(&big_p).to_u64().expect("fits");
            let diff = if r >= c_mod { r - c_mod } else { r + p - c_mod };
            let t = mul_mod(diff, m_inv, p);
            *c += &modulus * BigInt::from(t);
        }
        modulus *= &big_p;

        let candidate = primitive_part(symmetric_lift(&image, &modulus));
        if previous.as_ref() == Some(&candidate) {
            let poly = Polynomial::new(candidate.iter().cloned().map(Rational::from).collect());
            if divides(&poly, &ia) && divides(&poly, &ib) {
                return Some(poly.monic());
            }
        }
        previous = Some(candidate);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn primes_are_prime_and_large() {
        let ps = primes();
        assert_eq!(ps.len(), PRIME_COUNT);
        assert!(ps.iter().all(|&p| p > 1 << 61));
        assert!(is_prime(2_305_843_009_213_693_951)); // 2⁶¹ − 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn agrees_with_euclid_on_cyclotomic_products() {
        let one_minus = |k: usize| Polynomial::<Rational>::one_minus_monomial(Rational::one(), k);
        let a = (1..=9).fold(Polynomial::one(), |acc, k| acc.mul(&one_minus(k)));
        let b = (4..=13).step_by(3).fold(Polynomial::one(), |acc, k| acc.mul(&one_minus(k).pow(2)));
        let modular = gcd(&a, &b).expect("large enough for the modular path");
        assert_eq!(modular, a.euclid_gcd(&b).unwrap());
    }

    #[test]
    fn large_coefficients() {
        let big: Rational = "123456789012345678901234567/1000000007".parse().unwrap();
        let f = Polynomial::new(vec![big.clone(), Rational::from(-3), Rational::one()]);
        let g1 = Polynomial::from_i64s(&[5, 0, 0, 0, 0, 0, 1]);
        let g2 = Polynomial::from_i64s(&[7, 0, 0, 0, 0, 0, 0, 2]);
        let a = f.mul(&g1);
        let b = f.mul(&g2).scale(&big);
        assert_eq!(gcd(&a, &b).unwrap(), f.monic());
    }
}
