//! The four identities in q alone, decided in ℚ(q).

use super::{perturb, IdentityParams, IdentityReport};
use crate::algebra::{Field, Polynomial, QFunction, QPolynomial, Rational};
use crate::error::Result;
use crate::qseries::{complete_homogeneous, gauss_binomial, multiset_count};

use super::Mutation;

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// `1 − q^k` for `k ≥ 1`.
fn one_minus(k: i64) -> QPolynomial {
    Polynomial::one_minus_monomial(Rational::from(1), k as usize)
}

/// `±c · q^e / den` in canonical form, for `e ≥ 0`.
fn term(c: &QPolynomial, negative: bool, e: i64, den: QPolynomial) -> Result<QFunction> {
    let num = c.shift(e as usize);
    QFunction::new(if negative { num.neg() } else { num }, den)
}

/// `Σᵢ [n i](−1)^{i−1} q^{C(i+1,2)} / (1 − q^{i+shift})`, the left side shared by
/// the Van Hamme (`shift = 0`) and Uchimura identities.
fn alternating_sum(n: i64, shift: i64, mutation: Option<Mutation>) -> Result<QFunction> {
    let terms = (1..=n)
        .map(|i| {
            let (flip, de) = perturb(mutation, i, 1);
            let g = gauss_binomial(n as usize, i)?;
            term(&g, (i % 2 == 0) != flip, binom2(i + 1) + de, one_minus(i + shift))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QFunction::sum_all(terms))
}

/// `Σᵢ qⁱ / (1 − qⁱ)`.
fn harmonic_q(n: i64) -> Result<QFunction> {
    let one = Polynomial::one();
    let terms = (1..=n)
        .map(|i| term(&one, false, i, one_minus(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QFunction::sum_all(terms))
}

pub fn van_hamme_sides(n: u32, mutation: Option<Mutation>) -> Result<(QFunction, QFunction)> {
    let n = i64::from(n);
    Ok((alternating_sum(n, 0, mutation)?, harmonic_q(n)?))
}

pub fn uchimura_sides(n: u32, m: i64, mutation: Option<Mutation>) -> Result<(QFunction, QFunction)> {
    let n = i64::from(n);
    let lhs = alternating_sum(n, m, mutation)?;
    let one = Polynomial::one();
    let rhs = (1..=n)
        .map(|i| {
            let g = gauss_binomial::<Rational>((i + m) as usize, i)?;
            term(&one, false, i, one_minus(i).mul(&g))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((lhs, QFunction::sum_all(rhs)))
}

pub fn dilcher_sides(n: u32, m: i64, mutation: Option<Mutation>) -> Result<(QFunction, QFunction)> {
    let n = i64::from(n);
    let lhs = (1..=n)
        .map(|i| {
            let (flip, de) = perturb(mutation, i, 1);
            let g = gauss_binomial(n as usize, i)?;
            term(&g, (i % 2 == 0) != flip, binom2(i) + m * i + de, one_minus(i).pow(m as u32))
        })
        .collect::<Result<Vec<_>>>()?;
    let one = Polynomial::one();
    let xs = (1..=n)
        .map(|i| term(&one, false, i, one_minus(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok((QFunction::sum_all(lhs), complete_homogeneous(m, &xs)))
}

pub fn prodinger_sides(n: u32, big_m: u32, mutation: Option<Mutation>) -> Result<(QFunction, QFunction)> {
    let (n, big_m) = (i64::from(n), i64::from(big_m));
    let first = if big_m == 0 { 1 } else { 0 };
    let indices = (0..=n).filter(|&i| i != big_m);
    // For d < 0, 1/(1 − q^d) = −q^{|d|}/(1 − q^{|d|}).
    let lhs = indices
        .clone()
        .map(|i| {
            let (flip, de) = perturb(mutation, i, first);
            let g = gauss_binomial(n as usize, i)?;
            let d = i - big_m;
            let negative = (i % 2 == 0) != flip;
            if d > 0 {
                term(&g, negative, binom2(i + 1) + de, one_minus(d))
            } else {
                term(&g, !negative, binom2(i + 1) - d + de, one_minus(-d))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let one = Polynomial::one();
    // q^d/(1 − q^d) for d < 0 is −1/(1 − q^{|d|}).
    let inner = indices
        .map(|i| {
            let d = i - big_m;
            if d > 0 {
                term(&one, false, d, one_minus(d))
            } else {
                term(&one, true, 0, one_minus(-d))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let factor = gauss_binomial::<Rational>(n as usize, big_m)?.shift(binom2(big_m + 1) as usize);
    let factor = if big_m % 2 == 1 { factor.neg() } else { factor };
    let rhs = QFunction::sum_all(inner).mul(&QFunction::from_polynomial(factor));
    Ok((QFunction::sum_all(lhs), rhs))
}

pub fn verify_van_hamme(params: &IdentityParams) -> Result<IdentityReport> {
    let (lhs, rhs) = van_hamme_sides(params.n, params.mutation)?;
    Ok(IdentityReport::symbolic(params, lhs, rhs))
}

pub fn verify_uchimura(params: &IdentityParams) -> Result<IdentityReport> {
    let m = params.require_m()?;
    let (lhs, rhs) = uchimura_sides(params.n, m, params.mutation)?;
    Ok(IdentityReport::symbolic(params, lhs, rhs))
}

pub fn verify_dilcher(params: &IdentityParams) -> Result<IdentityReport> {
    let m = params.require_m()?;
    let (lhs, rhs) = dilcher_sides(params.n, m, params.mutation)?;
    let mut report = IdentityReport::symbolic(params, lhs, rhs);
    report.terms = Some(multiset_count(params.n as usize, m as usize));
    Ok(report)
}

pub fn verify_prodinger(params: &IdentityParams) -> Result<IdentityReport> {
    let big_m = params.big_m.expect("validated");
    let (lhs, rhs) = prodinger_sides(params.n, big_m, params.mutation)?;
    let mut report = IdentityReport::symbolic(params, lhs, rhs);
    if !report.is_verified() && params.mutation.is_none() {
        report.note = Some("discrepancy: sides differ with the summation index running over 0..n, i ≠ M".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(num: &[i64], den: &[i64]) -> QFunction {
        QFunction::new(Polynomial::from_i64s(num), Polynomial::from_i64s(den)).unwrap()
    }

    #[test]
    fn small_cases_by_hand() {
        let (l, r) = van_hamme_sides(1, None).unwrap();
        assert_eq!(l, frac(&[0, 1], &[1, -1]));
        assert_eq!(l, r);
        let (l, r) = van_hamme_sides(2, None).unwrap();
        assert_eq!(l, frac(&[0, 1, 2], &[1, 0, -1]));
        assert_eq!(r, l);
        let (l, r) = uchimura_sides(1, 1, None).unwrap();
        // [1 1] q^{C(2,2)} / (1 − q²) = q/(1 − q²); (q/(1 − q)) / (1 + q) is the same.
        assert_eq!(l, frac(&[0, 1], &[1, 0, -1]));
        assert_eq!(r, l);
        let (l, r) = prodinger_sides(1, 0, None).unwrap();
        assert_eq!(l, frac(&[0, 1], &[1, -1]));
        assert_eq!(r, l);
    }

    #[test]
    fn dilcher_two_two_by_hand() {
        let a = frac(&[0, 0, 1], &[1, -2, 1]);
        let b = frac(&[0, 0, 0, 1], &[1, -1, -1, 1]);
        let c = frac(&[0, 0, 0, 0, 1], &[1, 0, -2, 0, 1]);
        let (l, r) = dilcher_sides(2, 2, None).unwrap();
        assert_eq!(r, a.add(&b).add(&c));
        assert_eq!(l, r);
    }

    #[test]
    fn mutations_refute() {
        for mutation in [Mutation::Sign, Mutation::Exponent] {
            let (l, r) = van_hamme_sides(4, Some(mutation)).unwrap();
            assert_ne!(l, r);
            let (l, r) = prodinger_sides(3, 0, Some(mutation)).unwrap();
            assert_ne!(l, r);
            let (l, r) = prodinger_sides(3, 2, Some(mutation)).unwrap();
            assert_ne!(l, r);
        }
    }
}
