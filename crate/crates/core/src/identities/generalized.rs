//! The Uchimura identity with qᵐ replaced by a free symbol y:
//!
//! ```text
//! Σᵢ [n i] (−1)ⁱ⁻¹ q^{C(i+1,2)} / (1 − yqⁱ) = Σᵢ qⁱ (q;q)ᵢ₋₁ / (yq;q)ᵢ
//! ```
//!
//! Each q-sample is checked exactly in ℚ(y). Clearing by `∏ₖ(1 − yqᵏ)` makes
//! both sides polynomials in q, whose degree bounds the number of samples.

use super::{grid_prove, perturb, IdentityParams, IdentityReport, Mutation};
use crate::algebra::{Field, QFunction, Rational};
use crate::error::Result;
use crate::interpolation::{lagrange_kernel_sum, newton_kernel_sum, Alphabet};
use crate::qseries::{gauss_binomial, pochhammer};

use super::classic::uchimura_sides;

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Both sides for `y` and `q` in any field.
pub fn uchimura_generalized_sides<F: Field>(n: u32, y: &F, q: &F, mutation: Option<Mutation>) -> Result<(F, F)> {
    let n = i64::from(n);
    let lhs = (1..=n)
        .map(|i| {
            let (flip, de) = perturb(mutation, i, 1);
            let g = gauss_binomial::<Rational>(n as usize, i)?.eval_in(q, F::from_rational);
            let t = g.mul(&q.pow((binom2(i + 1) + de) as u32));
            let t = if (i % 2 == 0) != flip { t.neg() } else { t };
            t.div(&F::one().sub(&y.mul(&q.pow(i as u32))))
        })
        .collect::<Result<Vec<_>>>()?;
    let yq = y.mul(q);
    let rhs = (1..=n)
        .map(|i| {
            let i = i as usize;
            q.pow(i as u32)
                .mul(&pochhammer(q, q, i - 1))
                .div(&pochhammer(&yq, q, i))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((F::sum_all(lhs), F::sum_all(rhs)))
}

/// Degree in q of the two sides after multiplying by `∏ₖ(1 − yqᵏ)`.
pub fn uchimura_generalized_bound(n: u32, mutation: Option<Mutation>) -> usize {
    let n = i64::from(n);
    let total = n * (n + 1) / 2;
    let lhs = (1..=n).map(|i| i * (n - i) + binom2(i + 1) + perturb(mutation, i, 1).1 + total - i);
    let rhs = (1..=n).map(|i| i + binom2(i) + total - binom2(i + 1));
    lhs.chain(rhs).max().unwrap_or(0) as usize
}

pub fn verify_uchimura_generalized(params: &IdentityParams) -> Result<IdentityReport> {
    let n = params.n;
    let mutation = params.mutation;
    let y = QFunction::var();
    let bound = uchimura_generalized_bound(n, mutation);
    let grid = grid_prove(&[("q", bound)], |p| {
        let q = QFunction::constant(p[0].clone());
        let (lhs, rhs) = uchimura_generalized_sides(n, &y, &q, mutation)?;
        Ok(lhs == rhs)
    })?;
    let first_q = grid.sample_points[0][0].clone();
    let mut report = IdentityReport::from_grid(params, grid);

    // y = qᵐ inside ℚ(q).
    let q = QFunction::var();
    let ms: Vec<i64> = match params.m {
        Some(m) => vec![m],
        None => (0..=5).collect(),
    };
    for m in ms {
        let (lhs, rhs) = uchimura_generalized_sides(n, &q.pow(m as u32), &q, mutation)?;
        let (ul, ur) = uchimura_sides(n, m, None)?;
        report.check(format!("y = q^{m} reproduces uchimura(n={n}, m={m})"), lhs == ul && rhs == ur);
    }

    // With the alphabet q⁻¹,…,q⁻ⁿ and x = 1, the Newton and Lagrange members
    // are the negated right and left sides.
    let qv = QFunction::constant(first_q.clone());
    let alphabet = Alphabet::new(
        (1..=i64::from(n))
            .map(|j| QFunction::constant(first_q.powi(-j).expect("sample is nonzero")))
            .collect(),
    )?;
    let one = QFunction::one();
    let newton = newton_kernel_sum(&alphabet, &one, &y)?;
    let lagrange = lagrange_kernel_sum(&alphabet, &one, &y)?;
    let (lhs, rhs) = uchimura_generalized_sides(n, &y, &qv, mutation)?;
    report.check(
        format!("kernel members over q^-1..q^-n at q = {first_q} are the negated sides"),
        newton == rhs.neg() && lagrange == lhs.neg(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_is_a_single_term() {
        let y = QFunction::var();
        let q = QFunction::constant(Rational::new(1, 3).unwrap());
        let (l, r) = uchimura_generalized_sides(1, &y, &q, None).unwrap();
        let expected = q.div(&QFunction::one().sub(&y.mul(&q))).unwrap();
        assert_eq!(l, expected);
        assert_eq!(r, expected);
    }

    #[test]
    fn n2_at_one_half() {
        let y = QFunction::var();
        let q = QFunction::constant(Rational::new(1, 2).unwrap());
        let (l, r) = uchimura_generalized_sides(2, &y, &q, None).unwrap();
        assert_eq!(l, r);
        assert!(uchimura_generalized_sides(2, &y, &q, Some(Mutation::Sign)).map(|(l, r)| l != r).unwrap());
    }

    #[test]
    fn specializes_to_uchimura() {
        let q = QFunction::var();
        let (l, r) = uchimura_generalized_sides(3, &q.pow(2), &q, None).unwrap();
        assert_eq!((l, r), uchimura_sides(3, 2, None).unwrap());
    }
}
