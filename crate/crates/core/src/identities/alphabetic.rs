//! Identities over an explicit alphabet: the Newton/Lagrange kernel identity,
//! its x = 1 case, and the power-sum formula for complete functions.

use super::{perturb, IdentityId, IdentityParams, IdentityReport, Mutation, SamplePrimes};
use crate::algebra::{Field, QFunction, Rational};
use crate::error::Result;
use crate::interpolation::{kernel_closed_form, lagrange_kernel_sum, r_product, Alphabet};
use crate::qseries::{complete_homogeneous, gauss_binomial};

use super::classic::prodinger_sides;

/// Alphabet used when none is given.
pub fn default_points(identity: IdentityId, n: u32) -> Vec<Rational> {
    match identity {
        // q⁻¹, …, q⁻ⁿ at q = 1/2.
        IdentityId::Eq8X1 => (1..=n).map(|j| Rational::from(1i64 << j)).collect(),
        IdentityId::NewtonLagrangeEq7 => (1..=i64::from(n))
            .map(|j| Rational::new(1, j).expect("nonzero"))
            .collect(),
        _ => SamplePrimes::new()
            .take(n as usize)
            .map(|p| Rational::from(p as i64))
            .collect(),
    }
}

/// `{q^{M−j} : 0 ≤ j ≤ n, j ≠ M}` in ℚ(q).
pub fn eq8_prodinger_alphabet(n: u32, big_m: u32) -> Result<Alphabet<QFunction>> {
    let big_m = i64::from(big_m);
    Alphabet::new(
        (0..=i64::from(n))
            .filter(|&j| j != big_m)
            .map(|j| QFunction::monomial(Rational::from(1), big_m - j))
            .collect(),
    )
}

/// `Σ_{i<n} R(x, 𝔸ᵢ) / R(y, 𝔸ᵢ₊₁)` with the first term perturbed.
fn newton_sum<F: Field>(alphabet: &Alphabet<F>, x: &F, y: &F, mutation: Option<Mutation>) -> Result<F> {
    let pts = alphabet.points();
    let (xs, ys) = (std::slice::from_ref(x), std::slice::from_ref(y));
    let terms = (0..pts.len())
        .map(|i| {
            let (flip, de) = perturb(mutation, i as i64, 0);
            let den = r_product(ys, &pts[..=i]).pow(1 + de as u32);
            let t = r_product(xs, &pts[..i]).div(&den)?;
            Ok(if flip { t.neg() } else { t })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(F::sum_all(terms))
}

fn rational_alphabet(params: &IdentityParams) -> Result<(Vec<Rational>, Alphabet<QFunction>)> {
    let points = params
        .points
        .clone()
        .unwrap_or_else(|| default_points(params.identity, params.n));
    let embedded = Alphabet::new(points.iter().cloned().map(QFunction::constant).collect())?;
    Ok((points, embedded))
}

pub fn verify_newton_lagrange(params: &IdentityParams) -> Result<IdentityReport> {
    let (_, alphabet) = rational_alphabet(params)?;
    let x = params
        .specialization
        .get("x")
        .cloned()
        .unwrap_or_else(|| Rational::from(2));
    let x = QFunction::constant(x);
    let y = QFunction::var();
    let lhs = newton_sum(&alphabet, &x, &y, params.mutation)?;
    let rhs = kernel_closed_form(&alphabet, &x, &y)?;
    let middle = lagrange_kernel_sum(&alphabet, &x, &y)?;
    let mut report = IdentityReport::symbolic(params, lhs, rhs.clone());
    report.check("Lagrange member equals the closed form", middle == rhs);
    Ok(report)
}

pub fn verify_eq8_x1(params: &IdentityParams) -> Result<IdentityReport> {
    let one = QFunction::one();
    if let Some(big_m) = params.big_m {
        // Alphabet of q-powers with y = 1; everything lives in ℚ(q).
        let alphabet = eq8_prodinger_alphabet(params.n, big_m)?;
        let newton = newton_sum(&alphabet, &one, &one, params.mutation)?;
        let lagrange = lagrange_kernel_sum(&alphabet, &one, &one)?;
        let mut report = IdentityReport::symbolic(params, newton.clone(), lagrange.clone());
        report.variable = "q".into();
        let (pl, pr) = prodinger_sides(params.n, big_m, None)?;
        let big = i64::from(big_m);
        let factor = gauss_binomial::<Rational>(params.n as usize, big)?.shift((big * (big + 1) / 2) as usize);
        let factor = QFunction::from_polynomial(if big_m % 2 == 0 { factor.neg() } else { factor });
        report.check(
            format!("scaled Newton member equals prodinger(n={}, M={big_m}) right side", params.n),
            newton.mul(&factor) == pr,
        );
        report.check(
            format!("scaled Lagrange member equals prodinger(n={}, M={big_m}) left side", params.n),
            lagrange.mul(&factor) == pl,
        );
        return Ok(report);
    }
    let (points, alphabet) = rational_alphabet(params)?;
    let y = QFunction::var();
    let lhs = newton_sum(&alphabet, &one, &y, params.mutation)?;
    let rhs = lagrange_kernel_sum(&alphabet, &one, &y)?;
    let closed = kernel_closed_form(&alphabet, &one, &y)?;
    let mut report = IdentityReport::symbolic(params, lhs, rhs.clone());
    report.check("closed form agrees", closed == rhs);
    if let Some(pos) = points.iter().position(|p| *p == Rational::from(1)) {
        report.note = Some(format!(
            "point {} equals 1; every Lagrange term except the one at that point vanishes",
            pos + 1
        ));
    }
    Ok(report)
}

pub fn verify_power_sum(params: &IdentityParams) -> Result<IdentityReport> {
    let m = params.require_m()? as u32;
    let points = params
        .points
        .clone()
        .unwrap_or_else(|| default_points(params.identity, params.n));
    let alphabet = Alphabet::new(points)?;
    let x = alphabet.points();
    let terms = (0..x.len())
        .map(|i| {
            let (flip, de) = perturb(params.mutation, i as i64, 0);
            let t = x[i].pow(m + de as u32).div(&r_product(&x[i..=i], &alphabet.without(i)))?;
            Ok(if flip { t.neg() } else { t })
        })
        .collect::<Result<Vec<_>>>()?;
    let lhs = Rational::sum_all(terms);
    let rhs = complete_homogeneous(i64::from(m) - x.len() as i64 + 1, x);
    Ok(IdentityReport::symbolic(
        params,
        QFunction::constant(lhs),
        QFunction::constant(rhs),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        assert_eq!(
            default_points(IdentityId::Eq8X1, 3),
            vec![Rational::from(2), Rational::from(4), Rational::from(8)]
        );
        assert_eq!(default_points(IdentityId::PowerSumL5, 3)[2], Rational::from(5));
    }

    #[test]
    fn eq8_single_point() {
        let params = IdentityParams::new(IdentityId::Eq8X1, 1).with_points(vec![Rational::from(2)]);
        let report = verify_eq8_x1(&params).unwrap();
        assert!(report.is_verified());
        let y = QFunction::var();
        let expected = y.sub(&QFunction::from_i64(2)).inv().unwrap();
        assert_eq!(report.lhs.unwrap(), expected);
    }

    #[test]
    fn eq8_prodinger_chain() {
        for n in 1..=4 {
            for big_m in 0..=n {
                let params = IdentityParams::new(IdentityId::Eq8X1, n).with_big_m(big_m);
                let report = verify_eq8_x1(&params).unwrap();
                assert!(report.is_verified(), "{params}: {:?}", report.checks);
            }
        }
    }

    #[test]
    fn point_one_is_reported() {
        let params = IdentityParams::new(IdentityId::Eq8X1, 2).with_points(vec![Rational::from(1), Rational::from(3)]);
        let report = verify_eq8_x1(&params).unwrap();
        assert!(report.is_verified());
        assert!(report.note.is_some());
    }
}
