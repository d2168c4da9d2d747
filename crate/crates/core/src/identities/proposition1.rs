//! The rational-alphabet identity with xᵢ = (a − bqⁱ)/(c − zqⁱ).
//!
//! With τ = m − n + 1 it reads
//!
//! ```text
//! h_τ(x₁,…,xₙ) = ∏ₖ(c − zqᵏ) / ((q;q)ₙ (az − bc)ⁿ⁻¹)
//!              · Σᵢ [n i] (−1)ⁱ⁻¹ q^{C(i+1,2) − ni} (1 − qⁱ)(a − bqⁱ)ᵐ / (c − zqⁱ)^{τ+1}
//! ```
//!
//! Both sides are homogeneous of degree τ in (a, b) and of degree −τ in
//! (c, z), so the identity holds for all (a, b, c, z) once it holds with
//! b = c = 1. The grid runs over (q, z), and at each sample both sides are
//! compared exactly as polynomials in a. Multiplying by
//! `(q;q)ₙ (az − 1)ⁿ⁻¹ q^E ∏ⱼ vⱼ^τ` with `vⱼ = 1 − zqʲ` and `E = C(n,2)` gives
//! the polynomial identity
//!
//! ```text
//! H_τ(u, v) (q;q)ₙ (az − 1)ⁿ⁻¹ q^E
//!     = Σᵢ [n i] (−1)ⁱ⁻¹ q^{C(i+1,2) − ni + E} (1 − qⁱ) uᵢᵐ ∏_{j≠i} vⱼ^{τ+1}
//! ```
//!
//! where `uᵢ = a − qⁱ` and `H_τ = h_τ(u/v) ∏ vⱼ^τ`, which is what the grid
//! evaluates. The a-bound is reported for reference only.

use super::{grid_prove, perturb, IdentityId, IdentityParams, IdentityReport, Mutation};
use crate::algebra::{Field, Polynomial, QFunction, Rational};
use crate::error::{Error, Result};
use crate::qseries::{complete_homogeneous, gauss_binomial, multiset_count, pochhammer};

use super::classic::{dilcher_sides, van_hamme_sides};

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn pole(what: &str) -> Error {
    Error::PoleAtEvaluation(what.to_string())
}

/// Both sides for `a, b, c, z, q` in any field, without clearing denominators.
#[allow(clippy::too_many_arguments)]
pub fn proposition1_sides<F: Field>(
    n: u32,
    m: i64,
    a: &F,
    b: &F,
    c: &F,
    z: &F,
    q: &F,
    mutation: Option<Mutation>,
) -> Result<(F, F)> {
    let tau = m - i64::from(n) + 1;
    if tau < 0 {
        return Err(Error::Parameter(format!("m = {m} is below n − 1")));
    }
    let n_us = n as usize;
    let n = i64::from(n);
    let qpow: Vec<F> = (0..=n).map(|i| q.pow(i as u32)).collect();
    let u: Vec<F> = (1..=n).map(|i| a.sub(&b.mul(&qpow[i as usize]))).collect();
    let v: Vec<F> = (1..=n).map(|i| c.sub(&z.mul(&qpow[i as usize]))).collect();
    let xs = u
        .iter()
        .zip(&v)
        .map(|(ui, vi)| ui.div(vi).map_err(|_| pole("c − zqⁱ = 0")))
        .collect::<Result<Vec<_>>>()?;
    let lhs = complete_homogeneous(tau, &xs);

    let qq = pochhammer(q, q, n_us);
    let det = a.mul(z).sub(&b.mul(c)).pow((n - 1) as u32);
    let prefactor = F::product_all(v.iter().cloned())
        .div(&qq.mul(&det))
        .map_err(|_| pole("(q;q)ₙ (az − bc)ⁿ⁻¹ = 0"))?;
    let terms = (1..=n)
        .map(|i| {
            let (flip, de) = perturb(mutation, i, 1);
            let g = gauss_binomial::<Rational>(n_us, i)?.eval_in(q, F::from_rational);
            let sign = if (i % 2 == 0) != flip { F::one().neg() } else { F::one() };
            let qe = q.powi(binom2(i + 1) - n * i + de).map_err(|_| pole("q = 0"))?;
            let idx = (i - 1) as usize;
            let num = g
                .mul(&sign)
                .mul(&qe)
                .mul(&F::one().sub(&qpow[i as usize]))
                .mul(&u[idx].pow(m as u32));
            num.div(&v[idx].pow((tau + 1) as u32)).map_err(|_| pole("c − zqⁱ = 0"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((lhs, prefactor.mul(&F::sum_all(terms))))
}

/// Per-symbol degree bounds of the cleared identity with b = c = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Proposition1Bounds {
    pub q: usize,
    pub z: usize,
    pub a: usize,
}

/// Maximum exponent of each free symbol over all terms of both cleared sides.
pub fn proposition1_bounds(n: u32, m: i64, mutation: Option<Mutation>) -> Proposition1Bounds {
    let n = i64::from(n);
    let tau = m - n + 1;
    let total = n * (n + 1) / 2;
    let e = binom2(n);
    // Left: H_τ has q-degree τ·Σj, z-degree (n − 1)τ and a-degree τ.
    let lhs = (tau * total + total + e, (n - 1) * tau + (n - 1), tau + n - 1);
    let rhs_q = (1..=n)
        .map(|i| {
            let de = perturb(mutation, i, 1).1;
            i * (n - i) + binom2(i + 1) - n * i + e + de + i + m * i + (tau + 1) * (total - i)
        })
        .max()
        .unwrap_or(0);
    let rhs = (rhs_q, (n - 1) * (tau + 1), m);
    Proposition1Bounds {
        q: lhs.0.max(rhs.0) as usize,
        z: lhs.1.max(rhs.1) as usize,
        a: lhs.2.max(rhs.2) as usize,
    }
}

/// Evaluates the cleared identity as polynomials in `a`, caching what depends
/// only on q.
struct ClearedEvaluator {
    n: usize,
    tau: i64,
    mutation: Option<Mutation>,
    gauss: Vec<Polynomial<Rational>>,
    m: u32,
    q_level: Option<(Rational, QLevel)>,
}

struct QLevel {
    /// q⁰,…,qⁿ.
    qpow: Vec<Rational>,
    /// (q;q)ₙ q^E.
    left_factor: Rational,
    /// [n i] (−1)ⁱ⁻¹ q^{C(i+1,2) − ni + E} (1 − qⁱ) uᵢᵐ, mutation applied.
    terms: Vec<Polynomial<Rational>>,
}

/// `a − c` as a polynomial in a.
fn a_minus(c: &Rational) -> Polynomial<Rational> {
    Polynomial::new(vec![c.neg(), Rational::from(1)])
}

impl ClearedEvaluator {
    fn new(n: u32, m: i64, mutation: Option<Mutation>) -> Result<Self> {
        let gauss = (1..=i64::from(n))
            .map(|i| gauss_binomial(n as usize, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClearedEvaluator {
            n: n as usize,
            tau: m - i64::from(n) + 1,
            mutation,
            gauss,
            m: m as u32,
            q_level: None,
        })
    }

    fn q_level(&self, q: &Rational) -> QLevel {
        let n = self.n as i64;
        let e = binom2(n);
        let qpow: Vec<Rational> = (0..=self.n).map(|i| q.pow(i as u32)).collect();
        let one = Rational::from(1);
        let qq = (1..=self.n).fold(one.clone(), |acc, k| acc.mul(&one.sub(&qpow[k])));
        let terms = (1..=n)
            .map(|i| {
                let (flip, de) = perturb(self.mutation, i, 1);
                let g = self.gauss[(i - 1) as usize].eval(q);
                let exp = binom2(i + 1) - n * i + e + de;
                let c = g.mul(&q.pow(exp as u32)).mul(&one.sub(&qpow[i as usize]));
                let c = if (i % 2 == 0) != flip { c.neg() } else { c };
                a_minus(&qpow[i as usize]).pow(self.m).scale(&c)
            })
            .collect();
        QLevel {
            left_factor: qq.mul(&q.pow(e as u32)),
            qpow,
            terms,
        }
    }

    /// Left and right cleared sides at (q, z) with b = c = 1, as polynomials in a.
    fn eval(&mut self, q: &Rational, z: &Rational) -> Result<(Polynomial<Rational>, Polynomial<Rational>)> {
        if self.q_level.as_ref().map_or(true, |(k, _)| k != q) {
            self.q_level = Some((q.clone(), self.q_level(q)));
        }
        let ql = &self.q_level.as_ref().expect("just set").1;
        let one = Rational::from(1);
        let v: Vec<Rational> = (1..=self.n).map(|j| one.sub(&z.mul(&ql.qpow[j]))).collect();
        if v.iter().any(Rational::is_zero) {
            return Err(pole(&format!("1 − zqʲ = 0 at q = {q}, z = {z}")));
        }

        // row[t] = h_t(u₁/v₁,…,u_j/v_j) · (v₁⋯v_j)^t after j points.
        let tau = self.tau as usize;
        let mut row = vec![Polynomial::zero(); tau + 1];
        row[0] = Polynomial::one();
        let mut before = one.clone();
        for (j, vj) in v.iter().enumerate() {
            let mut vpow = one.clone();
            for t in 1..=tau {
                vpow = vpow.mul(vj);
                let prev = &row[t - 1];
                let up = prev.shift(1).sub(&prev.scale(&ql.qpow[j + 1])).scale(&before);
                row[t] = row[t].scale(&vpow).add(&up);
            }
            before = before.mul(vj);
        }
        let det = Polynomial::new(vec![one.neg(), z.clone()]).pow((self.n - 1) as u32);
        let lhs = row[tau].mul(&det).scale(&ql.left_factor);

        let powered: Vec<Rational> = v.iter().map(|x| x.pow((self.tau + 1) as u32)).collect();
        let mut suffix = vec![one.clone(); self.n + 1];
        for j in (0..self.n).rev() {
            suffix[j] = suffix[j + 1].mul(&powered[j]);
        }
        let mut prefix = one;
        let mut rhs = Polynomial::zero();
        for j in 0..self.n {
            rhs = rhs.add(&ql.terms[j].scale(&prefix.mul(&suffix[j + 1])));
            prefix = prefix.mul(&powered[j]);
        }
        Ok((lhs, rhs))
    }
}

/// Both cleared sides at `(z, q)` with `b = c = 1`, as polynomials in a.
pub fn proposition1_cleared(
    n: u32,
    m: i64,
    z: &Rational,
    q: &Rational,
    mutation: Option<Mutation>,
) -> Result<(Polynomial<Rational>, Polynomial<Rational>)> {
    ClearedEvaluator::new(n, m, mutation)?.eval(q, z)
}

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

pub fn verify_proposition1(params: &IdentityParams) -> Result<IdentityReport> {
    let n = params.n;
    let m = params.m.unwrap_or(i64::from(n));
    let tau = m - i64::from(n) + 1;
    let mutation = params.mutation;

    if !params.specialization.is_empty() {
        let s = |k: &str| QFunction::constant(params.specialization[k].clone());
        let (lhs, rhs) = proposition1_sides(n, m, &s("a"), &s("b"), &s("c"), &s("z"), &QFunction::var(), mutation)?;
        let mut report = IdentityReport::symbolic(params, lhs, rhs);
        report.terms = Some(multiset_count(n as usize, tau as usize));
        return Ok(report);
    }

    let bounds = proposition1_bounds(n, m, mutation);
    let mut evaluator = ClearedEvaluator::new(n, m, mutation)?;
    let mut grid = grid_prove(&[("q", bounds.q), ("z", bounds.z)], |p| {
        let (lhs, rhs) = evaluator.eval(&p[0], &p[1])?;
        Ok(lhs == rhs)
    })?;
    grid.fixed = vec![("b".into(), Rational::from(1)), ("c".into(), Rational::from(1))];
    let mut report = IdentityReport::from_grid(params, grid);
    report.terms = Some(multiset_count(n as usize, tau as usize));

    // Off the grid, with b and c free, uncleared.
    let (a, b, c, z, q) = (rational(7, 3), rational(-5, 2), rational(11, 7), rational(3, 4), rational(2, 9));
    let (lhs, rhs) = proposition1_sides(n, m, &a, &b, &c, &z, &q, mutation)?;
    report.check("uncleared sides agree at (a,b,c,z,q) = (7/3,-5/2,11/7,3/4,2/9)", lhs == rhs);

    // (a, b, c, z) = (0, −1, 1, 1) turns xᵢ into qⁱ/(1 − qⁱ).
    let k = |v: i64| QFunction::from_i64(v);
    let (lhs, rhs) = proposition1_sides(n, m, &k(0), &k(-1), &k(1), &k(1), &QFunction::var(), mutation)?;
    if params.identity == IdentityId::Proposition1MEqN {
        let (vl, vr) = van_hamme_sides(n, None)?;
        report.check("specialization (0,-1,1,1) reproduces van_hamme", lhs == vr && rhs == vl);
    } else if tau >= 1 {
        let (dl, dr) = dilcher_sides(n, tau, None)?;
        report.check(format!("specialization (0,-1,1,1) reproduces dilcher(n={n}, m={tau})"), lhs == dr && rhs == dl);
    } else {
        report.check("specialization (0,-1,1,1) gives 1 on both sides", lhs.is_one() && rhs.is_one());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_m1_symbolic() {
        let k = |v: i64| QFunction::from_i64(v);
        let (a, b, c, z) = (k(3), k(2), k(5), k(-7));
        let q = QFunction::var();
        let (l, r) = proposition1_sides(1, 1, &a, &b, &c, &z, &q, None).unwrap();
        let expected = a.sub(&b.mul(&q)).div(&c.sub(&z.mul(&q))).unwrap();
        assert_eq!(l, expected);
        assert_eq!(r, expected);
    }

    #[test]
    fn tau_zero_gives_one() {
        let k = |v: i64| QFunction::from_i64(v);
        let (l, r) = proposition1_sides(4, 3, &k(2), &k(3), &k(5), &k(7), &QFunction::var(), None).unwrap();
        assert!(l.is_one());
        assert!(r.is_one());
    }

    #[test]
    fn cleared_form_matches_uncleared() {
        let one = Rational::from(1);
        for (n, m) in [(1, 0), (2, 2), (3, 4), (4, 6)] {
            let (a, z, q) = (rational(5, 3), rational(-2, 7), rational(3, 2));
            let (l, r) = proposition1_cleared(n, m, &z, &q, None).unwrap();
            assert_eq!(l, r);
            let l = l.eval(&a);
            let (ul, ur) = proposition1_sides(n, m, &a, &one, &one, &z, &q, None).unwrap();
            assert_eq!(ul, ur);
            let tau = m - i64::from(n) + 1;
            let e = binom2(i64::from(n));
            let v: Vec<Rational> = (1..=n).map(|j| one.sub(&z.mul(&q.pow(j)))).collect();
            let qq = pochhammer(&q, &q, n as usize);
            let mult = qq
                .mul(&a.mul(&z).sub(&one).pow(n - 1))
                .mul(&q.pow(e as u32))
                .mul(&Rational::product_all(v.iter().map(|x| x.pow(tau as u32))));
            assert_eq!(ul.mul(&mult), l, "n={n} m={m}");
        }
    }

    #[test]
    fn bounds_are_attained_on_the_diagonal() {
        let b = proposition1_bounds(3, 4, None);
        assert_eq!((b.a, b.z), (4, 6));
        let b = proposition1_bounds(8, 12, None);
        assert_eq!((b.q, b.z, b.a), (272, 42, 12));
        assert_eq!(proposition1_bounds(1, 1, Some(Mutation::Exponent)).q, proposition1_bounds(1, 1, None).q + 1);
    }

    #[test]
    fn poles_are_reported() {
        let err = proposition1_cleared(2, 2, &rational(1, 2), &Rational::from(2), None).unwrap_err();
        assert!(matches!(err, Error::PoleAtEvaluation(_)));
        let err = proposition1_sides(2, 2, &Rational::from(3), &Rational::from(1), &Rational::from(1), &rational(1, 3), &Rational::from(5), None)
            .unwrap_err();
        assert!(matches!(err, Error::PoleAtEvaluation(_)));
    }
}
