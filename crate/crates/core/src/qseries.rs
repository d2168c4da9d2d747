//! Pochhammer symbols, Gaussian binomials and complete homogeneous functions.

use crate::algebra::{Field, Polynomial};
use crate::error::{Error, Result};

/// `(z;q)ₙ = (1 − z)(1 − zq)⋯(1 − zq^{n−1})` for `z` and `q` in any field.
pub fn pochhammer<F: Field>(z: &F, q: &F, n: usize) -> F {
    let mut acc = F::one();
    let mut zq = z.clone();
    for k in 0..n {
        acc = acc.mul(&F::one().sub(&zq));
        if k + 1 < n {
            zq = zq.mul(q);
        }
    }
    acc
}

/// `(z;q)ₙ` as a polynomial in `q` when `z` is itself a polynomial in `q`.
pub fn pochhammer_poly<F: Field>(z: &Polynomial<F>, n: usize) -> Polynomial<F> {
    let one = Polynomial::one();
    (0..n).fold(Polynomial::one(), |acc, k| acc.mul(&one.sub(&z.shift(k))))
}

/// `(q;q)ₙ`.
pub fn q_factorial<F: Field>(n: usize) -> Polynomial<F> {
    pochhammer_poly(&Polynomial::x(), n)
}

/// The Gauss polynomial `[n i] = (q;q)ₙ / ((q;q)ᵢ (q;q)ₙ₋ᵢ)`, zero outside `0 ≤ i ≤ n`.
///
/// Computed by exact division; a remainder is reported as an internal error.
pub fn gauss_binomial<F: Field>(n: usize, i: i64) -> Result<Polynomial<F>> {
    let i = match usize::try_from(i) {
        Ok(i) if i <= n => i,
        _ => return Ok(Polynomial::zero()),
    };
    let den = q_factorial::<F>(i).mul(&q_factorial(n - i));
    let (quot, rem) = q_factorial::<F>(n).divrem(&den)?;
    if !rem.is_zero() {
        return Err(Error::InternalNonExactDivision(format!("gauss_binomial({n}, {i})")));
    }
    Ok(quot)
}

/// Number of multisets of size `k` drawn from `n` symbols, `C(n+k−1, k)`.
pub fn multiset_count(n: usize, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    let top = (n + k - 1) as u128;
    let k = k.min(n - 1) as u128;
    (0..k).fold(1u128, |acc, j| acc * (top - j) / (j + 1))
}

/// Weakly increasing index tuples `0 ≤ i₁ ≤ … ≤ i_k < n` in lexicographic order.
pub struct Multisets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Multisets {
    pub fn new(n: usize, k: usize) -> Self {
        Multisets {
            n,
            idx: vec![0; k],
            done: n == 0 && k > 0,
        }
    }

    /// Advance in place. Returns the first position that changed, or `None`
    /// once the enumeration is finished.
    fn advance(&mut self) -> Option<usize> {
        let j = (0..self.idx.len()).rev().find(|&j| self.idx[j] + 1 < self.n)?;
        let v = self.idx[j] + 1;
        self.idx[j..].iter_mut().for_each(|t| *t = v);
        Some(j)
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.idx.clone();
        if self.advance().is_none() {
            self.done = true;
        }
        Some(current)
    }
}

/// `h_k(x₁,…,xₙ)`: the sum over weakly increasing index tuples of
/// `x_{i₁}⋯x_{i_k}`. `h₀ = 1` and `h_k = 0` for `k < 0`.
///
/// Products are shared along common prefixes, and the terms are summed in a
/// single pass so that fields with costly reduction normalize once.
pub fn complete_homogeneous<F: Field>(k: i64, xs: &[F]) -> F {
    let k = match usize::try_from(k) {
        Ok(0) => return F::one(),
        Ok(k) => k,
        Err(_) => return F::zero(),
    };
    if xs.is_empty() {
        return F::zero();
    }
    let mut iter = Multisets::new(xs.len(), k);
    let mut prefix: Vec<F> = Vec::with_capacity(k);
    for j in 0..k {
        let p = if j == 0 { xs[0].clone() } else { prefix[j - 1].mul(&xs[0]) };
        prefix.push(p);
    }
    let mut terms = Vec::with_capacity(multiset_count(xs.len(), k).min(1 << 20) as usize);
    loop {
        terms.push(prefix[k - 1].clone());
        let Some(j) = iter.advance() else { break };
        let v = iter.idx[j];
        for t in j..k {
            prefix[t] = if t == 0 { xs[v].clone() } else { prefix[t - 1].mul(&xs[v]) };
        }
    }
    F::sum_all(terms)
}

/// `h_k(u₁/v₁,…,uₙ/vₙ) · ∏ⱼ vⱼᵏ` without any division.
///
/// Uses `H_k^{(j)} = v_j^k H_k^{(j−1)} + u_j (v₁⋯v_{j−1}) H_{k−1}^{(j)}`, with
/// `H_0 = 1` and `H_k^{(0)} = 0` for `k ≥ 1`. Returns zero for `k < 0`.
pub fn complete_homogeneous_cleared<F: Field>(k: i64, nums: &[F], dens: &[F]) -> F {
    assert_eq!(nums.len(), dens.len(), "numerator and denominator lists differ in length");
    let k = match usize::try_from(k) {
        Ok(k) => k,
        Err(_) => return F::zero(),
    };
    // row[t] holds H_t over the points processed so far.
    let mut row = vec![F::zero(); k + 1];
    row[0] = F::one();
    let mut before = F::one();
    for (u, v) in nums.iter().zip(dens) {
        let mut vpow = F::one();
        let ub = u.mul(&before);
        for t in 1..=k {
            vpow = vpow.mul(v);
            row[t] = vpow.mul(&row[t]).add(&ub.mul(&row[t - 1]));
        }
        before = before.mul(v);
    }
    row.swap_remove(k)
}
