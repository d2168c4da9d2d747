//! Deterministic polynomial identity testing on tensor grids.
//!
//! A polynomial in k variables whose degree in each variable `sᵢ` is at most
//! `dᵢ` and which vanishes on `S₁ × ⋯ × S_k` with `|Sᵢ| > dᵢ` is zero. The
//! prover evaluates a caller-supplied comparison at every grid point.

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Rejections allowed per symbol beyond its required sample count.
const SPARE_CANDIDATES: usize = 64;

/// Consecutive rejections after which the blame moves one symbol outward.
const BLAME_ESCALATION: usize = 8;

/// Outcome of a grid run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridProof {
    pub free_symbols: Vec<String>,
    pub degree_bounds: Vec<usize>,
    /// Sample values per symbol; each list is longer than the matching bound.
    pub sample_points: Vec<Vec<Rational>>,
    pub pole_rejections: usize,
    /// Symbols held at a fixed value, with the reason recorded by the caller.
    pub fixed: Vec<(String, Rational)>,
    pub evaluations: u64,
    /// First grid point where the two sides differ, in symbol order.
    pub disagreement: Option<Vec<Rational>>,
}

impl GridProof {
    pub fn agrees(&self) -> bool {
        self.disagreement.is_none()
    }

    pub fn sample_counts(&self) -> Vec<usize> {
        self.sample_points.iter().map(Vec::len).collect()
    }
}

/// The sample sequence 2, 3, 5, 7, 11, …
pub struct SamplePrimes {
    next: u64,
}

impl SamplePrimes {
    pub fn new() -> Self {
        SamplePrimes { next: 2 }
    }
}

impl Default for SamplePrimes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for SamplePrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next += 1;
            if (2..).take_while(|d| d * d <= c).all(|d| c % d != 0) {
                return Some(c);
            }
        }
    }
}

/// Evaluate `agree` on the full tensor grid with `bound + 1` samples per
/// symbol. `agree` returns whether both sides coincide at the point, or
/// `PoleAtEvaluation` to have the point replaced; any other error aborts.
///
/// A pole first blames the innermost symbol's current value; after repeated
/// rejections the blame moves outward. The enumeration restarts after every
/// replacement, so every reported sample set was checked in full.
pub fn grid_prove(
    symbols: &[(&str, usize)],
    mut agree: impl FnMut(&[Rational]) -> Result<bool>,
) -> Result<GridProof> {
    let mut candidates: Vec<SamplePrimes> = symbols.iter().map(|_| SamplePrimes::new()).collect();
    let mut drawn = vec![0usize; symbols.len()];
    let mut samples: Vec<Vec<Rational>> = Vec::with_capacity(symbols.len());
    for (s, &(_, bound)) in symbols.iter().enumerate() {
        let values = candidates[s].by_ref().take(bound + 1).map(|p| Rational::from(p as i64));
        samples.push(values.collect());
        drawn[s] = bound + 1;
    }

    let mut proof = GridProof {
        free_symbols: symbols.iter().map(|(n, _)| n.to_string()).collect(),
        degree_bounds: symbols.iter().map(|&(_, b)| b).collect(),
        sample_points: Vec::new(),
        pole_rejections: 0,
        fixed: Vec::new(),
        evaluations: 0,
        disagreement: None,
    };
    if symbols.is_empty() {
        proof.evaluations = 1;
        if !agree(&[])? {
            proof.disagreement = Some(Vec::new());
        }
        return Ok(proof);
    }

    let k = symbols.len();
    let mut consecutive = 0usize;
    'restart: loop {
        let mut idx = vec![0usize; k];
        let mut point: Vec<Rational> = (0..k).map(|s| samples[s][0].clone()).collect();
        loop {
            proof.evaluations += 1;
            match agree(&point) {
                Ok(true) => consecutive = 0,
                Ok(false) => {
                    proof.disagreement = Some(point);
                    proof.sample_points = samples;
                    return Ok(proof);
                }
                Err(Error::PoleAtEvaluation(_)) => {
                    proof.pole_rejections += 1;
                    let blame = k - 1 - (consecutive / BLAME_ESCALATION).min(k - 1);
                    consecutive += 1;
                    let (name, bound) = symbols[blame];
                    if drawn[blame] >= bound + 1 + SPARE_CANDIDATES {
                        return Err(Error::GridExhausted {
                            symbol: name.to_string(),
                            needed: bound + 1,
                        });
                    }
                    let fresh = candidates[blame].next().expect("infinite sequence");
                    drawn[blame] += 1;
                    samples[blame][idx[blame]] = Rational::from(fresh as i64);
                    continue 'restart;
                }
                Err(e) => return Err(e),
            }
            // Odometer step, innermost symbol fastest.
            let mut s = k;
            loop {
                if s == 0 {
                    proof.sample_points = samples;
                    return Ok(proof);
                }
                s -= 1;
                idx[s] += 1;
                if idx[s] < samples[s].len() {
                    point[s] = samples[s][idx[s]].clone();
                    break;
                }
                idx[s] = 0;
                point[s] = samples[s][0].clone();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Polynomial, QFunction};

    #[test]
    fn primes() {
        let p: Vec<u64> = SamplePrimes::new().take(10).collect();
        assert_eq!(p, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn linear_identity_needs_two_points() {
        // 2a + 1 against a + a + 1: degree 1 in a.
        let proof = grid_prove(&[("a", 1)], |p| {
            let a = &p[0];
            Ok(a.mul(&Rational::from(2)).add(&Rational::from(1)) == a.add(a).add(&Rational::from(1)))
        })
        .unwrap();
        assert!(proof.agrees());
        assert_eq!(proof.sample_counts(), vec![2]);
        assert_eq!(proof.evaluations, 2);
    }

    #[test]
    fn detects_perturbed_identity_at_first_sample() {
        // Σ qⁱ/(1−qⁱ) versus the same plus q, as functions of q.
        let n = 3;
        let rhs = |q: &Rational| -> Result<Rational> {
            let mut acc = Rational::from(0);
            for i in 1..=n {
                let qi = q.pow(i);
                acc = acc.add(&qi.div(&Rational::from(1).sub(&qi))?);
            }
            Ok(acc)
        };
        let proof = grid_prove(&[("q", 10)], |p| Ok(rhs(&p[0])? == rhs(&p[0])?.add(&p[0]))).unwrap();
        assert!(!proof.agrees());
        assert_eq!(proof.evaluations, 1);
        assert_eq!(proof.disagreement, Some(vec![Rational::from(2)]));
    }

    #[test]
    fn poles_are_replaced() {
        // 1/(q − 3) + 1/(q − 5) = (2q − 8)/((q − 3)(q − 5)), bound 2 after clearing.
        let f = QFunction::new(Polynomial::from_i64s(&[-8, 2]), Polynomial::from_i64s(&[15, -8, 1])).unwrap();
        let proof = grid_prove(&[("q", 2)], |p| {
            let q = &p[0];
            let lhs = q.sub(&Rational::from(3)).inv().map_err(|_| Error::PoleAtEvaluation(q.to_string()))?;
            let lhs = lhs.add(&q.sub(&Rational::from(5)).inv().map_err(|_| Error::PoleAtEvaluation(q.to_string()))?);
            Ok(lhs == f.evaluate(q)?)
        })
        .unwrap();
        assert!(proof.agrees());
        assert_eq!(proof.pole_rejections, 2);
        assert_eq!(proof.sample_points, vec![vec![Rational::from(2), Rational::from(7), Rational::from(11)]]);
    }

    #[test]
    fn persistent_pole_exhausts_grid() {
        let proof = grid_prove(&[("a", 1), ("b", 1)], |p| {
            if p[0] == Rational::from(2) {
                Err(Error::PoleAtEvaluation("a = 2".into()))
            } else {
                Ok(true)
            }
        });
        // The pole depends only on the outer symbol; escalation finds it.
        let proof = proof.unwrap();
        assert!(proof.agrees());
        assert!(!proof.sample_points[0].contains(&Rational::from(2)));

        let err = grid_prove(&[("a", 1)], |_| Err(Error::PoleAtEvaluation("always".into()))).unwrap_err();
        assert_eq!(err, Error::GridExhausted { symbol: "a".into(), needed: 2 });
    }

    #[test]
    fn two_variable_grid_covers_all_points() {
        let mut seen = 0;
        let proof = grid_prove(&[("a", 2), ("b", 3)], |_| {
            seen += 1;
            Ok(true)
        })
        .unwrap();
        assert_eq!(seen, 12);
        assert_eq!(proof.evaluations, 12);
    }
}
