//! Cross-checks against values computed independently with plain `BigRational`
//! arithmetic straight from the defining sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use qid_core::algebra::{Field, QFunction, Rational};
use qid_core::identities::{
    dilcher_sides, prodinger_sides, proposition1_sides, uchimura_generalized_sides, uchimura_sides, van_hamme_sides,
    verify, verify_eq8_x1, IdentityId, IdentityParams,
};

fn br(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_big(x: &Rational) -> BigRational {
    BigRational::new(x.numer(), x.denom())
}

fn from_big(x: &BigRational) -> Rational {
    Rational::new(x.numer().clone(), x.denom().clone()).unwrap()
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Horner evaluation of a canonical form, coefficient by coefficient.
fn eval(f: &QFunction, q: &BigRational) -> BigRational {
    let horner = |cs: &[Rational]| cs.iter().rev().fold(BigRational::zero(), |acc, c| acc * q + to_big(c));
    horner(f.numer().coeffs()) / horner(f.denom().coeffs())
}

/// `[n k]` from the product formula.
fn gauss(n: i64, k: i64, q: &BigRational) -> BigRational {
    if k < 0 || k > n {
        return BigRational::zero();
    }
    let one = BigRational::one();
    (1..=k).fold(one.clone(), |acc, j| acc * (&one - pow(q, n - k + j)) / (&one - pow(q, j)))
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn van_hamme_oracle(n: i64, q: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let lhs = (1..=n)
        .map(|i| gauss(n, i, q) * sign(i - 1) * pow(q, binom2(i + 1)) / (&one - pow(q, i)))
        .sum();
    let rhs = (1..=n).map(|i| pow(q, i) / (&one - pow(q, i))).sum();
    (lhs, rhs)
}

#[test]
fn van_hamme_thirty_at_one_third() {
    let q = br(1, 3);
    let (ol, or) = van_hamme_oracle(30, &q);
    assert_eq!(ol, or);
    let (l, r) = van_hamme_sides(30, None).unwrap();
    assert_eq!(eval(&l, &q), ol);
    assert_eq!(eval(&r, &q), or);
    assert_eq!(l, r);
}

#[test]
fn uchimura_ten_seven_at_two_fifths() {
    let (n, m) = (10, 7);
    let q = br(2, 5);
    let one = BigRational::one();
    let ol: BigRational = (1..=n)
        .map(|i| gauss(n, i, &q) * sign(i - 1) * pow(&q, binom2(i + 1)) / (&one - pow(&q, i + m)))
        .sum();
    let or: BigRational = (1..=n)
        .map(|i| pow(&q, i) / ((&one - pow(&q, i)) * gauss(i + m, i, &q)))
        .sum();
    assert_eq!(ol, or);
    let (l, r) = uchimura_sides(n as u32, m, None).unwrap();
    assert_eq!(eval(&l, &q), ol);
    assert_eq!(eval(&r, &q), or);
}

/// `h_k` by listing every multiset of size `k` from `xs`.
fn h_by_enumeration(k: usize, xs: &[BigRational]) -> (BigRational, usize) {
    fn go(k: usize, start: usize, xs: &[BigRational], acc: BigRational, out: &mut (BigRational, usize)) {
        if k == 0 {
            out.0 += acc;
            out.1 += 1;
            return;
        }
        for i in start..xs.len() {
            go(k - 1, i, xs, &acc * &xs[i], out);
        }
    }
    let mut out = (BigRational::zero(), 0);
    go(k, 0, xs, BigRational::one(), &mut out);
    out
}

#[test]
fn dilcher_twelve_six_at_one_half() {
    let (n, m) = (12, 6);
    let q = br(1, 2);
    let one = BigRational::one();
    let ol: BigRational = (1..=n)
        .map(|i| gauss(n, i, &q) * sign(i - 1) * pow(&q, binom2(i) + m * i) / pow(&(&one - pow(&q, i)), m))
        .sum();
    let xs: Vec<BigRational> = (1..=n).map(|i| pow(&q, i) / (&one - pow(&q, i))).collect();
    let (or, count) = h_by_enumeration(m as usize, &xs);
    assert_eq!(count, 12376);
    assert_eq!(ol, or);
    let (l, r) = dilcher_sides(n as u32, m, None).unwrap();
    assert_eq!(eval(&l, &q), ol);
    assert_eq!(eval(&r, &q), or);
}

fn prodinger_oracle(n: i64, big_m: i64, q: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let idx = (0..=n).filter(|&i| i != big_m);
    let lhs = idx
        .clone()
        .map(|i| gauss(n, i, q) * sign(i - 1) * pow(q, binom2(i + 1)) / (&one - pow(q, i - big_m)))
        .sum();
    let inner: BigRational = idx.map(|i| pow(q, i - big_m) / (&one - pow(q, i - big_m))).sum();
    let rhs = sign(big_m) * pow(q, binom2(big_m + 1)) * gauss(n, big_m, q) * inner;
    (lhs, rhs)
}

#[test]
fn prodinger_two_one_at_one_seventh() {
    let q = br(1, 7);
    let (ol, or) = prodinger_oracle(2, 1, &q);
    assert_eq!(ol, or);
    let (l, r) = prodinger_sides(2, 1, None).unwrap();
    assert_eq!(eval(&l, &q), ol);
    assert_eq!(eval(&r, &q), or);
}

#[test]
fn prodinger_full_range_at_a_sample() {
    let q = br(3, 11);
    for n in 1..=7 {
        for big_m in 0..=n {
            let (ol, or) = prodinger_oracle(n, big_m, &q);
            assert_eq!(ol, or, "n={n} M={big_m}");
            let (l, _) = prodinger_sides(n as u32, big_m as u32, None).unwrap();
            assert_eq!(eval(&l, &q), ol);
        }
    }
}

fn r_of(x: &BigRational, pts: &[BigRational]) -> BigRational {
    pts.iter().map(|p| x - p).product()
}

#[test]
fn eq8_powers_of_two_at_three_points() {
    let pts = [br(2, 1), br(4, 1), br(8, 1)];
    let params = IdentityParams::new(IdentityId::Eq8X1, 3);
    let report = verify_eq8_x1(&params).unwrap();
    assert!(report.is_verified());
    let (lhs, rhs) = (report.lhs.unwrap(), report.rhs.unwrap());
    let one = BigRational::one();
    for y in [3, 5, 7] {
        let y = br(y, 1);
        let newton: BigRational = (0..3).map(|i| r_of(&one, &pts[..i]) / r_of(&y, &pts[..=i])).sum();
        let lagrange: BigRational = (0..3)
            .map(|i| {
                let rest: Vec<_> = pts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
                r_of(&one, &rest) / (r_of(&pts[i], &rest) * (&y - &pts[i]))
            })
            .sum();
        assert_eq!(newton, lagrange);
        assert_eq!(eval(&lhs, &y), newton);
        assert_eq!(eval(&rhs, &y), lagrange);
    }
}

#[test]
fn generalized_uchimura_two_at_one_half() {
    let q = br(1, 2);
    let one = BigRational::one();
    let (l, r) = uchimura_generalized_sides(2, &QFunction::var(), &QFunction::constant(from_big(&q)), None).unwrap();
    for y in [-3, 1, 5, 9] {
        let y = br(y, 1);
        let ol: BigRational = (1..=2)
            .map(|i| gauss(2, i, &q) * sign(i - 1) * pow(&q, binom2(i + 1)) / (&one - &y * pow(&q, i)))
            .sum();
        let or: BigRational = (1..=2)
            .map(|i| {
                let qq: BigRational = (1..i).map(|k| &one - pow(&q, k)).product();
                let yq: BigRational = (1..=i).map(|k| &one - &y * pow(&q, k)).product();
                pow(&q, i) * qq / yq
            })
            .sum();
        assert_eq!(ol, or);
        assert_eq!(eval(&l, &y), ol);
        assert_eq!(eval(&r, &y), or);
    }
}

fn proposition1_oracle(n: i64, m: i64, a: &BigRational, b: &BigRational, c: &BigRational, z: &BigRational, q: &BigRational) -> (BigRational, BigRational) {
    let tau = m - n + 1;
    let one = BigRational::one();
    let xs: Vec<BigRational> = (1..=n).map(|i| (a - b * pow(q, i)) / (c - z * pow(q, i))).collect();
    let (lhs, _) = h_by_enumeration(tau as usize, &xs);
    let num: BigRational = (1..=n).map(|k| c - z * pow(q, k)).product();
    let qq: BigRational = (1..=n).map(|k| &one - pow(q, k)).product();
    let pre = num / (qq * pow(&(a * z - b * c), n - 1));
    let sum: BigRational = (1..=n)
        .map(|i| {
            gauss(n, i, q) * sign(i - 1) * pow(q, binom2(i + 1) - n * i) * (&one - pow(q, i)) * pow(&(a - b * pow(q, i)), m)
                / pow(&(c - z * pow(q, i)), tau + 1)
        })
        .sum();
    (lhs, pre * sum)
}

#[test]
fn proposition1_three_four_off_grid() {
    let (a, b, c, z, q) = (br(-3, 5), br(7, 4), br(2, 9), br(5, 3), br(3, 11));
    let (ol, or) = proposition1_oracle(3, 4, &a, &b, &c, &z, &q);
    assert_eq!(ol, or);
    let k = from_big;
    let (l, r) = proposition1_sides(3, 4, &k(&a), &k(&b), &k(&c), &k(&z), &k(&q), None).unwrap();
    assert_eq!(to_big(&l), ol);
    assert_eq!(to_big(&r), or);

    let report = verify(&IdentityParams::new(IdentityId::Proposition1General, 3).with_m(4)).unwrap();
    assert!(report.is_verified());
    let grid = report.grid.unwrap();
    for (count, bound) in grid.sample_counts().iter().zip(&grid.degree_bounds) {
        assert!(count > bound);
    }
}

#[test]
fn proposition1_oracle_agrees_across_parameters() {
    let (a, b, c, z, q) = (br(4, 7), br(-2, 3), br(9, 5), br(1, 6), br(5, 2));
    for n in 1..=4 {
        for m in (n - 1)..=(n + 2) {
            let (ol, or) = proposition1_oracle(n, m, &a, &b, &c, &z, &q);
            assert_eq!(ol, or, "n={n} m={m}");
            let k = from_big;
            let (l, _) = proposition1_sides(n as u32, m, &k(&a), &k(&b), &k(&c), &k(&z), &k(&q), None).unwrap();
            assert_eq!(to_big(&l), ol);
        }
    }
}

#[test]
fn rational_field_matches_big_rationals() {
    let xs = [br(123456789, 1), br(-987654321, 17), pow(&br(3, 1), 60), pow(&br(2, 7), 45)];
    for x in &xs {
        for y in &xs {
            let (rx, ry) = (from_big(x), from_big(y));
            assert_eq!(to_big(&rx.add(&ry)), x + y);
            assert_eq!(to_big(&rx.sub(&ry)), x - y);
            assert_eq!(to_big(&rx.mul(&ry)), x * y);
            assert_eq!(to_big(&rx.div(&ry).unwrap()), x / y);
        }
    }
}
