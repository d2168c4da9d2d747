//! Alphabets, difference products, divided differences, and the Newton and
//! Lagrange forms of the interpolating polynomial over any field.

use crate::algebra::{Field, Polynomial, QFunction, Rational};
use crate::error::{Error, Result};
use crate::qseries::complete_homogeneous;

/// Ordered list of pairwise distinct points `x₁,…,xₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet<F> {
    points: Vec<F>,
}

impl<F: Field> Alphabet<F> {
    pub fn new(points: Vec<F>) -> Result<Self> {
        for (j, p) in points.iter().enumerate() {
            if let Some(i) = points[..j].iter().position(|o| o == p) {
                return Err(Error::DuplicatePoint {
                    point: p.to_string(),
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
        Ok(Alphabet { points })
    }

    pub fn points(&self) -> &[F] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `𝔸ᵢ = {x₁,…,xᵢ}`; `𝔸₀` is empty.
    pub fn prefix(&self, i: usize) -> &[F] {
        &self.points[..i]
    }

    /// All points except the one at 0-based position `i`.
    pub fn without(&self, i: usize) -> Vec<F> {
        let mut rest = self.points.clone();
        rest.remove(i);
        rest
    }

    /// This alphabet with `x` appended.
    pub fn extended(&self, x: F) -> Result<Self> {
        let mut points = self.points.clone();
        points.push(x);
        Self::new(points)
    }

    /// Apply `f` to every point.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<Alphabet<G>> {
        Alphabet::new(self.points.iter().map(f).collect())
    }
}

/// `R(A, B) = ∏_{a∈A, b∈B} (a − b)`; empty products are 1.
pub fn r_product<F: Field>(a: &[F], b: &[F]) -> F {
    F::product_all(a.iter().flat_map(|x| b.iter().map(move |y| x.sub(y))))
}

/// `R(x, B)` as a polynomial in the indeterminate `x`.
pub fn r_polynomial<F: Field>(b: &[F]) -> Polynomial<F> {
    b.iter().fold(Polynomial::one(), |acc, p| {
        acc.mul(&Polynomial::new(vec![p.neg(), F::one()]))
    })
}

/// Values of a function of `n` arguments at every arrangement of an alphabet.
///
/// Entry `r` holds `f(x_{σ(1)},…,x_{σ(n)})` for the permutation `σ` of rank
/// `r` in lexicographic order, so rank 0 is the alphabet order itself. The
/// symmetric group acts by reindexing, which is what `∂ᵢ` needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable<F> {
    n: usize,
    values: Vec<F>,
}

/// Largest alphabet for which arrangement tables are built (`9! = 362880` entries).
pub const MAX_TABLE_POINTS: usize = 9;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn permutation_of_rank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        perm.push(pool.remove(rank / f));
        rank %= f;
    }
    perm
}

fn rank_of_permutation(perm: &[usize]) -> usize {
    let n = perm.len();
    (0..n)
        .map(|i| perm[i + 1..].iter().filter(|&&p| p < perm[i]).count() * factorial(n - 1 - i))
        .sum()
}

fn check_table_size(n: usize) -> Result<()> {
    if n > MAX_TABLE_POINTS {
        return Err(Error::Parameter(format!(
            "arrangement tables support at most {MAX_TABLE_POINTS} points, got {n}"
        )));
    }
    Ok(())
}

impl<F: Field> FunctionTable<F> {
    /// Tabulate `f` on every arrangement of `alphabet`.
    pub fn from_fn(alphabet: &Alphabet<F>, f: impl Fn(&[F]) -> Result<F>) -> Result<Self> {
        let n = alphabet.len();
        check_table_size(n)?;
        let values = (0..factorial(n))
            .map(|r| {
                let args: Vec<F> = permutation_of_rank(n, r)
                    .into_iter()
                    .map(|i| alphabet.points[i].clone())
                    .collect();
                f(&args)
            })
            .collect::<Result<_>>()?;
        Ok(FunctionTable { n, values })
    }

    /// The table of a function of the first argument only, given its values
    /// `f(x₁),…,f(xₙ)`.
    pub fn from_univariate(values: &[F]) -> Result<Self> {
        let n = values.len();
        check_table_size(n)?;
        let values = (0..factorial(n))
            .map(|r| values[permutation_of_rank(n, r)[0]].clone())
            .collect();
        Ok(FunctionTable { n, values })
    }

    /// Number of alphabet points.
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    /// Value at the alphabet in its own order.
    pub fn at_identity(&self) -> &F {
        &self.values[0]
    }

    /// Value at the arrangement `perm` (a permutation of `0..n`).
    pub fn at(&self, perm: &[usize]) -> &F {
        &self.values[rank_of_permutation(perm)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(F::is_zero)
    }
}

/// Apply `∂ᵢ` (1-based `i`, `1 ≤ i < n`) to a function table:
/// `(f(…,xᵢ,xᵢ₊₁,…) − f(…,xᵢ₊₁,xᵢ,…)) / (xᵢ − xᵢ₊₁)` at every arrangement.
pub fn divided_difference_apply<F: Field>(
    table: &FunctionTable<F>,
    alphabet: &Alphabet<F>,
    i: usize,
) -> Result<FunctionTable<F>> {
    let n = table.n;
    if alphabet.len() != n {
        return Err(Error::Parameter(format!(
            "table over {n} points applied with an alphabet of {}",
            alphabet.len()
        )));
    }
    if i == 0 || i >= n {
        return Err(Error::Parameter(format!("∂{i} needs 1 ≤ i < {n}")));
    }
    let values = (0..table.values.len())
        .map(|r| {
            let mut perm = permutation_of_rank(n, r);
            let (a, b) = (&alphabet.points[perm[i - 1]], &alphabet.points[perm[i]]);
            let gap = a.sub(b);
            if gap.is_zero() {
                return Err(Error::DuplicatePoint {
                    point: a.to_string(),
                    first: perm[i - 1] + 1,
                    second: perm[i] + 1,
                });
            }
            perm.swap(i - 1, i);
            table.values[r]
                .sub(&table.values[rank_of_permutation(&perm)])
                .div(&gap)
        })
        .collect::<Result<_>>()?;
    Ok(FunctionTable { n, values })
}

/// Triangular table of divided differences; entry `(i, k)` (0-based `i`) is
/// the divided difference of `f` over `xᵢ,…,x_{i+k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedDifferenceTable<F> {
    columns: Vec<Vec<F>>,
}

impl<F: Field> DividedDifferenceTable<F> {
    pub fn entry(&self, i: usize, k: usize) -> &F {
        &self.columns[k][i]
    }

    /// `f(x₁), f∂₁, f∂₁∂₂, …, f∂₁⋯∂ₙ₋₁`.
    pub fn coefficients(&self) -> Vec<F> {
        self.columns.iter().map(|c| c[0].clone()).collect()
    }

    /// `f∂₁⋯∂ₙ₋₁`.
    pub fn top(&self) -> &F {
        &self.columns.last().expect("table is nonempty")[0]
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

pub fn newton_table<F: Field>(f_values: &[F], alphabet: &Alphabet<F>) -> Result<DividedDifferenceTable<F>> {
    let n = alphabet.len();
    if f_values.len() != n {
        return Err(Error::Parameter(format!(
            "{} values for an alphabet of {n} points",
            f_values.len()
        )));
    }
    if n == 0 {
        return Err(Error::Parameter("empty alphabet".into()));
    }
    let x = &alphabet.points;
    let mut columns = vec![f_values.to_vec()];
    for k in 1..n {
        let prev = &columns[k - 1];
        let next = (0..n - k)
            .map(|i| prev[i + 1].sub(&prev[i]).div(&x[i + k].sub(&x[i])))
            .collect::<Result<Vec<_>>>()?;
        columns.push(next);
    }
    Ok(DividedDifferenceTable { columns })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterpolantSource {
    Newton,
    Lagrange,
}

/// The interpolating polynomial of degree at most `n − 1`.
#[derive(Clone)]
pub struct Interpolant<F> {
    pub poly: Polynomial<F>,
    pub source: InterpolantSource,
}

impl<F: Field> std::fmt::Debug for Interpolant<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}({:?})", self.source, self.poly)
    }
}

impl<F: Field> Interpolant<F> {
    pub fn eval(&self, x: &F) -> F {
        self.poly.eval(x)
    }
}

/// `Σ_{k<n} (f∂₁⋯∂ₖ) · R(x, 𝔸ₖ)`, expanded in nested form.
pub fn newton_interpolant<F: Field>(table: &DividedDifferenceTable<F>, alphabet: &Alphabet<F>) -> Interpolant<F> {
    let coeffs = table.coefficients();
    let x = alphabet.points();
    let mut poly = Polynomial::zero();
    for k in (0..coeffs.len()).rev() {
        poly = poly.mul(&Polynomial::new(vec![x[k].neg(), F::one()]));
        poly = poly.add(&Polynomial::constant(coeffs[k].clone()));
    }
    Interpolant {
        poly,
        source: InterpolantSource::Newton,
    }
}

/// `Σᵢ f(xᵢ) R(x, 𝔸∖xᵢ) / R(xᵢ, 𝔸∖xᵢ)`.
pub fn lagrange_interpolant<F: Field>(f_values: &[F], alphabet: &Alphabet<F>) -> Result<Interpolant<F>> {
    if f_values.len() != alphabet.len() {
        return Err(Error::Parameter(format!(
            "{} values for an alphabet of {} points",
            f_values.len(),
            alphabet.len()
        )));
    }
    let mut poly = Polynomial::zero();
    for (i, (xi, fi)) in alphabet.points().iter().zip(f_values).enumerate() {
        let rest = alphabet.without(i);
        let weight = fi.div(&r_product(std::slice::from_ref(xi), &rest))?;
        poly = poly.add(&r_polynomial(&rest).scale(&weight));
    }
    Ok(Interpolant {
        poly,
        source: InterpolantSource::Lagrange,
    })
}

/// `f(x) − P(x)` for the interpolant `P` over `alphabet`, computed as the top
/// divided difference over `𝔸ₙ ∪ {x}` times `R(x, 𝔸ₙ)`.
pub fn newton_remainder<F: Field>(f_values: &[F], f_at_x: &F, alphabet: &Alphabet<F>, x: &F) -> Result<F> {
    let extended = alphabet.extended(x.clone())?;
    let mut values = f_values.to_vec();
    values.push(f_at_x.clone());
    let table = newton_table(&values, &extended)?;
    Ok(table.top().mul(&r_product(std::slice::from_ref(x), alphabet.points())))
}

/// Check `(1/(y−x))∂₁⋯∂ₙ₋₁ = 1/((y−x₁)⋯(y−xₙ))` over ℚ(y) for the first `n` points.
pub fn verify_cauchy_kernel(alphabet: &Alphabet<Rational>, n: usize) -> Result<bool> {
    if n == 0 || n > alphabet.len() {
        return Err(Error::Parameter(format!(
            "need 1 ≤ n ≤ {}, got {n}",
            alphabet.len()
        )));
    }
    let y = QFunction::var();
    let points = alphabet.prefix(n).iter().map(|p| QFunction::constant(p.clone()));
    let sub = Alphabet::new(points.collect())?;
    let values = sub
        .points()
        .iter()
        .map(|p| y.sub(p).inv())
        .collect::<Result<Vec<_>>>()?;
    let top = newton_table(&values, &sub)?.top().clone();
    let expected = r_product(std::slice::from_ref(&y), sub.points()).inv()?;
    Ok(top == expected)
}

/// Both sides of `Σᵢ xᵢᵐ / ∏_{j≠i}(xᵢ − xⱼ) = h_{m−n+1}(𝔸ₙ)`.
pub fn power_sum_sides<F: Field>(alphabet: &Alphabet<F>, m: u32) -> Result<(F, F)> {
    let x = alphabet.points();
    let terms = (0..x.len())
        .map(|i| x[i].pow(m).div(&r_product(&x[i..=i], &alphabet.without(i))))
        .collect::<Result<Vec<_>>>()?;
    let h = complete_homogeneous(i64::from(m) - x.len() as i64 + 1, x);
    Ok((F::sum_all(terms), h))
}

pub fn verify_power_sum_h<F: Field>(alphabet: &Alphabet<F>, m: u32) -> Result<bool> {
    if alphabet.is_empty() {
        return Err(Error::Parameter("empty alphabet".into()));
    }
    let (lhs, rhs) = power_sum_sides(alphabet, m)?;
    Ok(lhs == rhs)
}

/// Newton member of the identity for `f(t) = 1/(y − t)` at `x`:
/// `Σ_{i<n} R(x, 𝔸ᵢ) / R(y, 𝔸ᵢ₊₁)`.
pub fn newton_kernel_sum<F: Field>(alphabet: &Alphabet<F>, x: &F, y: &F) -> Result<F> {
    let pts = alphabet.points();
    let (xs, ys) = (std::slice::from_ref(x), std::slice::from_ref(y));
    let terms = (0..pts.len())
        .map(|i| r_product(xs, &pts[..i]).div(&r_product(ys, &pts[..=i])))
        .collect::<Result<Vec<_>>>()?;
    Ok(F::sum_all(terms))
}

/// Lagrange member: `Σᵢ f(xᵢ) R(x, 𝔸∖xᵢ) / R(xᵢ, 𝔸∖xᵢ)` with `f(t) = 1/(y − t)`.
pub fn lagrange_kernel_sum<F: Field>(alphabet: &Alphabet<F>, x: &F, y: &F) -> Result<F> {
    let pts = alphabet.points();
    let xs = std::slice::from_ref(x);
    let terms = (0..pts.len())
        .map(|i| {
            let rest = alphabet.without(i);
            let f = y.sub(&pts[i]).inv()?;
            f.mul(&r_product(xs, &rest)).div(&r_product(&pts[i..=i], &rest))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(F::sum_all(terms))
}

/// Closed form `1/(y−x) − R(x, 𝔸ₙ) / (R(y, 𝔸ₙ)(y−x))`.
pub fn kernel_closed_form<F: Field>(alphabet: &Alphabet<F>, x: &F, y: &F) -> Result<F> {
    let pts = alphabet.points();
    let y_minus_x = y.sub(x);
    let tail = r_product(std::slice::from_ref(x), pts)
        .div(&r_product(std::slice::from_ref(y), pts).mul(&y_minus_x))?;
    Ok(y_minus_x.inv()?.sub(&tail))
}

/// All three members at once.
pub fn newton_lagrange_members<F: Field>(alphabet: &Alphabet<F>, x: &F, y: &F) -> Result<[F; 3]> {
    Ok([
        newton_kernel_sum(alphabet, x, y)?,
        lagrange_kernel_sum(alphabet, x, y)?,
        kernel_closed_form(alphabet, x, y)?,
    ])
}
