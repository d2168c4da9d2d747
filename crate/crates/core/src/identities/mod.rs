//! Verifiers for the q-series identities, one per identity, plus the grid
//! prover used when free symbols other than q are present.
//!
//! Identities in q alone are decided by structural equality of canonical forms
//! in ℚ(q). Identities with further free symbols are cleared of denominators
//! and checked on a tensor grid whose size exceeds the per-symbol degree bound.

mod alphabetic;
mod classic;
mod generalized;
mod grid;
mod proposition1;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::algebra::{QFunction, Rational};
use crate::error::{Error, Result};

pub use alphabetic::{default_points, eq8_prodinger_alphabet, verify_eq8_x1, verify_newton_lagrange, verify_power_sum};
pub use classic::{
    dilcher_sides, prodinger_sides, uchimura_sides, van_hamme_sides, verify_dilcher, verify_prodinger,
    verify_uchimura, verify_van_hamme,
};
pub use generalized::{uchimura_generalized_bound, uchimura_generalized_sides, verify_uchimura_generalized};
pub use grid::{grid_prove, GridProof, SamplePrimes};
pub use proposition1::{
    proposition1_bounds, proposition1_cleared, proposition1_sides, verify_proposition1, Proposition1Bounds,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    VanHamme,
    Uchimura,
    Dilcher,
    Prodinger,
    Proposition1General,
    Proposition1MEqN,
    UchimuraGeneralizedY,
    NewtonLagrangeEq7,
    Eq8X1,
    PowerSumL5,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::VanHamme,
        IdentityId::Uchimura,
        IdentityId::Dilcher,
        IdentityId::Prodinger,
        IdentityId::Proposition1General,
        IdentityId::Proposition1MEqN,
        IdentityId::UchimuraGeneralizedY,
        IdentityId::NewtonLagrangeEq7,
        IdentityId::Eq8X1,
        IdentityId::PowerSumL5,
    ];

    /// Stable identifier used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::VanHamme => "van_hamme",
            IdentityId::Uchimura => "uchimura",
            IdentityId::Dilcher => "dilcher",
            IdentityId::Prodinger => "prodinger",
            IdentityId::Proposition1General => "proposition1_general",
            IdentityId::Proposition1MEqN => "proposition1_m_eq_n",
            IdentityId::UchimuraGeneralizedY => "uchimura_generalized_y",
            IdentityId::NewtonLagrangeEq7 => "newton_lagrange_eq7",
            IdentityId::Eq8X1 => "eq8_x1",
            IdentityId::PowerSumL5 => "power_sum_L5",
        }
    }

    /// Command-line spelling.
    pub fn cli_name(self) -> &'static str {
        match self {
            IdentityId::VanHamme => "van-hamme",
            IdentityId::Uchimura => "uchimura",
            IdentityId::Dilcher => "dilcher",
            IdentityId::Prodinger => "prodinger",
            IdentityId::Proposition1General => "proposition1",
            IdentityId::Proposition1MEqN => "proposition1-m-eq-n",
            IdentityId::UchimuraGeneralizedY => "uchimura-generalized",
            IdentityId::NewtonLagrangeEq7 => "newton-lagrange",
            IdentityId::Eq8X1 => "eq8-x1",
            IdentityId::PowerSumL5 => "power-sum",
        }
    }

    /// Variable of the field in which the canonical sides live.
    pub fn variable(self) -> &'static str {
        match self {
            IdentityId::NewtonLagrangeEq7 | IdentityId::Eq8X1 | IdentityId::UchimuraGeneralizedY => "y",
            IdentityId::PowerSumL5 => "",
            _ => "q",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s || id.cli_name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// Deliberate perturbation of one term, used to check that verifiers can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mutation {
    /// Negate the first term of the mutated side.
    Sign,
    /// Raise the first term's exponent by one.
    Exponent,
}

impl Mutation {
    pub fn as_str(self) -> &'static str {
        match self {
            Mutation::Sign => "sign",
            Mutation::Exponent => "exponent",
        }
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sign" => Ok(Mutation::Sign),
            "exponent" => Ok(Mutation::Exponent),
            _ => Err(Error::Parse(format!("unknown mutation {s:?}"))),
        }
    }
}

/// Sign and exponent adjustments for the term at `index` of a sum whose first
/// term has index `first`.
pub(crate) fn perturb(mutation: Option<Mutation>, index: i64, first: i64) -> (bool, i64) {
    match mutation {
        Some(Mutation::Sign) if index == first => (true, 0),
        Some(Mutation::Exponent) if index == first => (false, 1),
        _ => (false, 0),
    }
}

/// One verification instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdentityParams {
    pub identity: IdentityId,
    pub n: u32,
    pub m: Option<i64>,
    /// The Prodinger index `M`.
    pub big_m: Option<u32>,
    /// Fixed values for the symbols a, b, c, z or x.
    pub specialization: BTreeMap<String, Rational>,
    /// Explicit alphabet for the interpolation identities.
    pub points: Option<Vec<Rational>>,
    pub mutation: Option<Mutation>,
}

impl IdentityParams {
    pub fn new(identity: IdentityId, n: u32) -> Self {
        IdentityParams {
            identity,
            n,
            m: None,
            big_m: None,
            specialization: BTreeMap::new(),
            points: None,
            mutation: None,
        }
    }

    pub fn with_m(mut self, m: i64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_big_m(mut self, big_m: u32) -> Self {
        self.big_m = Some(big_m);
        self
    }

    pub fn with_points(mut self, points: Vec<Rational>) -> Self {
        self.points = Some(points);
        self
    }

    pub fn with_symbol(mut self, symbol: &str, value: Rational) -> Self {
        self.specialization.insert(symbol.to_string(), value);
        self
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = Some(mutation);
        self
    }

    fn require_m(&self) -> Result<i64> {
        self.m
            .ok_or_else(|| Error::Parameter(format!("{} requires m", self.identity)))
    }

    /// Check parameter ranges for the identity.
    pub fn validate(&self) -> Result<()> {
        use IdentityId::*;
        let id = self.identity;
        let bad = |msg: String| Err(Error::Parameter(format!("{id}: {msg}")));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        let uses_m = matches!(
            id,
            Uchimura | Dilcher | Proposition1General | Proposition1MEqN | UchimuraGeneralizedY | PowerSumL5
        );
        if !uses_m && self.m.is_some() {
            return bad("m does not apply".into());
        }
        if self.big_m.is_some() && !matches!(id, Prodinger | Eq8X1) {
            return bad("M does not apply".into());
        }
        let symbols: &[&str] = match id {
            Proposition1General | Proposition1MEqN => &["a", "b", "c", "z"],
            NewtonLagrangeEq7 => &["x"],
            _ => &[],
        };
        if let Some(s) = self.specialization.keys().find(|k| !symbols.contains(&k.as_str())) {
            return bad(format!("symbol {s} does not apply"));
        }
        if self.points.is_some() && !matches!(id, NewtonLagrangeEq7 | Eq8X1 | PowerSumL5) {
            return bad("an explicit alphabet does not apply".into());
        }
        if let Some(points) = &self.points {
            if points.len() != self.n as usize {
                return bad(format!("{} points given for n = {}", points.len(), self.n));
            }
        }
        match id {
            Uchimura | PowerSumL5 => {
                if self.require_m()? < 0 {
                    return bad("m must be nonnegative".into());
                }
            }
            Dilcher => {
                if self.require_m()? < 1 {
                    return bad("m must be at least 1".into());
                }
            }
            Prodinger => match self.big_m {
                None => return bad("requires M".into()),
                Some(big_m) if big_m > self.n => return bad(format!("M = {big_m} exceeds n = {}", self.n)),
                _ => {}
            },
            Proposition1General | Proposition1MEqN => {
                let m = if id == Proposition1MEqN {
                    match self.m {
                        Some(m) if m != i64::from(self.n) => return bad("m must equal n".into()),
                        _ => i64::from(self.n),
                    }
                } else {
                    self.require_m()?
                };
                if m < i64::from(self.n) - 1 {
                    return bad(format!("m = {m} is below n − 1 = {}", self.n - 1));
                }
                if !self.specialization.is_empty() && self.specialization.len() != 4 {
                    return bad("specialize all of a, b, c, z or none".into());
                }
            }
            UchimuraGeneralizedY => {
                if matches!(self.m, Some(m) if m < 0) {
                    return bad("m must be nonnegative".into());
                }
            }
            Eq8X1 => {
                if let Some(big_m) = self.big_m {
                    if big_m > self.n {
                        return bad(format!("M = {big_m} exceeds n = {}", self.n));
                    }
                    if self.points.is_some() {
                        return bad("M selects the q-power alphabet; do not also give points".into());
                    }
                }
            }
            VanHamme | NewtonLagrangeEq7 => {}
        }
        if let Some(points) = &self.points {
            crate::interpolation::Alphabet::new(points.clone())?;
        }
        Ok(())
    }
}

impl fmt::Display for IdentityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.identity, self.n)?;
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        if let Some(big_m) = self.big_m {
            write!(f, " M={big_m}")?;
        }
        for (k, v) in &self.specialization {
            write!(f, " {k}={v}")?;
        }
        if let Some(points) = &self.points {
            let pts: Vec<String> = points.iter().map(ToString::to_string).collect();
            write!(f, " points=[{}]", pts.join(", "))?;
        }
        if let Some(mutation) = self.mutation {
            write!(f, " mutation={}", mutation.as_str())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Verified,
    Refuted,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Error => "error",
        }
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verified" => Ok(Status::Verified),
            "refuted" => Ok(Status::Refuted),
            "error" => Ok(Status::Error),
            _ => Err(Error::Parse(format!("unknown status {s:?}"))),
        }
    }
}

/// A named auxiliary equality checked alongside the main one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
        }
    }
}

/// Outcome of one verification.
///
/// `status` is `Verified` exactly when the main comparison and every
/// auxiliary check succeed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub params: IdentityParams,
    pub status: Status,
    /// Variable of the field holding `lhs` and `rhs`.
    pub variable: String,
    pub lhs: Option<QFunction>,
    pub rhs: Option<QFunction>,
    pub grid: Option<GridProof>,
    pub checks: Vec<Check>,
    /// Number of summands enumerated on the larger side, when meaningful.
    pub terms: Option<u128>,
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl IdentityReport {
    pub(crate) fn symbolic(params: &IdentityParams, lhs: QFunction, rhs: QFunction) -> Self {
        let status = if lhs == rhs { Status::Verified } else { Status::Refuted };
        IdentityReport {
            params: params.clone(),
            status,
            variable: params.identity.variable().to_string(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            grid: None,
            checks: Vec::new(),
            terms: None,
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn from_grid(params: &IdentityParams, grid: GridProof) -> Self {
        let status = if grid.agrees() { Status::Verified } else { Status::Refuted };
        IdentityReport {
            params: params.clone(),
            status,
            variable: params.identity.variable().to_string(),
            lhs: None,
            rhs: None,
            grid: Some(grid),
            checks: Vec::new(),
            terms: None,
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn error(params: &IdentityParams, err: &Error) -> Self {
        IdentityReport {
            params: params.clone(),
            status: Status::Error,
            variable: params.identity.variable().to_string(),
            lhs: None,
            rhs: None,
            grid: None,
            checks: Vec::new(),
            terms: None,
            note: Some(err.to_string()),
            elapsed: Duration::ZERO,
        }
    }

    /// Record an auxiliary check; a failure refutes the report.
    pub(crate) fn check(&mut self, name: impl Into<String>, passed: bool) {
        if !passed && self.status == Status::Verified {
            self.status = Status::Refuted;
        }
        self.checks.push(Check::new(name, passed));
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Evaluation point that separates the two sides, in grid mode.
    pub fn witness(&self) -> Option<&[Rational]> {
        self.grid.as_ref()?.disagreement.as_deref()
    }
}

/// Run the verifier selected by `params.identity`.
///
/// Invalid parameters yield an error; failures during the computation are
/// folded into a report with status `Error`.
pub fn verify(params: &IdentityParams) -> Result<IdentityReport> {
    params.validate()?;
    let start = Instant::now();
    let result = match params.identity {
        IdentityId::VanHamme => verify_van_hamme(params),
        IdentityId::Uchimura => verify_uchimura(params),
        IdentityId::Dilcher => verify_dilcher(params),
        IdentityId::Prodinger => verify_prodinger(params),
        IdentityId::Proposition1General | IdentityId::Proposition1MEqN => verify_proposition1(params),
        IdentityId::UchimuraGeneralizedY => verify_uchimura_generalized(params),
        IdentityId::NewtonLagrangeEq7 => verify_newton_lagrange(params),
        IdentityId::Eq8X1 => verify_eq8_x1(params),
        IdentityId::PowerSumL5 => verify_power_sum(params),
    };
    let mut report = result.unwrap_or_else(|e| IdentityReport::error(params, &e));
    report.elapsed = start.elapsed();
    Ok(report)
}
