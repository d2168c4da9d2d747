//! Serialized form of a verification report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use qid_core::algebra::{Polynomial, QFunction, Rational};
use qid_core::identities::{IdentityId, IdentityParams, IdentityReport, Mutation, Status};

use crate::error::CliError;

/// Canonical rational function: coefficient strings, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Form {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl Form {
    pub fn from_qfunction(f: &QFunction) -> Self {
        let strings = |p: &Polynomial<Rational>| p.coeffs().iter().map(ToString::to_string).collect();
        Form {
            num: strings(f.numer()),
            den: strings(f.denom()),
        }
    }

    pub fn to_qfunction(&self) -> Result<QFunction, CliError> {
        let poly = |cs: &[String]| -> Result<Polynomial<Rational>, CliError> {
            let coeffs = cs.iter().map(|c| c.parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
            Ok(Polynomial::new(coeffs))
        };
        Ok(QFunction::new(poly(&self.num)?, poly(&self.den)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub big_m: Option<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub specialization: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRecord {
    pub symbols: Vec<String>,
    pub bounds: Vec<usize>,
    pub sample_counts: Vec<usize>,
    pub pole_rejections: usize,
    pub evaluations: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fixed: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
}

/// One json-lines record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub identity: String,
    pub params: ParamsRecord,
    pub status: String,
    pub variable: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Form>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Form>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: u64,
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

impl Record {
    pub fn from_report(report: &IdentityReport) -> Self {
        let p = &report.params;
        let params = ParamsRecord {
            n: p.n,
            m: p.m,
            big_m: p.big_m,
            specialization: p.specialization.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            points: p.points.as_deref().map(strings),
            mutation: p.mutation.map(|m| m.as_str().to_string()),
        };
        let grid = report.grid.as_ref().map(|g| GridRecord {
            symbols: g.free_symbols.clone(),
            bounds: g.degree_bounds.clone(),
            sample_counts: g.sample_counts(),
            pole_rejections: g.pole_rejections,
            evaluations: g.evaluations,
            fixed: g.fixed.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            witness: g.disagreement.as_deref().map(strings),
        });
        Record {
            identity: p.identity.cli_name().to_string(),
            params,
            status: report.status.as_str().to_string(),
            variable: report.variable.clone(),
            lhs: report.lhs.as_ref().map(Form::from_qfunction),
            rhs: report.rhs.as_ref().map(Form::from_qfunction),
            grid,
            checks: report
                .checks
                .iter()
                .map(|c| CheckRecord {
                    name: c.name.clone(),
                    passed: c.passed,
                })
                .collect(),
            terms: report.terms.and_then(|t| u64::try_from(t).ok()),
            note: report.note.clone(),
            elapsed_ms: report.elapsed.as_millis() as u64,
        }
    }

    pub fn status(&self) -> Result<Status, CliError> {
        Ok(self.status.parse()?)
    }

    /// Rebuild the parameters that produced this record.
    pub fn params(&self) -> Result<IdentityParams, CliError> {
        let identity: IdentityId = self.identity.parse()?;
        let p = &self.params;
        let mut params = IdentityParams::new(identity, p.n);
        params.m = p.m;
        params.big_m = p.big_m;
        for (k, v) in &p.specialization {
            params.specialization.insert(k.clone(), v.parse()?);
        }
        if let Some(points) = &p.points {
            params.points = Some(points.iter().map(|s| s.parse()).collect::<Result<_, _>>()?);
        }
        if let Some(m) = &p.mutation {
            params.mutation = Some(m.parse::<Mutation>()?);
        }
        Ok(params)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(line: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(line)?)
    }

    fn side_text(&self, form: &Option<Form>) -> String {
        form.as_ref()
            .and_then(|f| f.to_qfunction().ok())
            .map(|f| f.display_in(&self.variable).to_string())
            .unwrap_or_default()
    }

    pub const CSV_HEADER: [&'static str; 14] = [
        "identity",
        "n",
        "m",
        "M",
        "mutation",
        "status",
        "elapsed_ms",
        "terms",
        "grid_bounds",
        "grid_samples",
        "pole_rejections",
        "lhs",
        "rhs",
        "note",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let grid = self.grid.as_ref();
        vec![
            self.identity.clone(),
            self.params.n.to_string(),
            opt(self.params.m.map(|m| m.to_string())),
            opt(self.params.big_m.map(|m| m.to_string())),
            opt(self.params.mutation.clone()),
            self.status.clone(),
            self.elapsed_ms.to_string(),
            opt(self.terms.map(|t| t.to_string())),
            opt(grid.map(|g| join(&g.bounds))),
            opt(grid.map(|g| join(&g.sample_counts))),
            opt(grid.map(|g| g.pole_rejections.to_string())),
            self.side_text(&self.lhs),
            self.side_text(&self.rhs),
            opt(self.note.clone()),
        ]
    }

    pub fn human(&self) -> String {
        let mut out = format!("{:<9} {} n={}", self.status, self.identity, self.params.n);
        let p = &self.params;
        if let Some(m) = p.m {
            let _ = write!(out, " m={m}");
        }
        if let Some(big_m) = p.big_m {
            let _ = write!(out, " M={big_m}");
        }
        for (k, v) in &p.specialization {
            let _ = write!(out, " {k}={v}");
        }
        if let Some(points) = &p.points {
            let _ = write!(out, " points=[{}]", points.join(", "));
        }
        if let Some(mutation) = &p.mutation {
            let _ = write!(out, " mutation={mutation}");
        }
        let _ = write!(out, "  ({} ms)", self.elapsed_ms);
        if let Some(t) = self.terms {
            let _ = write!(out, "  terms={t}");
        }
        if let Some(g) = &self.grid {
            let dims: Vec<String> = g
                .symbols
                .iter()
                .zip(&g.bounds)
                .zip(&g.sample_counts)
                .map(|((s, b), c)| format!("{s}: bound {b}, {c} samples"))
                .collect();
            let _ = write!(out, "\n  grid {}; {} pole rejections", dims.join("; "), g.pole_rejections);
            if !g.fixed.is_empty() {
                let fixed: Vec<String> = g.fixed.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = write!(out, "; fixed {}", fixed.join(" "));
            }
            if let Some(w) = &g.witness {
                let _ = write!(out, "\n  disagreement at ({})", w.join(", "));
            }
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            let _ = write!(out, "\n  failed check: {}", c.name);
        }
        if let Some(note) = &self.note {
            let _ = write!(out, "\n  note: {note}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qid_core::identities::verify;

    #[test]
    fn symbolic_record_round_trips() {
        let report = verify(&IdentityParams::new(IdentityId::VanHamme, 3)).unwrap();
        let rec = Record::from_report(&report);
        assert_eq!(Record::from_json(&rec.to_json().unwrap()).unwrap(), rec);
        assert_eq!(rec.lhs.as_ref().unwrap().to_qfunction().unwrap(), report.lhs.unwrap());
        assert_eq!(rec.params().unwrap(), report.params);
        assert_eq!(rec.status().unwrap(), Status::Verified);
    }

    #[test]
    fn grid_record_omits_sides() {
        let params = IdentityParams::new(IdentityId::Proposition1General, 2).with_m(2);
        let rec = Record::from_report(&verify(&params).unwrap());
        assert!(rec.lhs.is_none() && rec.rhs.is_none());
        let json = rec.to_json().unwrap();
        assert!(!json.contains("\"lhs\""));
        assert!(json.contains("\"pole_rejections\""));
        assert_eq!(Record::from_json(&json).unwrap(), rec);
    }

    #[test]
    fn form_is_lowest_degree_first() {
        let f = QFunction::new(Polynomial::from_i64s(&[0, 1]), Polynomial::from_i64s(&[1, -1])).unwrap();
        let form = Form::from_qfunction(&f);
        // q/(1 − q) with monic denominator is −q/(q − 1).
        assert_eq!(form.num, vec!["0", "-1"]);
        assert_eq!(form.den, vec!["-1", "1"]);
    }
}
