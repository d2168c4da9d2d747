//! The `qid` command-line driver.

pub mod args;
pub mod error;
pub mod points;
pub mod range;
pub mod record;
pub mod run;

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use qid_core::algebra::Rational;
use qid_core::identities::{verify, IdentityId, IdentityParams};
use qid_core::interpolation::{lagrange_interpolant, newton_interpolant, newton_table};

use args::{Cli, Command, TableKind};
use error::CliError;
use run::{expand, run_ordered, sweep_matrix, workers, Emitter, Format, Selection};

/// Result of the `interp` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpRecord {
    pub points: Vec<String>,
    pub values: Vec<String>,
    pub newton_coefficients: Vec<String>,
    /// Coefficients of the interpolant, lowest degree first.
    pub interpolant: Vec<String>,
    pub newton_equals_lagrange: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn parse_symbols(items: &[String]) -> Result<BTreeMap<String, Rational>, CliError> {
    items
        .iter()
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--set expects SYMBOL=VALUE, got {item:?}")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--set {item:?}: not a rational number")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn run_params(params: &[IdentityParams], cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut emitter = Emitter::new(cli.format, out);
    run_ordered(params, workers(cli.parallelism.map(|p| p.get()))?, |r| emitter.emit(&r))?;
    emitter.finish()
}

fn interp(
    points: &std::path::Path,
    values: &std::path::Path,
    at: Option<&Rational>,
    format: Format,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let alphabet = points::ingest_points(points)?;
    let values = points::ingest_values(values)?;
    if values.len() != alphabet.len() {
        return Err(CliError::Usage(format!(
            "{} values for {} points",
            values.len(),
            alphabet.len()
        )));
    }
    let table = newton_table(&values, &alphabet)?;
    let newton = newton_interpolant(&table, &alphabet);
    let lagrange = lagrange_interpolant(&values, &alphabet)?;
    let agree = newton.poly == lagrange.poly;
    let record = InterpRecord {
        points: strings(alphabet.points()),
        values: strings(&values),
        newton_coefficients: strings(&table.coefficients()),
        interpolant: strings(newton.poly.coeffs()),
        newton_equals_lagrange: agree,
        at: at.map(ToString::to_string),
        value: at.map(|x| newton.eval(x).to_string()),
    };
    match format {
        Format::JsonLines => writeln!(out, "{}", serde_json::to_string(&record)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["degree", "coefficient"])?;
            for (k, c) in record.interpolant.iter().enumerate() {
                w.write_record([k.to_string(), c.clone()])?;
            }
            w.flush()?;
        }
        Format::Human => {
            writeln!(out, "points: {}", record.points.join(", "))?;
            writeln!(out, "values: {}", record.values.join(", "))?;
            writeln!(out, "newton coefficients: {}", record.newton_coefficients.join(", "))?;
            writeln!(out, "P(x) = {}", newton.poly.display_in("x"))?;
            writeln!(out, "newton and lagrange agree: {}", if agree { "yes" } else { "NO" })?;
            if let (Some(x), Some(v)) = (&record.at, &record.value) {
                writeln!(out, "P({x}) = {v}")?;
            }
        }
    }
    Ok(if agree { 0 } else { 1 })
}

fn table(n: u32, m: i64, cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let params = IdentityParams::new(IdentityId::Dilcher, n).with_m(m);
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    if cli.format != Format::Human {
        return run_params(&[params], cli, out);
    }
    let report = verify(&params)?;
    writeln!(out, "{params}: {}", report.status.as_str())?;
    for (name, side) in [("LHS", &report.lhs), ("RHS", &report.rhs)] {
        if let Some(f) = side {
            writeln!(out, "{name} = {}", f.display_in("q"))?;
        }
    }
    if let Some(t) = report.terms {
        writeln!(out, "multiset terms: {t}")?;
    }
    Ok(if report.is_verified() { 0 } else { 1 })
}

/// Executes a parsed command line, writing records to `out`. Returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Verify {
            identity,
            n,
            m,
            big_m,
            points,
            symbols,
            mutate,
        } => {
            let mut sel = Selection::new(*identity);
            sel.n = *n;
            sel.m = *m;
            sel.big_m = *big_m;
            sel.symbols = parse_symbols(symbols)?;
            sel.mutation = *mutate;
            if let Some(path) = points {
                sel.points = Some(points::ingest_points(path)?.points().to_vec());
            }
            let params = expand(&sel)?;
            run_params(&params, cli, out)
        }
        Command::Sweep { quick, .. } => {
            let mut params = Vec::new();
            for sel in sweep_matrix(*quick) {
                params.extend(expand(&sel)?);
            }
            params.sort();
            params.dedup();
            run_params(&params, cli, out)
        }
        Command::Interp { points, values, at } => interp(points, values, at.as_ref(), cli.format, out),
        Command::Table {
            table: TableKind::Dilcher,
            n,
            m,
        } => table(*n, *m, cli, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run(args: &[&str]) -> (Result<u8, CliError>, String) {
        let cli = Cli::try_parse_from(std::iter::once("qid").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = execute(&cli, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn verify_van_hamme_five() {
        let (code, out) = run(&["verify", "van-hamme", "--n", "5"]);
        assert_eq!(code.unwrap(), 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 1);
        let rec = record::Record::from_json(lines[0]).unwrap();
        assert_eq!(rec.status, "verified");
        assert_eq!(rec.params.n, 5);
    }

    #[test]
    fn prodinger_m_above_n_is_usage_error() {
        let (code, _) = run(&["verify", "prodinger", "--n", "3", "--M", "5"]);
        assert!(matches!(code, Err(CliError::Usage(_))));
    }

    #[test]
    fn mutation_gives_exit_one() {
        let (code, out) = run(&["verify", "dilcher", "--n", "3", "--m", "2", "--mutate", "sign", "--format", "human"]);
        assert_eq!(code.unwrap(), 1);
        assert!(out.starts_with("refuted"));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let (code, out) = run(&["verify", "uchimura", "--n", "1..2", "--m", "0..1", "--format", "csv"]);
        assert_eq!(code.unwrap(), 0);
        assert_eq!(out.lines().count(), 5);
        assert!(out.starts_with("identity,n,m,M"));
    }

    #[test]
    fn symbols_are_parsed() {
        let (code, out) = run(&[
            "verify",
            "proposition1-m-eq-n",
            "--n",
            "3",
            "--set",
            "a=0",
            "--set",
            "b=-1",
            "--set",
            "c=1",
            "--set",
            "z=1",
        ]);
        assert_eq!(code.unwrap(), 0);
        assert!(out.contains("\"specialization\""));
        assert!(matches!(run(&["verify", "van-hamme", "--n", "2", "--set", "a"]).0, Err(CliError::Usage(_))));
    }

    #[test]
    fn table_prints_sides() {
        let (code, out) = run(&["table", "dilcher", "--n", "2", "--m", "2", "--format", "human"]);
        assert_eq!(code.unwrap(), 0);
        assert!(out.contains("LHS = "));
        assert!(out.contains("multiset terms: 3"));
    }
}
