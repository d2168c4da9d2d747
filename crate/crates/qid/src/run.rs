//! Expanding parameter ranges into instances, running them on worker threads
//! and emitting the reports in parameter order.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use clap::ValueEnum;

use qid_core::algebra::Rational;
use qid_core::identities::{verify, IdentityId, IdentityParams, IdentityReport, Mutation, Status};

use crate::error::CliError;
use crate::range::ParamRange;
use crate::record::Record;

/// What to verify: an identity and ranges for its parameters.
#[derive(Clone, Debug)]
pub struct Selection {
    pub identity: IdentityId,
    pub n: Option<ParamRange>,
    pub m: Option<ParamRange>,
    pub big_m: Option<ParamRange>,
    pub points: Option<Vec<Rational>>,
    pub symbols: BTreeMap<String, Rational>,
    pub mutation: Option<Mutation>,
}

impl Selection {
    pub fn new(identity: IdentityId) -> Self {
        Selection {
            identity,
            n: None,
            m: None,
            big_m: None,
            points: None,
            symbols: BTreeMap::new(),
            mutation: None,
        }
    }

    pub fn n(mut self, range: &str) -> Self {
        self.n = Some(range.parse().expect("valid range literal"));
        self
    }

    pub fn m(mut self, range: &str) -> Self {
        self.m = Some(range.parse().expect("valid range literal"));
        self
    }

    pub fn big_m(mut self, range: &str) -> Self {
        self.big_m = Some(range.parse().expect("valid range literal"));
        self
    }
}

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

fn resolve(range: &ParamRange, n: i64, name: &str) -> Result<Vec<i64>, CliError> {
    let values: Vec<i64> = range.values(n).collect();
    if values.is_empty() {
        return Err(usage(format!("--{name} {range} is empty for n = {n}")));
    }
    Ok(values)
}

/// Every instance of a selection, validated and sorted.
pub fn expand(sel: &Selection) -> Result<Vec<IdentityParams>, CliError> {
    let n_range = match (&sel.n, &sel.points) {
        (Some(r), _) => *r,
        (None, Some(points)) => ParamRange::fixed(points.len() as i64, points.len() as i64),
        (None, None) => return Err(usage("--n is required".into())),
    };
    if n_range.depends_on_n() {
        return Err(usage(format!("--n {n_range} cannot refer to n")));
    }
    let mut out = Vec::new();
    for n in resolve(&n_range, 0, "n")? {
        let n_u32 = u32::try_from(n).map_err(|_| usage(format!("n = {n} is out of range")))?;
        let ms = match &sel.m {
            Some(r) => resolve(r, n, "m")?.into_iter().map(Some).collect(),
            None => vec![None],
        };
        let big_ms = match &sel.big_m {
            Some(r) => resolve(r, n, "M")?
                .into_iter()
                .map(|v| u32::try_from(v).map(Some).map_err(|_| usage(format!("M = {v} is negative"))))
                .collect::<Result<Vec<_>, _>>()?,
            None => vec![None],
        };
        for m in &ms {
            for big_m in &big_ms {
                let mut p = IdentityParams::new(sel.identity, n_u32);
                p.m = *m;
                p.big_m = *big_m;
                p.points = sel.points.clone();
                p.specialization = sel.symbols.clone();
                p.mutation = sel.mutation;
                p.validate().map_err(|e| usage(e.to_string()))?;
                out.push(p);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The acceptance matrix; `quick` keeps n ≤ 8 and trims the slow families.
pub fn sweep_matrix(quick: bool) -> Vec<Selection> {
    use IdentityId::*;
    let s = Selection::new;
    if quick {
        vec![
            s(VanHamme).n("1..8"),
            s(Uchimura).n("1..8").m("0..10"),
            s(Dilcher).n("1..8").m("1..6"),
            s(Prodinger).n("1..8").big_m("0..n"),
            s(Proposition1General).n("1..5").m("n-1..n+4"),
            s(Proposition1MEqN).n("1..8"),
            s(UchimuraGeneralizedY).n("1..6"),
            s(NewtonLagrangeEq7).n("1..8"),
            s(Eq8X1).n("1..6"),
            s(Eq8X1).n("1..6").big_m("0..n"),
            s(PowerSumL5).n("1..6").m("0..10"),
        ]
    } else {
        vec![
            s(VanHamme).n("1..30"),
            s(Uchimura).n("1..15").m("0..10"),
            s(Dilcher).n("1..12").m("1..6"),
            s(Prodinger).n("1..12").big_m("0..n"),
            s(Proposition1General).n("1..8").m("n-1..n+4"),
            s(Proposition1MEqN).n("1..8"),
            s(UchimuraGeneralizedY).n("1..10"),
            s(NewtonLagrangeEq7).n("1..8"),
            s(Eq8X1).n("1..8"),
            s(Eq8X1).n("1..8").big_m("0..n"),
            s(PowerSumL5).n("1..6").m("0..10"),
        ]
    }
}

/// Worker count from the flag, else the machine.
/// Worker count: the flag, else `QID_PARALLELISM`, else the available cores.
pub fn workers(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n.max(1));
    }
    match std::env::var(PARALLELISM_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!(
                "{PARALLELISM_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub const PARALLELISM_ENV: &str = "QID_PARALLELISM";

/// Runs every instance and hands reports to `emit` in the order of `params`.
pub fn run_ordered(
    params: &[IdentityParams],
    workers: usize,
    mut emit: impl FnMut(IdentityReport) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel();
    thread::scope(|scope| {
        for _ in 0..workers.min(params.len()).max(1) {
            let tx = tx.clone();
            let (next, stop) = (&next, &stop);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= params.len() || stop.load(Ordering::Relaxed) {
                    break;
                }
                if tx.send((i, verify(&params[i]))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = HashMap::new();
        let mut expected = 0;
        for (i, result) in rx {
            pending.insert(i, result);
            while let Some(result) = pending.remove(&expected) {
                expected += 1;
                if let Err(e) = result.map_err(CliError::from).and_then(&mut emit) {
                    stop.store(true, Ordering::Relaxed);
                    return Err(e);
                }
            }
        }
        Ok(())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    JsonLines,
    Csv,
    Human,
}

/// Writes records in one format and tallies statuses.
pub struct Emitter<'a> {
    format: Format,
    out: &'a mut dyn Write,
    started: bool,
    pub verified: usize,
    pub refuted: usize,
    pub errors: usize,
}

impl<'a> Emitter<'a> {
    pub fn new(format: Format, out: &'a mut dyn Write) -> Self {
        Emitter {
            format,
            out,
            started: false,
            verified: 0,
            refuted: 0,
            errors: 0,
        }
    }

    fn csv_line(&mut self, fields: &[String]) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut *self.out);
        w.write_record(fields)?;
        w.flush()?;
        Ok(())
    }

    pub fn emit(&mut self, report: &IdentityReport) -> Result<(), CliError> {
        match report.status {
            Status::Verified => self.verified += 1,
            Status::Refuted => self.refuted += 1,
            Status::Error => self.errors += 1,
        }
        let record = Record::from_report(report);
        match self.format {
            Format::JsonLines => writeln!(self.out, "{}", record.to_json()?)?,
            Format::Csv => {
                if !self.started {
                    let header: Vec<String> = Record::CSV_HEADER.iter().map(|s| s.to_string()).collect();
                    self.csv_line(&header)?;
                }
                self.csv_line(&record.csv_row())?;
            }
            Format::Human => writeln!(self.out, "{}", record.human())?,
        }
        self.started = true;
        self.out.flush()?;
        Ok(())
    }

    pub fn finish(&mut self) -> Result<u8, CliError> {
        if self.format == Format::Human {
            writeln!(
                self.out,
                "{} verified, {} refuted, {} errors",
                self.verified, self.refuted, self.errors
            )?;
        }
        Ok(self.exit_code())
    }

    /// 0 when everything verified, 1 if anything was refuted, 2 on errors.
    pub fn exit_code(&self) -> u8 {
        if self.errors > 0 {
            2
        } else if self.refuted > 0 {
            1
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_resolves_n_relative_ranges() {
        let params = expand(&Selection::new(IdentityId::Prodinger).n("1..3").big_m("0..n")).unwrap();
        assert_eq!(params.len(), 2 + 3 + 4);
        let params = expand(&Selection::new(IdentityId::Proposition1General).n("2..3").m("n-1..n+1")).unwrap();
        let pairs: Vec<_> = params.iter().map(|p| (p.n, p.m.unwrap())).collect();
        assert_eq!(pairs, vec![(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4)]);
    }

    #[test]
    fn invalid_ranges_are_usage_errors() {
        let bad = [
            Selection::new(IdentityId::Prodinger).n("3").big_m("5"),
            Selection::new(IdentityId::VanHamme).n("n"),
            Selection::new(IdentityId::VanHamme).n("3..1"),
            Selection::new(IdentityId::VanHamme),
            Selection::new(IdentityId::Dilcher).n("2"),
            Selection::new(IdentityId::Prodinger).n("2").big_m("-1"),
        ];
        for sel in bad {
            assert!(matches!(expand(&sel), Err(CliError::Usage(_))), "{sel:?}");
        }
    }

    #[test]
    fn order_is_independent_of_workers() {
        let params = expand(&Selection::new(IdentityId::Uchimura).n("1..6").m("0..3")).unwrap();
        let collect = |w| {
            let mut seen = Vec::new();
            run_ordered(&params, w, |r| {
                seen.push(Record::from_report(&r).params);
                Ok(())
            })
            .unwrap();
            seen
        };
        let one = collect(1);
        assert_eq!(one.len(), params.len());
        assert_eq!(one, collect(4));
    }

    #[test]
    fn exit_codes() {
        let mut sink = Vec::new();
        let mut e = Emitter::new(Format::JsonLines, &mut sink);
        assert_eq!(e.exit_code(), 0);
        let ok = verify(&IdentityParams::new(IdentityId::VanHamme, 2)).unwrap();
        e.emit(&ok).unwrap();
        assert_eq!(e.exit_code(), 0);
        let bad = verify(&IdentityParams::new(IdentityId::VanHamme, 2).with_mutation(Mutation::Sign)).unwrap();
        e.emit(&bad).unwrap();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn sweep_matrices_expand() {
        for quick in [true, false] {
            for sel in sweep_matrix(quick) {
                let params = expand(&sel).unwrap();
                assert!(params.iter().all(|p| !quick || p.n <= 8));
            }
        }
    }
}
