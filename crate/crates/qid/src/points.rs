//! Point files: one rational per line (`p/q` or an integer). Blank lines and
//! `#` comments are skipped.

use std::path::Path;

use qid_core::algebra::Rational;
use qid_core::interpolation::Alphabet;

use crate::error::CliError;

/// Values with their 1-based line numbers.
pub fn parse_values(text: &str, path: &str) -> Result<Vec<(usize, Rational)>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let value = line.parse::<Rational>().map_err(|_| CliError::Parse {
            path: path.to_string(),
            line: i + 1,
            message: format!("not a rational number: {line:?}"),
        })?;
        out.push((i + 1, value));
    }
    Ok(out)
}

/// Distinct points in file order.
pub fn parse_points(text: &str, path: &str) -> Result<Alphabet<Rational>, CliError> {
    let values = parse_values(text, path)?;
    for (j, (line, p)) in values.iter().enumerate() {
        if let Some((first, _)) = values[..j].iter().find(|(_, o)| o == p) {
            return Err(CliError::DuplicatePoint {
                path: path.to_string(),
                point: p.to_string(),
                first: *first,
                second: *line,
            });
        }
    }
    Ok(Alphabet::new(values.into_iter().map(|(_, v)| v).collect())?)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn ingest_points(path: &Path) -> Result<Alphabet<Rational>, CliError> {
    parse_points(&read(path)?, &path.display().to_string())
}

pub fn ingest_values(path: &Path) -> Result<Vec<Rational>, CliError> {
    let values = parse_values(&read(path)?, &path.display().to_string())?;
    Ok(values.into_iter().map(|(_, v)| v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn verbatim_order() {
        let a = parse_points("1/2\n3\n-2/7", "f").unwrap();
        assert_eq!(a.points(), &[r(1, 2), r(3, 1), r(-2, 7)]);
    }

    #[test]
    fn duplicates_name_lines() {
        match parse_points("1\n1", "f") {
            Err(CliError::DuplicatePoint { first, second, .. }) => assert_eq!((first, second), (1, 2)),
            other => panic!("{other:?}"),
        }
        match parse_points("# header\n\n2/4\n3\n1/2\n", "f") {
            Err(CliError::DuplicatePoint { first, second, .. }) => assert_eq!((first, second), (3, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let a = parse_points("# prodinger q=1/2 M=2 n=3\n4\n2\n1\n1/2\n1/4", "f").unwrap();
        assert_eq!(a.len(), 5);
        let a = parse_points("\n  5  # trailing\n\n-1\n", "f").unwrap();
        assert_eq!(a.points(), &[r(5, 1), r(-1, 1)]);
    }

    #[test]
    fn parse_errors_name_lines() {
        match parse_points("1\n\nfoo\n", "pts.txt") {
            Err(e @ CliError::Parse { line: 3, .. }) => assert!(e.to_string().starts_with("pts.txt:3:")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_points("1/0", "f"), Err(CliError::Parse { line: 1, .. })));
    }

    #[test]
    fn values_allow_repeats() {
        let v = parse_values("1\n1\n", "f").unwrap();
        assert_eq!(v.len(), 2);
    }
}
