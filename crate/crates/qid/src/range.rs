//! Inclusive parameter ranges such as `3`, `1..30` or `n-1..n+4`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

/// A range endpoint, either fixed or an offset from the current n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Fixed(i64),
    FromN(i64),
}

impl Endpoint {
    pub fn resolve(self, n: i64) -> i64 {
        match self {
            Endpoint::Fixed(v) => v,
            Endpoint::FromN(k) => n + k,
        }
    }
}

impl FromStr for Endpoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("invalid range endpoint {s:?}");
        if let Some(rest) = s.strip_prefix('n') {
            let rest = rest.trim();
            if rest.is_empty() {
                return Ok(Endpoint::FromN(0));
            }
            let (sign, digits) = match rest.split_at(1) {
                ("+", d) => (1, d),
                ("-", d) => (-1, d),
                _ => return Err(bad()),
            };
            let k: i64 = digits.trim().parse().map_err(|_| bad())?;
            return Ok(Endpoint::FromN(sign * k));
        }
        s.parse().map(Endpoint::Fixed).map_err(|_| bad())
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Endpoint::Fixed(v) => write!(f, "{v}"),
            Endpoint::FromN(0) => write!(f, "n"),
            Endpoint::FromN(k) if k > 0 => write!(f, "n+{k}"),
            Endpoint::FromN(k) => write!(f, "n{k}"),
        }
    }
}

/// `A..B`, both ends included; a single value `A` means `A..A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamRange {
    pub start: Endpoint,
    pub end: Endpoint,
}

impl ParamRange {
    pub fn fixed(start: i64, end: i64) -> Self {
        ParamRange {
            start: Endpoint::Fixed(start),
            end: Endpoint::Fixed(end),
        }
    }

    pub fn depends_on_n(&self) -> bool {
        matches!(self.start, Endpoint::FromN(_)) || matches!(self.end, Endpoint::FromN(_))
    }

    pub fn values(&self, n: i64) -> RangeInclusive<i64> {
        self.start.resolve(n)..=self.end.resolve(n)
    }
}

impl FromStr for ParamRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once("..") {
            Some((a, b)) => Ok(ParamRange {
                start: a.parse()?,
                end: b.strip_prefix('=').unwrap_or(b).parse()?,
            }),
            None => {
                let v: Endpoint = s.parse()?;
                Ok(ParamRange { start: v, end: v })
            }
        }
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}
