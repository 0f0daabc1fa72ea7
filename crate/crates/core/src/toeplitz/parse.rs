use crate::scalars::{parse_laurent, parse_scalar, BaseField, LaurentPolynomial, Scalar};

use super::{Structured, ToeplitzError, ToeplitzRing};

/// Parses `symbol=<laurent poly in t>; dev=(i,j)=c,(i,j)=c`.
///
/// Either part may be omitted; a missing symbol is zero.
pub fn parse_element(text: &str, ring: &ToeplitzRing) -> Result<Structured, ToeplitzError> {
    let mut symbol = LaurentPolynomial::zero(ring.field);
    let mut dev = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| ToeplitzError::Syntax(format!("expected key=value, got '{part}'")))?;
        match key.trim() {
            "symbol" => symbol = parse_laurent(value, ring.field, "t")?,
            "dev" => dev = parse_dev(value, ring.field)?,
            other => return Err(ToeplitzError::Syntax(format!("unknown key '{other}'"))),
        }
    }
    ring.build(symbol, dev)
}

type Entries = Vec<((i64, i64), Scalar)>;

fn parse_dev(text: &str, field: BaseField) -> Result<Entries, ToeplitzError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| ToeplitzError::Syntax(format!("expected (i,j)=c at '{rest}'")))?;
        let (i, j) = rest[1..inner_end + 1]
            .split_once(',')
            .ok_or_else(|| ToeplitzError::Syntax("expected two indices".into()))?;
        let idx = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| ToeplitzError::Syntax(format!("bad index '{}'", s.trim())))
        };
        let pos = (idx(i)?, idx(j)?);
        let after = rest[inner_end + 2..]
            .trim_start()
            .strip_prefix('=')
            .ok_or_else(|| ToeplitzError::Syntax("expected '=' after index pair".into()))?;
        let (value, tail) = match after.find(",(") {
            Some(k) => (&after[..k], &after[k + 1..]),
            None => (after, ""),
        };
        out.push((pos, parse_scalar(value, field)?));
        rest = tail.trim();
    }
    Ok(out)
}

pub(super) fn to_text(a: &Structured) -> String {
    let dev: Vec<String> = a
        .deviation()
        .iter()
        .map(|((i, j), c)| format!("({i},{j})={c}"))
        .collect();
    if dev.is_empty() {
        format!("symbol={}", a.symbol())
    } else {
        format!("symbol={}; dev={}", a.symbol(), dev.join(","))
    }
}
