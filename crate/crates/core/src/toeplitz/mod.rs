//! The two structured infinite matrix rings: bilateral `Z x Z` matrices that
//! are diagonal-constant away from a finite-rank corner, and unilateral
//! `Z>0 x Z>0` matrices that are diagonal-constant outside finitely many rows.
//!
//! Elements are stored as a Laurent-polynomial symbol (the value of `psi`)
//! plus a finitely supported deviation:
//! `entry(i, j) = symbol[j - i] + dev(i, j)`.

mod idempotents;
mod parse;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use crate::expr::ParseError;
use crate::matring::Ring;
use crate::scalars::{BaseField, LaurentPolynomial, Scalar};

pub use idempotents::{enumerate_window_idempotents, window_indices, IdempotentSearch};
pub use parse::parse_element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToeplitzError {
    #[error("index ({0},{1}) is outside the unilateral model (indices start at 1)")]
    IndexOutOfRange(i64, i64),
    #[error("elements belong to different models or fields")]
    ModelMismatch,
    #[error("window search over {candidates} candidates exceeds the limit {limit}")]
    WindowTooLarge { candidates: u128, limit: u128 },
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("symbol {0} is outside the supported tier (zero or monomial symbols only)")]
    OutOfTier(String),
    #[error("window enumeration supports F2 and F3 only, got {0}")]
    UnsupportedField(BaseField),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Indices in `Z x Z`.
    Bilateral,
    /// Indices in `Z>0 x Z>0`.
    Unilateral,
}

impl Model {
    fn admits(self, i: i64, j: i64) -> bool {
        self == Model::Bilateral || (i >= 1 && j >= 1)
    }
}

/// Symbol plus finite deviation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structured {
    model: Model,
    symbol: LaurentPolynomial,
    dev: BTreeMap<(i64, i64), Scalar>,
}

/// A row or a column of an infinite matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(i64),
    Col(i64),
}

fn add_into(map: &mut BTreeMap<(i64, i64), Scalar>, key: (i64, i64), c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let v = match map.remove(&key) {
        Some(old) => &old + c,
        None => c.clone(),
    };
    if !v.is_zero() {
        map.insert(key, v);
    }
}

impl Structured {
    pub fn model(&self) -> Model {
        self.model
    }

    pub fn field(&self) -> BaseField {
        self.symbol.field()
    }

    /// The symbol; this is `psi` of the element.
    pub fn symbol(&self) -> &LaurentPolynomial {
        &self.symbol
    }

    pub fn deviation(&self) -> &BTreeMap<(i64, i64), Scalar> {
        &self.dev
    }

    pub fn entry(&self, i: i64, j: i64) -> Scalar {
        if !self.model.admits(i, j) {
            return self.field().zero();
        }
        let base = self.symbol.coeff(j - i);
        match self.dev.get(&(i, j)) {
            Some(d) => &base + d,
            None => base,
        }
    }

    /// Rows and columns touched by the deviation.
    pub fn support_bounds(&self) -> Option<((i64, i64), (i64, i64))> {
        let rows = self.dev.keys().map(|k| k.0);
        let cols = self.dev.keys().map(|k| k.1);
        Some((
            (rows.clone().min()?, rows.max()?),
            (cols.clone().min()?, cols.max()?),
        ))
    }

    /// Exact entries over a finite window.
    pub fn window(&self, rows: RangeInclusive<i64>, cols: RangeInclusive<i64>) -> Vec<Vec<Scalar>> {
        rows.map(|i| cols.clone().map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Column indices where row `i` can be nonzero.
    fn row_candidates(&self, i: i64) -> Vec<i64> {
        let mut c: Vec<i64> = self.symbol.terms().map(|(k, _)| i + k).collect();
        c.extend(self.dev.keys().filter(|k| k.0 == i).map(|k| k.1));
        c.retain(|&j| self.model.admits(i, j));
        c.sort_unstable();
        c.dedup();
        c
    }

    fn col_candidates(&self, j: i64) -> Vec<i64> {
        let mut c: Vec<i64> = self.symbol.terms().map(|(k, _)| j - k).collect();
        c.extend(self.dev.keys().filter(|k| k.1 == j).map(|k| k.0));
        c.retain(|&i| self.model.admits(i, j));
        c.sort_unstable();
        c.dedup();
        c
    }

    /// True iff the given row or column is identically zero, which certifies
    /// that the element is not a unit.
    pub fn zero_line_certificate(&self, line: Line) -> bool {
        match line {
            Line::Row(i) => self.row_candidates(i).into_iter().all(|j| self.entry(i, j).is_zero()),
            Line::Col(j) => self.col_candidates(j).into_iter().all(|i| self.entry(i, j).is_zero()),
        }
    }

    /// JSON dump of a window, entries printed as strings.
    pub fn window_json(&self, rows: RangeInclusive<i64>, cols: RangeInclusive<i64>) -> serde_json::Value {
        let entries: Vec<Vec<String>> = self
            .window(rows.clone(), cols.clone())
            .iter()
            .map(|r| r.iter().map(Scalar::to_string).collect())
            .collect();
        serde_json::json!({
            "model": self.model,
            "symbol": self.symbol.to_string(),
            "rows": [rows.start(), rows.end()],
            "cols": [cols.start(), cols.end()],
            "entries": entries,
        })
    }
}

/// Ring handle for one model over one field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToeplitzRing {
    pub model: Model,
    pub field: BaseField,
}

impl ToeplitzRing {
    pub fn bilateral(field: BaseField) -> Self {
        ToeplitzRing {
            model: Model::Bilateral,
            field,
        }
    }

    pub fn unilateral(field: BaseField) -> Self {
        ToeplitzRing {
            model: Model::Unilateral,
            field,
        }
    }

    /// Builds `T(symbol) + deviation`; repeated positions are summed.
    pub fn build(
        &self,
        symbol: LaurentPolynomial,
        dev: impl IntoIterator<Item = ((i64, i64), Scalar)>,
    ) -> Result<Structured, ToeplitzError> {
        if symbol.field() != self.field {
            return Err(ToeplitzError::ModelMismatch);
        }
        let mut map = BTreeMap::new();
        for ((i, j), c) in dev {
            if !self.model.admits(i, j) {
                return Err(ToeplitzError::IndexOutOfRange(i, j));
            }
            if c.field() != self.field {
                return Err(ToeplitzError::ModelMismatch);
            }
            add_into(&mut map, (i, j), &c);
        }
        Ok(Structured {
            model: self.model,
            symbol,
            dev: map,
        })
    }

    pub fn from_ints(&self, symbol: &[(i64, i64)], dev: &[((i64, i64), i64)]) -> Result<Structured, ToeplitzError> {
        self.build(
            LaurentPolynomial::from_i64s(self.field, symbol),
            dev.iter().map(|&(ij, c)| (ij, self.field.from_i64(c))),
        )
    }

    /// `c * t^k` as a pure Toeplitz element.
    pub fn shift(&self, k: i64, c: Scalar) -> Structured {
        self.pure(LaurentPolynomial::monomial(c, k))
    }

    pub fn pure(&self, symbol: LaurentPolynomial) -> Structured {
        Structured {
            model: self.model,
            symbol,
            dev: BTreeMap::new(),
        }
    }

    /// Zero-symbol element with the given dense block at `(row0, col0)`.
    pub fn block(&self, row0: i64, col0: i64, block: &[Vec<Scalar>]) -> Result<Structured, ToeplitzError> {
        let mut dev = Vec::new();
        for (r, row) in block.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                dev.push(((row0 + r as i64, col0 + c as i64), x.clone()));
            }
        }
        self.build(LaurentPolynomial::zero(self.field), dev)
    }

    pub fn psi<'a>(&self, a: &'a Structured) -> &'a LaurentPolynomial {
        a.symbol()
    }

    pub fn to_text(&self, a: &Structured) -> String {
        parse::to_text(a)
    }
}

impl Ring for ToeplitzRing {
    type Elem = Structured;

    fn zero(&self) -> Structured {
        self.pure(LaurentPolynomial::zero(self.field))
    }
    fn one(&self) -> Structured {
        self.pure(LaurentPolynomial::one(self.field))
    }
    fn add(&self, a: &Structured, b: &Structured) -> Structured {
        let mut dev = a.dev.clone();
        for (k, c) in &b.dev {
            add_into(&mut dev, *k, c);
        }
        Structured {
            model: self.model,
            symbol: a.symbol.add(&b.symbol),
            dev,
        }
    }
    fn neg(&self, a: &Structured) -> Structured {
        Structured {
            model: self.model,
            symbol: a.symbol.neg(),
            dev: a.dev.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn mul(&self, a: &Structured, b: &Structured) -> Structured {
        let model = self.model;
        let mut dev = BTreeMap::new();
        // T(f) * DB
        for (&(k, j), d) in &b.dev {
            for (e, f) in a.symbol.terms() {
                let i = k - e;
                if model.admits(i, j) {
                    add_into(&mut dev, (i, j), &(f * d));
                }
            }
        }
        // DA * T(g)
        for (&(i, k), d) in &a.dev {
            for (e, g) in b.symbol.terms() {
                let j = k + e;
                if model.admits(i, j) {
                    add_into(&mut dev, (i, j), &(d * g));
                }
            }
        }
        // DA * DB
        for (&(i, k), x) in &a.dev {
            for (&(_, j), y) in b.dev.range((k, i64::MIN)..=(k, i64::MAX)) {
                add_into(&mut dev, (i, j), &(x * y));
            }
        }
        // Quarter-plane truncation: T(f)T(g) = T(fg) - sum_{k <= 0} f[k-i] g[j-k].
        if model == Model::Unilateral {
            for (e1, f) in a.symbol.terms().filter(|(e, _)| *e < 0) {
                for (e2, g) in b.symbol.terms() {
                    let lo = (1 + e1).max(1 - e2);
                    for k in lo..=0 {
                        add_into(&mut dev, (k - e1, k + e2), &-(f * g));
                    }
                }
            }
        }
        Structured {
            model,
            symbol: a.symbol.mul(&b.symbol),
            dev,
        }
    }
    fn show(&self, a: &Structured) -> String {
        parse::to_text(a)
    }
    fn from_int(&self, n: i64) -> Structured {
        self.shift(0, self.field.from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    /// Product entry by direct summation over every index where the left
    /// factor's row is nonzero.
    fn dense_entry(a: &Structured, b: &Structured, i: i64, j: i64) -> Scalar {
        a.row_candidates(i)
            .into_iter()
            .fold(a.field().zero(), |acc, k| &acc + &(&a.entry(i, k) * &b.entry(k, j)))
    }

    #[test]
    fn shifts_in_the_unilateral_model() {
        let r = ToeplitzRing::unilateral(f2());
        let alpha = r.from_ints(&[(-1, 1)], &[]).unwrap();
        let alpha_p = r.from_ints(&[(1, 1)], &[]).unwrap();
        assert_eq!(r.mul(&alpha_p, &alpha), r.one());
        let sigma = r.from_ints(&[], &[((1, 1), 1)]).unwrap();
        assert_eq!(r.mul(&alpha, &alpha_p), r.sub(&r.one(), &sigma));
        assert!(r.psi(&sigma).is_zero());
        assert_eq!(alpha.entry(2, 1), f2().one());
        assert!(alpha.entry(1, 2).is_zero());
    }

    #[test]
    fn bilateral_pure_symbols_multiply_exactly() {
        let q = BaseField::Rationals;
        let r = ToeplitzRing::bilateral(q);
        let f = r.from_ints(&[(-2, 3), (0, 1), (1, -1)], &[]).unwrap();
        let g = r.from_ints(&[(-1, 2), (3, 5)], &[]).unwrap();
        let fg = r.mul(&f, &g);
        assert!(fg.deviation().is_empty());
        for i in -12..=12 {
            for j in -12..=12 {
                assert_eq!(fg.entry(i, j), dense_entry(&f, &g, i, j));
            }
        }
    }

    #[test]
    fn witness_window_and_lines() {
        let r = ToeplitzRing::bilateral(f2());
        let a = r.from_ints(&[(-1, 1)], &[((-1, -1), 1), ((0, -1), -1)]).unwrap();
        let w = a.window(-2..=1, -2..=1);
        let ints: Vec<Vec<i64>> = w.iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
        assert_eq!(ints, vec![vec![0, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 1, 0]]);
        assert!(a.zero_line_certificate(Line::Row(0)));
        assert!(!a.zero_line_certificate(Line::Row(1)));
        assert!(!a.zero_line_certificate(Line::Col(-1)));
        let t = r.shift(3, f2().one());
        assert!((-5..5).all(|i| !t.zero_line_certificate(Line::Row(i)) && !t.zero_line_certificate(Line::Col(i))));
    }

    #[test]
    fn unilateral_products_match_direct_summation() {
        let p = BaseField::prime(5).unwrap();
        let r = ToeplitzRing::unilateral(p);
        let a = r.from_ints(&[(-2, 1), (0, 3), (1, 4)], &[((1, 2), 2), ((3, 1), 1)]).unwrap();
        let b = r.from_ints(&[(-1, 2), (2, 1)], &[((2, 2), 4)]).unwrap();
        let ab = r.mul(&a, &b);
        for i in 1..=14 {
            for j in 1..=14 {
                assert_eq!(ab.entry(i, j), dense_entry(&a, &b, i, j), "({i},{j})");
            }
        }
    }

    #[test]
    fn unilateral_index_guard() {
        let r = ToeplitzRing::unilateral(f2());
        assert_eq!(r.from_ints(&[], &[((0, 1), 1)]), Err(ToeplitzError::IndexOutOfRange(0, 1)));
    }
}
