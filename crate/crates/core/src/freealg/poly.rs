use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{Alphabet, Word};
use crate::expr::{self, ExprAlgebra, ParseError};
use crate::scalars::{BaseField, Scalar};

/// Noncommutative polynomial: a finite map from words to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    field: BaseField,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(field: BaseField) -> Self {
        NCPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: BaseField) -> Self {
        Self::monomial(field.one(), Word::empty())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(w, &c);
        p
    }

    pub fn word(field: BaseField, w: Word) -> Self {
        Self::monomial(field.one(), w)
    }

    pub fn letter(field: BaseField, l: u8) -> Self {
        Self::word(field, Word::letter(l))
    }

    pub fn from_terms(field: BaseField, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(field);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Word::empty())
                .is_some_and(Scalar::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    /// Longest word length; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let v = &*old + c;
                if v.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = v;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub(crate) fn take_largest(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() {
            (self.clone(), o)
        } else {
            (o.clone(), self)
        };
        for (w, c) in &small.terms {
            big.add_term(w.clone(), c);
        }
        big
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(self.field, self.terms.iter().map(|(w, c)| (w.clone(), c * s)))
    }

    /// Product in the free algebra (no reduction).
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            alphabet,
        }
    }
}

/// Prints terms from the largest word down, e.g. `a*r*a - a`.
pub struct PolyDisplay<'a> {
    poly: &'a NCPoly,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", w.display(self.alphabet))?;
            } else {
                write!(f, "{mag}*{}", w.display(self.alphabet))?;
            }
        }
        Ok(())
    }
}

/// Evaluates expressions into the free algebra over `alphabet`.
pub struct FreeAlgebra<'a> {
    pub alphabet: &'a Alphabet,
    pub field: BaseField,
}

impl ExprAlgebra for FreeAlgebra<'_> {
    type Value = NCPoly;

    fn int(&self, n: &BigInt) -> NCPoly {
        NCPoly::constant(self.field.from_bigint(n))
    }
    fn var(&self, name: &str) -> Result<NCPoly, String> {
        self.alphabet
            .index(name)
            .map(|l| NCPoly::letter(self.field, l))
            .ok_or_else(|| format!("unknown generator '{name}'"))
    }
    fn add(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        a.add(&b)
    }
    fn sub(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        a.sub(&b)
    }
    fn neg(&self, a: NCPoly) -> NCPoly {
        a.neg()
    }
    fn mul(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        a.mul(&b)
    }
    fn div(&self, a: NCPoly, b: NCPoly) -> Result<NCPoly, String> {
        if b.len() == 1 && b.degree() == Some(0) {
            let c = b.constant_term().inv().map_err(|e| e.to_string())?;
            Ok(a.scale(&c))
        } else {
            Err("division is only allowed by nonzero scalars".into())
        }
    }
    fn pow(&self, a: NCPoly, e: i64) -> Result<NCPoly, String> {
        if e < 0 {
            return Err(format!("malformed exponent {e}: exponents must be nonnegative"));
        }
        Ok(a.pow(e as u32))
    }
}

/// Parses a free-algebra expression such as `a*r*a - a` or `(1+a)^2`.
pub fn parse_expr(text: &str, alphabet: &Alphabet, field: BaseField) -> Result<NCPoly, ParseError> {
    expr::parse_in(&FreeAlgebra { alphabet, field }, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    #[test]
    fn parse_two_terms() {
        let a = Alphabet::parse("a r").unwrap();
        let p = parse_expr("a*r*a - a", &a, f2()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.display(&a).to_string(), "a*r*a + a");
    }

    #[test]
    fn square_in_characteristic_two() {
        let a = Alphabet::parse("a").unwrap();
        let p = parse_expr("(1+a)^2", &a, f2()).unwrap();
        assert_eq!(p, parse_expr("1 + a^2", &a, f2()).unwrap());
    }

    #[test]
    fn zeroth_power_is_identity() {
        let a = Alphabet::parse("a").unwrap();
        assert!(parse_expr("a^0", &a, BaseField::Rationals).unwrap().is_one());
    }

    #[test]
    fn diagnostics() {
        let a = Alphabet::parse("a r").unwrap();
        let err = parse_expr("a*q", &a, f2()).unwrap_err();
        assert_eq!(err.column, 3);
        assert!(err.message.contains("unknown generator"));
        assert!(parse_expr("a^-1", &a, f2()).is_err());
        assert!(parse_expr("   ", &a, f2()).is_err());
    }

    #[test]
    fn rational_coefficients_print_and_reparse() {
        let a = Alphabet::parse("a r").unwrap();
        let q = BaseField::Rationals;
        let p = parse_expr("-1/2*a*r + 3 - r^2*a", &a, q).unwrap();
        let s = p.display(&a).to_string();
        assert_eq!(parse_expr(&s, &a, q).unwrap(), p);
    }
}
