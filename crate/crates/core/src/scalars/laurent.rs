use std::collections::BTreeMap;
use std::fmt;

use super::{BaseField, Poly, RationalFunction, Scalar, ScalarError, Valuation};

/// Finite Laurent polynomial `sum_k c_k t^k`, `k` ranging over the integers.
///
/// Zero coefficients are never stored; the empty map is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    field: BaseField,
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentPolynomial {
    pub fn zero(field: BaseField) -> Self {
        LaurentPolynomial {
            field,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(field: BaseField) -> Self {
        Self::monomial(field.one(), 0)
    }

    pub fn monomial(c: Scalar, k: i64) -> Self {
        let field = c.field();
        Self::from_terms(field, [(k, c)])
    }

    pub fn from_terms(field: BaseField, terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut p = Self::zero(field);
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    pub fn from_i64s(field: BaseField, terms: &[(i64, i64)]) -> Self {
        Self::from_terms(field, terms.iter().map(|&(k, c)| (k, field.from_i64(c))))
    }

    fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&k) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.coeffs.insert(k, v);
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(Scalar::is_one)
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.keys().next() {
            Some(k) => Valuation::Finite(*k),
            None => Valuation::Infinite,
        }
    }

    /// Smallest and largest exponent in the support.
    pub fn span(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().next_back()?))
    }

    /// `(c, k)` when the polynomial is the single term `c t^k`.
    pub fn as_monomial(&self) -> Option<(Scalar, i64)> {
        if self.coeffs.len() == 1 {
            let (k, c) = self.coeffs.iter().next()?;
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.coeffs {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            field: self.field,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(self.field, self.coeffs.iter().map(|(k, c)| (*k, c * s)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.field);
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                out.add_term(i + j, &(a * b));
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

    /// Inverse within Laurent polynomials; exists exactly for nonzero monomials.
    pub fn inverse(&self) -> Option<Self> {
        let (c, k) = self.as_monomial()?;
        Some(Self::monomial(c.inv().ok()?, -k))
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        let Some((lo, hi)) = self.span() else {
            return RationalFunction::zero(self.field);
        };
        let shift = lo.min(0);
        let coeffs = (shift..=hi).map(|k| self.coeff(k)).collect();
        let num = Poly::from_coeffs(self.field, coeffs);
        let den = Poly::monomial(self.field.one(), (-shift) as usize);
        RationalFunction::new(num, den).expect("monomial denominator is nonzero")
    }

    /// Substitutes `t -> x` into a polynomial `p` (`p(t)` with nonnegative powers).
    pub fn compose_poly(p: &Poly, x: &Self) -> Self {
        let mut acc = Self::zero(p.field());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x).add(&Self::monomial(c.clone(), 0));
        }
        acc
    }

    pub fn inverse_or_err(&self) -> Result<Self, ScalarError> {
        self.inverse().ok_or(ScalarError::NotInvertible)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag_s = mag.to_string();
            if *k == 0 {
                write!(f, "{mag_s}")?;
                continue;
            }
            if !mag.is_one() {
                if mag_s.contains('/') {
                    write!(f, "({mag_s})*")?;
                } else {
                    write!(f, "{mag_s}*")?;
                }
            }
            match k {
                1 => write!(f, "t")?,
                k => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_of_finite_support() {
        let q = BaseField::Rationals;
        let f = LaurentPolynomial::from_i64s(q, &[(-1, 1), (0, 1)]);
        assert_eq!(f.valuation(), Valuation::Finite(-1));
        assert_eq!(LaurentPolynomial::zero(q).valuation(), Valuation::Infinite);
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let f2 = BaseField::prime(2).unwrap();
        let f = LaurentPolynomial::from_i64s(f2, &[(3, 1), (3, 1), (0, 1)]);
        assert_eq!(f, LaurentPolynomial::one(f2));
    }

    #[test]
    fn monomial_inverse() {
        let q = BaseField::Rationals;
        let f = LaurentPolynomial::monomial(q.from_i64(3), -2);
        let g = f.inverse().unwrap();
        assert!(f.mul(&g).is_one());
        assert!(LaurentPolynomial::from_i64s(q, &[(0, 1), (1, 1)]).inverse().is_none());
    }

    #[test]
    fn rational_function_roundtrip() {
        let q = BaseField::Rationals;
        let f = LaurentPolynomial::from_i64s(q, &[(-2, 5), (1, -1), (3, 2)]);
        let rf = f.to_rational_function();
        assert_eq!(rf.to_laurent_polynomial().unwrap(), f);
        for k in -4..6 {
            assert_eq!(rf.laurent_coeff(k), f.coeff(k));
        }
    }

    #[test]
    fn display() {
        let q = BaseField::Rationals;
        let f = LaurentPolynomial::from_i64s(q, &[(-1, 1), (0, -2), (2, 1)]);
        assert_eq!(f.to_string(), "t^-1 - 2 + t^2");
    }
}
