//! Exact scalars: the rationals, prime fields, rational function fields
//! `F(t)`, Laurent polynomials, and on-demand Laurent expansion of rational
//! functions.

mod field;
mod laurent;
mod poly;
mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::expr::{self, ExprAlgebra, ParseError};

pub use field::{BaseField, Scalar};
pub use laurent::LaurentPolynomial;
pub use poly::Poly;
pub use ratfunc::{LaurentExpansion, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unknown field selector '{0}'")]
    UnknownField(String),
    #[error("element is not invertible")]
    NotInvertible,
}

/// `t`-adic valuation; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// A field selector: `Q`, `F5`, or a rational function field such as `Q(t)`, `F5(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub base: BaseField,
    pub variable: Option<String>,
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let t = text.trim();
        if let Some(open) = t.find('(') {
            let inner = t[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| ScalarError::UnknownField(t.to_string()))?;
            let var = inner.trim();
            if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(ScalarError::UnknownField(t.to_string()));
            }
            return Ok(FieldSpec {
                base: BaseField::parse(&t[..open])?,
                variable: Some(var.to_string()),
            });
        }
        Ok(FieldSpec {
            base: BaseField::parse(t)?,
            variable: None,
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variable {
            Some(v) => write!(f, "{}({v})", self.base),
            None => write!(f, "{}", self.base),
        }
    }
}

/// Evaluates scalar literals (`3`, `-2/7`) in a base field.
pub struct ScalarAlgebra(pub BaseField);

impl ExprAlgebra for ScalarAlgebra {
    type Value = Scalar;

    fn int(&self, n: &BigInt) -> Scalar {
        self.0.from_bigint(n)
    }
    fn var(&self, name: &str) -> Result<Scalar, String> {
        Err(format!("unexpected identifier '{name}' in scalar literal"))
    }
    fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        &a + &b
    }
    fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        &a - &b
    }
    fn neg(&self, a: Scalar) -> Scalar {
        -a
    }
    fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        &a * &b
    }
    fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar, String> {
        a.div(&b).map_err(|e| e.to_string())
    }
    fn pow(&self, a: Scalar, e: i64) -> Result<Scalar, String> {
        let base = if e < 0 {
            a.inv().map_err(|e| e.to_string())?
        } else {
            a
        };
        Ok(base.pow(e.unsigned_abs()))
    }
}

/// Evaluates expressions in `F(var)`.
pub struct RationalFunctionAlgebra {
    pub field: BaseField,
    pub variable: String,
}

impl ExprAlgebra for RationalFunctionAlgebra {
    type Value = RationalFunction;

    fn int(&self, n: &BigInt) -> RationalFunction {
        RationalFunction::constant(self.field.from_bigint(n))
    }
    fn var(&self, name: &str) -> Result<RationalFunction, String> {
        if name == self.variable {
            Ok(RationalFunction::var(self.field))
        } else {
            Err(format!("unknown variable '{name}' (expected '{}')", self.variable))
        }
    }
    fn add(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        a.add(&b)
    }
    fn sub(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        a.sub(&b)
    }
    fn neg(&self, a: RationalFunction) -> RationalFunction {
        a.neg()
    }
    fn mul(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        a.mul(&b)
    }
    fn div(&self, a: RationalFunction, b: RationalFunction) -> Result<RationalFunction, String> {
        a.div(&b).map_err(|e| e.to_string())
    }
    fn pow(&self, a: RationalFunction, e: i64) -> Result<RationalFunction, String> {
        a.pow(e).map_err(|e| e.to_string())
    }
}

/// Evaluates expressions in `F[t, t^-1]`; division only by monomials.
pub struct LaurentAlgebra {
    pub field: BaseField,
    pub variable: String,
}

impl ExprAlgebra for LaurentAlgebra {
    type Value = LaurentPolynomial;

    fn int(&self, n: &BigInt) -> LaurentPolynomial {
        LaurentPolynomial::monomial(self.field.from_bigint(n), 0)
    }
    fn var(&self, name: &str) -> Result<LaurentPolynomial, String> {
        if name == self.variable {
            Ok(LaurentPolynomial::monomial(self.field.one(), 1))
        } else {
            Err(format!("unknown variable '{name}' (expected '{}')", self.variable))
        }
    }
    fn add(&self, a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial {
        a.add(&b)
    }
    fn sub(&self, a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial {
        a.sub(&b)
    }
    fn neg(&self, a: LaurentPolynomial) -> LaurentPolynomial {
        a.neg()
    }
    fn mul(&self, a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial {
        a.mul(&b)
    }
    fn div(&self, a: LaurentPolynomial, b: LaurentPolynomial) -> Result<LaurentPolynomial, String> {
        let inv = b
            .inverse()
            .ok_or_else(|| "division by a non-monomial Laurent polynomial".to_string())?;
        Ok(a.mul(&inv))
    }
    fn pow(&self, a: LaurentPolynomial, e: i64) -> Result<LaurentPolynomial, String> {
        let base = if e < 0 {
            a.inverse()
                .ok_or_else(|| "negative power of a non-monomial".to_string())?
        } else {
            a
        };
        Ok(base.pow(e.unsigned_abs() as u32))
    }
}

pub fn parse_scalar(text: &str, field: BaseField) -> Result<Scalar, ParseError> {
    expr::parse_in(&ScalarAlgebra(field), text)
}

pub fn parse_rational_function(
    text: &str,
    field: BaseField,
    variable: &str,
) -> Result<RationalFunction, ParseError> {
    expr::parse_in(
        &RationalFunctionAlgebra {
            field,
            variable: variable.to_string(),
        },
        text,
    )
}

pub fn parse_laurent(text: &str, field: BaseField, variable: &str) -> Result<LaurentPolynomial, ParseError> {
    expr::parse_in(
        &LaurentAlgebra {
            field,
            variable: variable.to_string(),
        },
        text,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_selectors() {
        assert_eq!(
            FieldSpec::parse("F5(x)").unwrap(),
            FieldSpec {
                base: BaseField::Prime(5),
                variable: Some("x".into())
            }
        );
        assert_eq!(FieldSpec::parse("Q(t)").unwrap().to_string(), "Q(t)");
        assert_eq!(FieldSpec::parse("F2").unwrap().variable, None);
        assert!(FieldSpec::parse("F6").is_err());
        assert!(FieldSpec::parse("Q(").is_err());
    }

    #[test]
    fn scalar_literals() {
        let q = BaseField::Rationals;
        assert_eq!(parse_scalar("-3/4", q).unwrap(), q.ratio(-3, 4).unwrap());
        let f7 = BaseField::prime(7).unwrap();
        assert_eq!(parse_scalar("1/3", f7).unwrap(), f7.from_i64(5));
        assert!(parse_scalar("1/0", q).is_err());
        assert!(parse_scalar("x", q).is_err());
    }

    #[test]
    fn function_field_literal() {
        let f5 = BaseField::prime(5).unwrap();
        // x^2 + 5x + 4 reduces to x^2 + 4 in characteristic 5
        let p = parse_rational_function("(x+1)*(x+4)", f5, "x").unwrap();
        assert_eq!(p, RationalFunction::from_poly(Poly::from_i64s(f5, &[4, 0, 1])));
        let d = parse_rational_function("t/(1-t)^2", BaseField::Rationals, "t").unwrap();
        assert_eq!(d.laurent_coeff(3), BaseField::Rationals.from_i64(3));
    }

    #[test]
    fn laurent_literal() {
        let q = BaseField::Rationals;
        let f = parse_laurent("t^-1 + 2*t^3", q, "t").unwrap();
        assert_eq!(f, LaurentPolynomial::from_i64s(q, &[(-1, 1), (3, 2)]));
        assert!(parse_laurent("1/(1+t)", q, "t").is_err());
    }
}
