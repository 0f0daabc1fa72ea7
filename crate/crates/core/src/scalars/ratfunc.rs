use std::fmt;

use super::{BaseField, LaurentPolynomial, Poly, Scalar, ScalarError, Valuation};

/// Element of `F(t)` kept in canonical form: coprime numerator and
/// denominator, denominator monic, zero stored as `0/1`.
///
/// Because the form is canonical, `==` is structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let field = num.field();
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero(field),
                den: Poly::one(field),
            };
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g).expect("gcd divides");
        let (mut d, _) = den.div_rem(&g).expect("gcd divides");
        let lc = d.leading().expect("nonzero").inv().expect("nonzero");
        n = n.scale(&lc);
        d = d.scale(&lc);
        RationalFunction { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        Self::normalized(p, Poly::one(field))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero(field: BaseField) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: BaseField) -> Self {
        Self::from_poly(Poly::one(field))
    }

    /// The variable `t` itself.
    pub fn var(field: BaseField) -> Self {
        Self::from_poly(Poly::monomial(field.one(), 1))
    }

    pub fn field(&self) -> BaseField {
        self.num.field()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Polynomial degree when the value is a polynomial.
    pub fn poly_degree(&self) -> Option<usize> {
        if self.den.is_one() {
            self.num.degree()
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.field());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Re-normalizes; identity on canonical values.
    pub fn canonicalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    /// Order of vanishing at `t = 0`.
    pub fn valuation(&self) -> Valuation {
        match (self.num.order_at_zero(), self.den.order_at_zero()) {
            (Some(n), Some(d)) => Valuation::Finite(n as i64 - d as i64),
            _ => Valuation::Infinite,
        }
    }

    /// Coefficient of `t^k` in the Laurent expansion at `t = 0`.
    pub fn laurent_coeff(&self, k: i64) -> Scalar {
        LaurentExpansion::new(self).coeff(k)
    }

    /// Exact conversion when the denominator is a power of `t`.
    pub fn to_laurent_polynomial(&self) -> Option<LaurentPolynomial> {
        let v = self.den.order_at_zero()?;
        if self.den.degree() != Some(v) {
            return None;
        }
        let terms = self
            .num
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64 - v as i64, c.clone()));
        Some(LaurentPolynomial::from_terms(self.field(), terms))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            self.num.fmt_in("x", f)
        } else {
            write!(f, "(")?;
            self.num.fmt_in("x", f)?;
            write!(f, ")/(")?;
            self.den.fmt_in("x", f)?;
            write!(f, ")")
        }
    }
}

/// Memoized Laurent expansion of a rational function at `t = 0`.
///
/// Writing `f = t^s * N(t)/D(t)` with `D(0) != 0`, the power-series
/// coefficients `c_k` of `N/D` satisfy
/// `c_k = (n_k - sum_{i=1..k} d_i c_{k-i}) / d_0`; coefficients are computed
/// on demand and cached. One expansion per task; it is not shared.
#[derive(Clone, Debug)]
pub struct LaurentExpansion {
    shift: i64,
    num: Vec<Scalar>,
    den: Vec<Scalar>,
    den0_inv: Scalar,
    cache: Vec<Scalar>,
    zero: Scalar,
    is_zero: bool,
}

impl LaurentExpansion {
    pub fn new(f: &RationalFunction) -> Self {
        let field = f.field();
        if f.is_zero() {
            return LaurentExpansion {
                shift: 0,
                num: Vec::new(),
                den: vec![field.one()],
                den0_inv: field.one(),
                cache: Vec::new(),
                zero: field.zero(),
                is_zero: true,
            };
        }
        let vn = f.num.order_at_zero().expect("nonzero");
        let vd = f.den.order_at_zero().expect("nonzero");
        let num = f.num.shift_down(vn).coeffs().to_vec();
        let den = f.den.shift_down(vd).coeffs().to_vec();
        let den0_inv = den[0].inv().expect("D(0) != 0 after shifting");
        LaurentExpansion {
            shift: vn as i64 - vd as i64,
            num,
            den,
            den0_inv,
            cache: Vec::new(),
            zero: field.zero(),
            is_zero: false,
        }
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.shift)
        }
    }

    pub fn coeff(&mut self, k: i64) -> Scalar {
        if self.is_zero || k < self.shift {
            return self.zero.clone();
        }
        let idx = (k - self.shift) as usize;
        while self.cache.len() <= idx {
            let n = self.cache.len();
            let mut acc = self.num.get(n).cloned().unwrap_or_else(|| self.zero.clone());
            for i in 1..=n.min(self.den.len() - 1) {
                acc = &acc - &(&self.den[i] * &self.cache[n - i]);
            }
            self.cache.push(&acc * &self.den0_inv);
        }
        self.cache[idx].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64s(q(), num), Poly::from_i64s(q(), den)).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (2t + 2) / (4t^2 - 4) = (1/2) / (t - 1)
        let f = rf(&[2, 2], &[-4, 0, 4]);
        assert!(f.denominator().leading().unwrap().is_one());
        assert_eq!(f, rf(&[1], &[-2, 2]));
        assert_eq!(f.canonicalize(), f);
    }

    #[test]
    fn geometric_series_coefficient() {
        let f = rf(&[1], &[1, -1]);
        for k in 0..10 {
            assert!(f.laurent_coeff(k).is_one());
        }
        assert!(f.laurent_coeff(-1).is_zero());
    }

    #[test]
    fn monomial_inverse_expansion() {
        let f = rf(&[1], &[0, 1]);
        assert!(f.laurent_coeff(-1).is_one());
        assert!(f.laurent_coeff(0).is_zero());
        assert_eq!(f.valuation(), Valuation::Finite(-1));
    }

    #[test]
    fn valuation_after_cancellation() {
        // (t^2 + t^3) / (1 + t) = t^2
        let f = rf(&[0, 0, 1, 1], &[1, 1]);
        assert_eq!(f.valuation(), Valuation::Finite(2));
        assert_eq!(RationalFunction::zero(q()).valuation(), Valuation::Infinite);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(Poly::one(q()), Poly::zero(q())).is_err());
        assert!(RationalFunction::zero(q()).inv().is_err());
    }
}
