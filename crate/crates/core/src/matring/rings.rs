use std::sync::Arc;

use super::Ring;
use crate::freealg::{NCPoly, ReductionSystem};
use crate::scalars::{BaseField, Poly, RationalFunction, Scalar};

/// A coefficient field viewed as a ring handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field(pub BaseField);

impl Ring for Field {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.0.zero()
    }
    fn one(&self) -> Scalar {
        self.0.one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn show(&self, a: &Scalar) -> String {
        a.to_string()
    }
    fn from_int(&self, n: i64) -> Scalar {
        self.0.from_i64(n)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn elements(&self) -> Option<Vec<Scalar>> {
        self.0.elements()
    }
    fn is_field(&self) -> bool {
        true
    }
    fn field_inv(&self, a: &Scalar) -> Option<Scalar> {
        a.inv().ok()
    }
}

/// The rational function field `F(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatFuncField(pub BaseField);

impl RatFuncField {
    pub fn var(&self) -> RationalFunction {
        RationalFunction::var(self.0)
    }

    pub fn poly(&self, coeffs: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_i64s(self.0, coeffs))
    }
}

impl Ring for RatFuncField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero(self.0)
    }
    fn one(&self) -> RationalFunction {
        RationalFunction::one(self.0)
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.add(b)
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        a.neg()
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.mul(b)
    }
    fn show(&self, a: &RationalFunction) -> String {
        a.to_string()
    }
    fn from_int(&self, n: i64) -> RationalFunction {
        RationalFunction::constant(self.0.from_i64(n))
    }
    fn is_field(&self) -> bool {
        true
    }
    fn field_inv(&self, a: &RationalFunction) -> Option<RationalFunction> {
        a.inv().ok()
    }
}

/// Integers modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZMod(pub u32);

impl Ring for ZMod {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.0 as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.0 - a) % self.0
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.0 as u64) as u32
    }
    fn show(&self, a: &u32) -> String {
        a.to_string()
    }
    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0 as i64) as u32
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.0).collect())
    }
}

/// Truncated polynomials `F_p[x]/(x^k)`; elements are coefficient vectors of length `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncPoly {
    pub p: u32,
    pub k: usize,
}

impl Ring for TruncPoly {
    type Elem = Vec<u32>;

    fn zero(&self) -> Vec<u32> {
        vec![0; self.k]
    }
    fn one(&self) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = 1 % self.p;
        v
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let mut out = vec![0u64; self.k];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(self.k - i) {
                out[i + j] += *x as u64 * *y as u64;
            }
        }
        out.into_iter().map(|v| (v % self.p as u64) as u32).collect()
    }
    fn show(&self, a: &Vec<u32>) -> String {
        let poly = Poly::from_coeffs(
            BaseField::Prime(self.p),
            a.iter().map(|&c| Scalar::Mod { value: c, modulus: self.p }).collect(),
        );
        poly.to_string()
    }
    fn elements(&self) -> Option<Vec<Vec<u32>>> {
        let total = (self.p as u64).checked_pow(self.k as u32)?;
        Some(
            (0..total)
                .map(|mut n| {
                    (0..self.k)
                        .map(|_| {
                            let d = (n % self.p as u64) as u32;
                            n /= self.p as u64;
                            d
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

/// A free algebra modulo a reduction system; elements are kept in normal form.
///
/// Equality of normal forms is equality in the quotient only when the system
/// is confluent; callers check that with the diamond checker.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub sys: Arc<ReductionSystem>,
}

impl Quotient {
    pub fn new(sys: ReductionSystem) -> Self {
        Quotient { sys: Arc::new(sys) }
    }

    pub fn gen(&self, name: &str) -> NCPoly {
        self.sys.gen(name).expect("generator declared")
    }

    pub fn parse(&self, text: &str) -> Result<NCPoly, crate::freealg::FreeAlgError> {
        self.sys.parse_poly(text).map(|p| self.sys.normal_form(&p))
    }

    pub fn scalar(&self, c: &Scalar) -> NCPoly {
        NCPoly::constant(c.clone())
    }
}

impl Ring for Quotient {
    type Elem = NCPoly;

    fn zero(&self) -> NCPoly {
        self.sys.zero()
    }
    fn one(&self) -> NCPoly {
        self.sys.one()
    }
    fn add(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.add(b)
    }
    fn neg(&self, a: &NCPoly) -> NCPoly {
        a.neg()
    }
    fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.sys.mul(a, b)
    }
    fn show(&self, a: &NCPoly) -> String {
        self.sys.show(a)
    }
    fn from_int(&self, n: i64) -> NCPoly {
        self.sys.scalar(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let z = ZMod(6);
        assert_eq!(z.add(&3, &4), 1);
        assert_eq!(z.neg(&0), 0);
        assert_eq!(z.inverse(&5).unwrap(), Some(5));
        assert_eq!(z.inverse(&2).unwrap(), None);
    }

    #[test]
    fn truncated_square_vanishes() {
        let r = TruncPoly { p: 2, k: 2 };
        let x = vec![0, 1];
        assert_eq!(r.mul(&x, &x), r.zero());
        assert_eq!(r.elements().unwrap().len(), 4);
        assert_eq!(r.show(&vec![1, 1]), r.show(&r.add(&r.one(), &x)));
    }

    #[test]
    fn field_inverse_in_f5x() {
        let f = RatFuncField(BaseField::prime(5).unwrap());
        let p = f.poly(&[1, 1]);
        let q = f.poly(&[4, 1]);
        assert_eq!(f.mul(&p, &q), f.poly(&[4, 0, 1]));
        let inv = f.inverse(&p).unwrap().unwrap();
        assert!(f.mul(&p, &inv) == f.one());
    }
}
