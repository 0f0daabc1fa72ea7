use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ScalarError;

/// Coefficient field: the rationals or a prime field of machine-word size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseField {
    Rationals,
    Prime(u32),
}

/// An element of a [`BaseField`].
///
/// Prime-field values carry their modulus so that values are self-describing;
/// mixing moduli in one operation is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u32, modulus: u32 },
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseField {
    pub fn prime(p: u32) -> Result<Self, ScalarError> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(ScalarError::NotPrime(p as u64));
        }
        Ok(BaseField::Prime(p))
    }

    /// Parses a field selector such as `Q`, `F2` or `F5`.
    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let t = text.trim();
        if t == "Q" {
            return Ok(BaseField::Rationals);
        }
        if let Some(rest) = t.strip_prefix('F') {
            if let Ok(p) = rest.parse::<u64>() {
                if p >= (1 << 31) {
                    return Err(ScalarError::NotPrime(p));
                }
                return BaseField::prime(p as u32);
            }
        }
        Err(ScalarError::UnknownField(t.to_string()))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u32> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            BaseField::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            BaseField::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            BaseField::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                Scalar::Mod {
                    value: r.to_u32().expect("residue fits"),
                    modulus: *p,
                }
            }
        }
    }

    /// `num / den` in this field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        let d = self.from_i64(den);
        Ok(&self.from_i64(num) * &d.inv()?)
    }

    /// Every element, in increasing residue order (finite fields only).
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(
                (0..*p)
                    .map(|v| Scalar::Mod {
                        value: v,
                        modulus: *p,
                    })
                    .collect(),
            ),
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        x.field() == *self
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // extended Euclid on i64
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u32
}

impl Scalar {
    pub fn field(&self) -> BaseField {
        match self {
            Scalar::Rat(_) => BaseField::Rationals,
            Scalar::Mod { modulus, .. } => BaseField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Integer representative when the value is an integer (always for prime fields).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rat(_) => None,
            Scalar::Mod { value, .. } => Some(*value as i64),
        }
    }

    /// Sign used for printing; in `F_p` an element counts as negative when its
    /// balanced representative is, so `p - 1` prints as `-1`.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { value, modulus } => *value > modulus / 2,
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_one_plus_one_is_zero() {
        let f = BaseField::prime(2).unwrap();
        assert!((&f.one() + &f.one()).is_zero());
    }

    #[test]
    fn rational_inverse() {
        let q = BaseField::Rationals;
        let x = q.ratio(3, 4).unwrap();
        assert_eq!(x.inv().unwrap(), q.ratio(4, 3).unwrap());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = BaseField::prime(5).unwrap();
        assert_eq!(f.zero().inv(), Err(ScalarError::DivisionByZero));
        assert_eq!(BaseField::Rationals.zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn selectors() {
        assert_eq!(BaseField::parse("Q").unwrap(), BaseField::Rationals);
        assert_eq!(BaseField::parse("F5").unwrap(), BaseField::Prime(5));
        assert!(BaseField::parse("F4").is_err());
        assert!(BaseField::parse("R").is_err());
    }

    #[test]
    fn prime_field_inverses() {
        let f = BaseField::prime(7).unwrap();
        for x in f.elements().unwrap().into_iter().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn negative_residues() {
        let f = BaseField::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.from_bigint(&BigInt::from(-7)), f.from_i64(3));
    }
}
