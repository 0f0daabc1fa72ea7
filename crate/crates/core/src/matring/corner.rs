use std::collections::HashSet;

use super::{Ring, RingError};

/// The corner ring `eRe` of an idempotent `e`, with identity `e`.
pub struct CornerView<'a, R: Ring> {
    ambient: &'a R,
    e: R::Elem,
}

pub fn peirce_corner<R: Ring>(ambient: &R, e: R::Elem) -> Result<CornerView<'_, R>, RingError> {
    if ambient.mul(&e, &e) != e {
        return Err(RingError::NotIdempotent);
    }
    Ok(CornerView { ambient, e })
}

impl<R: Ring> CornerView<'_, R> {
    pub fn idempotent(&self) -> &R::Elem {
        &self.e
    }

    /// `x -> e x e`
    pub fn inject(&self, x: &R::Elem) -> R::Elem {
        self.ambient.mul(&self.ambient.mul(&self.e, x), &self.e)
    }

    pub fn contains(&self, x: &R::Elem) -> bool {
        self.inject(x) == *x
    }
}

impl<R: Ring> Ring for CornerView<'_, R> {
    type Elem = R::Elem;

    fn zero(&self) -> R::Elem {
        self.ambient.zero()
    }
    fn one(&self) -> R::Elem {
        self.e.clone()
    }
    fn add(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ambient.add(a, b)
    }
    fn neg(&self, a: &R::Elem) -> R::Elem {
        self.ambient.neg(a)
    }
    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ambient.mul(a, b)
    }
    fn show(&self, a: &R::Elem) -> String {
        self.ambient.show(a)
    }
    fn elements(&self) -> Option<Vec<R::Elem>> {
        let mut seen = HashSet::new();
        Some(
            self.ambient
                .elements()?
                .iter()
                .map(|x| self.inject(x))
                .filter(|y| seen.insert(y.clone()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::{Field, MatRing};
    use crate::scalars::BaseField;

    #[test]
    fn diagonal_corner_is_f2() {
        let m = MatRing::new(Field(BaseField::prime(2).unwrap()), 2);
        let e = m.ints(&[&[1, 0], &[0, 0]]);
        let c = peirce_corner(&m, e.clone()).unwrap();
        let elems = c.elements().unwrap();
        assert_eq!(elems.len(), 2);
        let units: Vec<_> = elems.iter().filter(|x| c.inverse(x).unwrap().is_some()).collect();
        assert_eq!(units, vec![&e]);
    }

    #[test]
    fn full_corner_and_rejection() {
        let m = MatRing::new(Field(BaseField::prime(2).unwrap()), 2);
        let c = peirce_corner(&m, m.one()).unwrap();
        assert_eq!(c.elements().unwrap().len(), 16);
        assert!(peirce_corner(&m, m.ints(&[&[1, 1], &[1, 0]])).is_err());
    }
}
