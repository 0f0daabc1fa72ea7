use serde::Serialize;

use super::{all_hold, mul3, ConstructionError, Identity};
use crate::matring::Ring;

/// Both sides of the clean-pair correspondence for one `a`.
#[derive(Debug, Clone, Serialize)]
pub struct ZhangPair<E> {
    #[serde(skip)]
    pub e: E,
    #[serde(skip)]
    pub u: E,
    #[serde(skip)]
    pub g: E,
    #[serde(skip)]
    pub v: E,
    pub shown: [String; 4],
    pub identities: Vec<Identity>,
}

impl<E> ZhangPair<E> {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

fn certify<R: Ring>(ring: &R, e: R::Elem, u: R::Elem, g: R::Elem, v: R::Elem) -> ZhangPair<R::Elem> {
    let one = ring.one();
    let a = ring.add(&e, &u);
    let h = ring.sub(&one, &g);
    let identities = vec![
        Identity::new("e^2 = e", ring.mul(&e, &e) == e),
        Identity::new("g^2 = g", ring.mul(&g, &g) == g),
        Identity::new("g = g v a", mul3(ring, &g, &v, &a) == g),
        Identity::new(
            "1 - g = -(1 - g) v (1 - a)",
            ring.neg(&mul3(ring, &h, &v, &ring.sub(&one, &a))) == h,
        ),
    ];
    ZhangPair {
        shown: [ring.show(&e), ring.show(&u), ring.show(&g), ring.show(&v)],
        e,
        u,
        g,
        v,
        identities,
    }
}

/// `(e, u) ↦ (g, v) = (1 − u⁻¹eu, u⁻¹)`.
pub fn zhang_forward<R: Ring>(ring: &R, e: &R::Elem, u: &R::Elem) -> Result<ZhangPair<R::Elem>, ConstructionError> {
    if ring.mul(e, e) != *e {
        return Err(ConstructionError::NotIdempotent(ring.show(e)));
    }
    let ui = ring.inverse(u)?.ok_or_else(|| ConstructionError::NotUnit(ring.show(u)))?;
    let g = ring.sub(&ring.one(), &mul3(ring, &ui, e, u));
    Ok(certify(ring, e.clone(), u.clone(), g, ui))
}

/// `(g, v) ↦ (e, u) = (1 − v⁻¹gv, v⁻¹)`; then `a = e + u`.
pub fn zhang_backward<R: Ring>(ring: &R, g: &R::Elem, v: &R::Elem) -> Result<ZhangPair<R::Elem>, ConstructionError> {
    if ring.mul(g, g) != *g {
        return Err(ConstructionError::NotIdempotent(ring.show(g)));
    }
    let vi = ring.inverse(v)?.ok_or_else(|| ConstructionError::NotUnit(ring.show(v)))?;
    let e = ring.sub(&ring.one(), &mul3(ring, &vi, g, v));
    Ok(certify(ring, e, vi, g.clone(), v.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::{Field, MatRing, RingSpec};
    use crate::par::Exec;
    use crate::scalars::BaseField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_idempotent_gives_g_one() {
        let m = MatRing::new(Field(BaseField::prime(3).unwrap()), 2);
        let u = m.ints(&[&[1, 1], &[0, 1]]);
        let p = zhang_forward(&m, &m.zero(), &u).unwrap();
        assert_eq!(p.g, m.one());
        assert_eq!(m.mul(&p.v, &u), m.one());
        assert!(p.verified());
    }

    #[test]
    fn remark_fixture_over_f3() {
        let m = MatRing::new(Field(BaseField::prime(3).unwrap()), 2);
        let e = m.ints(&[&[1, 0], &[0, 0]]);
        let u = m.ints(&[&[-1, 0], &[1, 1]]);
        let p = zhang_forward(&m, &e, &u).unwrap();
        assert!(p.verified());
        // u⁻¹ = [[-1,0],[1,1]] (an involution), g = 1 - u⁻¹eu = [[0,0],[1,1]].
        assert_eq!(p.v, u);
        assert_eq!(p.g, m.ints(&[&[0, 0], &[1, 1]]));
        assert!(zhang_forward(&m, &e, &m.zero()).is_err());
    }

    #[test]
    fn round_trip_on_random_clean_pairs() {
        let r = RingSpec::parse("M2(F3)").unwrap().build(1 << 12, Exec::Parallel).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let e = r.idempotents()[rng.gen_range(0..r.idempotents().len())];
            let u = r.units()[rng.gen_range(0..r.units().len())];
            let f = zhang_forward(&r, &e, &u).unwrap();
            assert!(f.verified());
            let b = zhang_backward(&r, &f.g, &f.v).unwrap();
            assert!(b.verified());
            assert_eq!((b.e, b.u), (e, u));
        }
    }
}
