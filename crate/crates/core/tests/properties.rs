//! Property tests for the algebraic invariants the rest of the crate leans on.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unireg_core::battery::random_structured;
use unireg_core::constructions::{bergman_unit, powerreg_build, random_tier1, ten_relation_system, PowerMode};
use unireg_core::freealg::{NCPoly, Word};
use unireg_core::matring::{Field, MatRing, Matrix, Ring};
use unireg_core::par::{self, Exec};
use unireg_core::scalars::BaseField;
use unireg_core::toeplitz::ToeplitzRing;

fn poly_strategy(letters: u8) -> impl Strategy<Value = Vec<(Vec<u8>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..letters, 0..7), -3i64..=3), 0..5)
}

fn to_poly(terms: &[(Vec<u8>, i64)]) -> NCPoly {
    let q = BaseField::Rationals;
    terms
        .iter()
        .fold(NCPoly::zero(q), |acc, (w, c)| acc.add(&NCPoly::monomial(q.from_i64(*c), Word(w.clone()))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_laws(a in -50i64..50, b in -50i64..50, c in -50i64..50, p in prop::sample::select(vec![2u32, 3, 5, 7, 32003])) {
        let f = BaseField::prime(p).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c);
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_multiplicative(p in poly_strategy(4), q in poly_strategy(4)) {
        let sys = ten_relation_system(BaseField::Rationals);
        let (p, q) = (to_poly(&p), to_poly(&q));
        let np = sys.normal_form(&p);
        prop_assert_eq!(sys.normal_form(&np), np.clone());
        let nq = sys.normal_form(&q);
        prop_assert_eq!(sys.normal_form(&p.mul(&q)), sys.mul(&np, &nq));
    }

    #[test]
    fn symbol_map_is_multiplicative(seed in any::<u64>(), bilateral in any::<bool>()) {
        let f = BaseField::prime(5).unwrap();
        let ring = if bilateral { ToeplitzRing::bilateral(f) } else { ToeplitzRing::unilateral(f) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_structured(&ring, &mut rng), random_structured(&ring, &mut rng), random_structured(&ring, &mut rng));
        let ab = ring.mul(&a, &b);
        prop_assert_eq!(ring.psi(&ab), &ring.psi(&a).mul(ring.psi(&b)));
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
    }

    #[test]
    fn tier1_units_verify(seed in any::<u64>()) {
        let ring = ToeplitzRing::bilateral(BaseField::prime(3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_tier1(&ring, &mut rng, 2);
        let u = bergman_unit(&ring, &a).unwrap();
        prop_assert!(u.verified(), "{}", u.a);
    }

    #[test]
    fn matrices_over_fields_have_power_inverses(entries in prop::collection::vec(0i64..3, 9), unit in any::<bool>()) {
        let f = Field(BaseField::prime(3).unwrap());
        let m = MatRing::new(f, 3);
        let a = Matrix::from_fn(3, |i, j| f.from_int(entries[3 * i + j]));
        let c = powerreg_build(&m, &a, 3, PowerMode::Recursive, unit).unwrap();
        prop_assert!(c.verified(), "{}", c.a);
        if c.unit_inner_inverse {
            prop_assert_eq!(c.w_unit, Some(true));
        }
    }

    #[test]
    fn execution_modes_agree(xs in prop::collection::vec(any::<u32>(), 0..200)) {
        let f = |x: &u32| x.wrapping_mul(2654435761) % 97;
        prop_assert_eq!(par::map(Exec::Sequential, &xs, f), par::map(Exec::Parallel, &xs, f));
        let g = |x: &u32| x.is_multiple_of(3).then_some(*x);
        prop_assert_eq!(par::filter_map(Exec::Sequential, &xs, g), par::filter_map(Exec::Parallel, &xs, g));
    }
}
