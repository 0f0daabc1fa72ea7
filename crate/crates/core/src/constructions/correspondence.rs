use std::time::Instant;

use serde::Serialize;

use super::{eval_poly, CleanCertificate, ConstructionError};
use crate::freealg::{
    bounded_inverse_search, reduce_to_zero, Alphabet, Effort, Grading, NCPoly, ReductionSystem, SearchSpace,
};
use crate::matring::{FiniteRing, Ring};
use crate::par::Exec;
use crate::predicates::{find_inner_inverses, Corner};
use crate::scalars::BaseField;

/// The ten relations among `a, r, t, w`, as `(lhs, rhs)`.
pub const TEN_RELATIONS: [(&str, &str); 10] = [
    ("a*r*a", "a"),
    ("a^2*w*a", "a^2"),
    ("w*a*w*a", "w*a"),
    ("t*a*w*a", "t*a"),
    ("w*r*a", "w"),
    ("r*a*w", "w"),
    ("t*r*a", "t"),
    ("r*a*t", "t"),
    ("w*t", "r*a"),
    ("t*w", "r*a"),
];

/// The twelve-term idempotent.
pub const PRINTED_E: &str = "1 - r*a + t*r + a*r^2*a - a*r*t*r - a*w*a*w - r*a^2*r + r*a^2*w \
     + a*r^2*a^2*r - a*r^2*a^2*w - a*w*a*r^2*a + a*w*a*r^2*a^2*w";

/// The relations oriented length-lexicographically with `a < r < t < w`.
pub fn ten_relation_system(field: BaseField) -> ReductionSystem {
    let alphabet = Alphabet::parse("a r t w").expect("valid names");
    ReductionSystem::from_relations(alphabet, field, &TEN_RELATIONS).expect("relations orient")
}

/// The ten relations checked on concrete `a, r, t, w`.
#[derive(Debug, Clone, Serialize)]
pub struct TenRelationCertificate<E> {
    #[serde(skip)]
    pub values: [E; 4],
    pub shown: [String; 4],
    pub relations: [bool; 10],
}

/// Checks all ten relations; the first failure is an error naming it.
pub fn concrete_ten_relations<R: Ring>(
    ring: &R,
    a: &R::Elem,
    r: &R::Elem,
    t: &R::Elem,
    w: &R::Elem,
) -> Result<TenRelationCertificate<R::Elem>, ConstructionError> {
    let sys = ten_relation_system(BaseField::Rationals);
    let vals = [a.clone(), r.clone(), t.clone(), w.clone()];
    let mut relations = [false; 10];
    for (k, (l, rhs)) in TEN_RELATIONS.iter().enumerate() {
        let lp = sys.parse_poly(l)?;
        let rp = sys.parse_poly(rhs)?;
        relations[k] = eval_poly(ring, &lp, &vals)? == eval_poly(ring, &rp, &vals)?;
    }
    if let Some(k) = relations.iter().position(|&ok| !ok) {
        return Err(ConstructionError::Relation {
            index: k + 1,
            relation: TEN_RELATIONS[k].0,
        });
    }
    Ok(TenRelationCertificate {
        shown: [ring.show(a), ring.show(r), ring.show(t), ring.show(w)],
        values: vals,
        relations,
    })
}

/// Evaluates the twelve-term `e` on certified data and certifies `a = e + u`
/// with the two inner-inverse identities for `u⁻¹`.
pub fn corr_assemble<R: Ring>(
    ring: &R,
    cert: &TenRelationCertificate<R::Elem>,
) -> Result<CleanCertificate, ConstructionError> {
    if !cert.relations.iter().all(|&b| b) {
        let k = cert.relations.iter().position(|&b| !b).unwrap_or(0);
        return Err(ConstructionError::Relation {
            index: k + 1,
            relation: TEN_RELATIONS[k].0,
        });
    }
    let sys = ten_relation_system(BaseField::Rationals);
    let e = eval_poly(ring, &sys.parse_poly(PRINTED_E)?, &cert.values)?;
    let a = &cert.values[0];
    let u = ring.sub(a, &e);
    CleanCertificate::build(ring, a, &e, &u, true)
}

/// Data `(r, t, w)` for `a` in a finite ring: `r` an inner inverse, `w` a unit
/// of the corner at `e = ra` inverting `eae` from the inside, `t = w⁻¹` there.
pub fn find_ten_relation_data(ring: &FiniteRing, a: u32) -> Option<(u32, u32, u32)> {
    for r in find_inner_inverses(ring, a, false) {
        let e = ring.mul(r, a);
        let corner = Corner::new(ring, e).ok()?;
        let x = ring.mul3(e, a, e);
        for &(w, t) in &corner.units {
            if ring.mul3(x, w, x) == x {
                return Some((r, t, w));
            }
        }
    }
    None
}

/// Outcome of the symbolic run in the free quotient by the ten relations.
#[derive(Debug, Clone, Serialize)]
pub struct SymbolicCorrespondence {
    pub e_terms: usize,
    pub idempotent: bool,
    pub candidate_words: usize,
    pub inverse_found: bool,
    /// Support of the inverse's normal form.
    pub support: Option<usize>,
    pub expected_support: usize,
    pub uv_one: bool,
    pub vu_one: bool,
    pub cond6: bool,
    pub seconds: f64,
    #[serde(skip)]
    pub inverse: Option<NCPoly>,
}

/// Letters `{a, r, w}`, weights `a, t ↦ +1` and `r, w ↦ −1`, degree window
/// `[-1, 0]`, words up to length 15. The relations are homogeneous for this
/// grading, and the inverse of `a − e` lives in that slice.
pub fn fiftythree_space() -> SearchSpace {
    SearchSpace::length(15)
        .with_letters(vec![0, 1, 3])
        .with_grading(Grading {
            weights: vec![1, -1, 1, -1],
            min: -1,
            max: 0,
        })
        .with_limit(1 << 22)
}

pub fn corr_assemble_symbolic(space: &SearchSpace, exec: Exec) -> Result<SymbolicCorrespondence, ConstructionError> {
    let start = Instant::now();
    let sys = ten_relation_system(BaseField::Rationals);
    let e = sys.normal_form(&sys.parse_poly(PRINTED_E)?);
    let e2 = sys.mul(&e, &e).sub(&e);
    let idempotent = reduce_to_zero(&e2, &sys, Effort::default()).is_proved();
    let a = sys.gen("a")?;
    let u = a.sub(&e);
    let search = bounded_inverse_search(&u, &sys, space, exec)?;
    let one = sys.one();
    let (uv_one, vu_one, cond6) = match &search.inverse {
        Some(v) => {
            let a2 = sys.mul(&a, &a);
            let c1 = sys.mul(&sys.mul(&a, v), &a) == a;
            let c2 = sys.mul(&sys.mul(&a2, &sys.mul(v, v)), &a2) == a2;
            (sys.mul(&u, v) == one, sys.mul(v, &u) == one, c1 && c2)
        }
        None => (false, false, false),
    };
    Ok(SymbolicCorrespondence {
        e_terms: sys.parse_poly(PRINTED_E)?.len(),
        idempotent,
        candidate_words: search.dimension,
        inverse_found: search.inverse.is_some(),
        support: search.support(),
        expected_support: 53,
        uv_one,
        vu_one,
        cond6,
        seconds: start.elapsed().as_secs_f64(),
        inverse: search.inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::{Field, MatRing, RingSpec};
    use crate::predicates::{cleanness_decider, CleanMode};

    #[test]
    fn printed_e_has_twelve_terms_and_is_idempotent() {
        let sys = ten_relation_system(BaseField::Rationals);
        let e = sys.parse_poly(PRINTED_E).unwrap();
        assert_eq!(e.len(), 12);
        let e = sys.normal_form(&e);
        assert!(reduce_to_zero(&sys.mul(&e, &e).sub(&e), &sys, Effort::default()).is_proved());
        let wt = sys.parse_poly("w*t").unwrap();
        assert_eq!(sys.show(&sys.normal_form(&wt)), "r*a");
    }

    #[test]
    fn diagonal_instance_in_m2f2() {
        let m = MatRing::new(Field(BaseField::prime(2).unwrap()), 2);
        let d = m.ints(&[&[1, 0], &[0, 0]]);
        let cert = concrete_ten_relations(&m, &d, &d, &d, &d).unwrap();
        let clean = corr_assemble(&m, &cert).unwrap();
        assert!(clean.verified());
        assert_eq!(clean.e, m.show(&m.ints(&[&[0, 0], &[0, 1]])));
    }

    #[test]
    fn idempotents_of_commutative_rings() {
        for spec in ["Z/6", "F2[x]/(x^2)"] {
            let r = RingSpec::parse(spec).unwrap().build(1 << 12, Exec::Sequential).unwrap();
            for &a in r.idempotents() {
                let cert = concrete_ten_relations(&r, &a, &a, &a, &a).unwrap();
                assert!(corr_assemble(&r, &cert).unwrap().verified());
            }
        }
    }

    #[test]
    fn relation_failure_is_named() {
        let m = MatRing::new(Field(BaseField::prime(2).unwrap()), 2);
        let a = m.ints(&[&[1, 0], &[0, 0]]);
        let err = concrete_ten_relations(&m, &a, &m.zero(), &a, &a).unwrap_err();
        assert!(matches!(err, ConstructionError::Relation { index: 1, .. }));
    }

    #[test]
    fn agrees_with_cleanness_decider() {
        for spec in ["M2(F2)", "M2(F3)", "T2(F2)", "Z/4"] {
            let r = RingSpec::parse(spec).unwrap().build(1 << 12, Exec::Parallel).unwrap();
            for a in r.elements() {
                let Some((x, t, w)) = find_ten_relation_data(&r, a) else { continue };
                let cert = concrete_ten_relations(&r, &a, &x, &t, &w).unwrap();
                let clean = corr_assemble(&r, &cert).unwrap();
                assert!(clean.verified(), "{spec} {}", r.label(a));
                assert!(cleanness_decider(&r, a, CleanMode::Clean).verdict);
            }
        }
    }
}
