use serde::Serialize;

use super::PredicateError;
use crate::matring::{Field, MatRing, Matrix, Ring};
use crate::scalars::Scalar;

/// Linear-algebra view of `a ∈ M_n(F)` acting on row vectors by `x ↦ xa`.
#[derive(Debug, Clone, Serialize)]
pub struct DirectReport {
    pub element: String,
    pub rank: usize,
    pub dim_ker: usize,
    pub dim_coker: usize,
    /// Matrix of `a` restricted to its image, in a row-echelon basis.
    pub restricted: String,
    /// Unit `u` of the image's endomorphism ring with `cuc = c`.
    pub restricted_unit_inner: String,
    /// `a` regular and its restriction to the image unit-regular.
    pub restricted_unit_regular: bool,
    /// A unit inner inverse of `a` itself, found by rank factorization.
    pub unit_inner: String,
    pub unit_regular: bool,
    /// Both verdicts agree.
    pub cross_check: bool,
}

pub fn reg_direct_check(m: &MatRing<Field>, a: &Matrix<Scalar>) -> Result<DirectReport, PredicateError> {
    if a.size() != m.n {
        return Err(PredicateError::Unsupported(format!(
            "matrix of size {} in M_{}",
            a.size(),
            m.n
        )));
    }
    if m.base.0.elements().is_none() {
        return Err(PredicateError::Unsupported("direct check needs a finite field".into()));
    }
    let el = m.elimination();
    let n = m.n;
    let mut basis = a.rows();
    let rank = el.rref_rows(&mut basis, None).len();
    basis.truncate(rank);
    // Row i of c holds the coordinates of basis[i]·a.
    let image_rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| {
            let ba: Vec<Scalar> = (0..n)
                .map(|j| (0..n).fold(m.base.zero(), |acc, k| &acc + &(&b[k] * a.get(k, j))))
                .collect();
            el.coordinates(&basis, &ba).expect("the image is a-invariant")
        })
        .collect();
    let sub = MatRing::new(m.base, rank);
    let (c_text, u_text, restricted_ok) = if rank == 0 {
        ("[]".to_string(), "[]".to_string(), true)
    } else {
        let c = Matrix::from_rows(image_rows).expect("square");
        let sel = sub.elimination();
        let u = sel.unit_inner_inverse(&c);
        let ok = sub.mul(&sub.mul(&c, &u), &c) == c && sel.inverse(&u).is_some();
        (sub.show(&c), sub.show(&u), ok)
    };
    let w = el.unit_inner_inverse(a);
    let unit_regular = m.mul(&m.mul(a, &w), a) == *a && el.inverse(&w).is_some();
    Ok(DirectReport {
        element: m.show(a),
        rank,
        dim_ker: n - rank,
        dim_coker: n - rank,
        restricted: c_text,
        restricted_unit_inner: u_text,
        restricted_unit_regular: restricted_ok,
        unit_inner: m.show(&w),
        unit_regular,
        cross_check: restricted_ok == unit_regular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::RingSpec;
    use crate::par::Exec;
    use crate::predicates::{find_inner_inverses, Profiler};
    use crate::scalars::BaseField;

    fn f2(n: usize) -> MatRing<Field> {
        MatRing::new(Field(BaseField::prime(2).unwrap()), n)
    }

    #[test]
    fn identity_and_nilpotent() {
        let m = f2(2);
        let id = reg_direct_check(&m, &m.one()).unwrap();
        assert_eq!((id.dim_ker, id.dim_coker), (0, 0));
        assert!(id.restricted_unit_regular && id.cross_check);
        let nil = reg_direct_check(&m, &m.ints(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!((nil.dim_ker, nil.dim_coker), (1, 1));
        assert_eq!(nil.restricted, "[[0]]");
        assert!(nil.unit_regular && nil.cross_check);
    }

    #[test]
    fn agrees_with_exhaustive_profile_in_m3f2() {
        // Oracle: condition (2) from the table-driven profile, and a
        // brute-force kernel count.
        let m = f2(3);
        let fr = RingSpec::parse("M3(F2)").unwrap().build(1 << 12, Exec::Parallel).unwrap();
        let prof = Profiler::new(&fr, Exec::Parallel);
        let vecs: Vec<[u32; 3]> = (0..8u32).map(|b| [b & 1, b >> 1 & 1, b >> 2 & 1]).collect();
        for idx in (0..fr.size() as u32).step_by(37) {
            let a = m.elements().unwrap()[idx as usize].clone();
            assert_eq!(fr.label(idx), m.show(&a));
            let rep = reg_direct_check(&m, &a).unwrap();
            let p = prof.profile(idx).unwrap();
            assert_eq!(rep.restricted_unit_regular, p.conditions[1]);
            assert!(!find_inner_inverses(&fr, idx, true).is_empty());
            let kernel = vecs
                .iter()
                .filter(|x| {
                    (0..3).all(|j| {
                        (0..3)
                            .map(|k| x[k] * a.get(k, j).to_i64().unwrap() as u32)
                            .sum::<u32>()
                            % 2
                            == 0
                    })
                })
                .count();
            assert_eq!(kernel, 1 << rep.dim_ker);
        }
    }
}
