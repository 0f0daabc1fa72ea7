use crate::freealg::{NCPoly, ReductionSystem};
use crate::scalars::{BaseField, Scalar};

use super::{MatRing, Matrix, Quotient, Ring};

/// An element `[[a11, q12*k], [a21, lam + q22*k]]` of
/// `S = [[R, I], [R, F + I]]`, where `R = F<x,y : x^2 = 0>` and `I = R k` with
/// `k = 1 - yx`.
///
/// Ideal entries are stored by cofactor. Since `k` is not a right zero
/// divisor in `R`, `q*k = q'*k` forces `q = q'`, so comparing normal-form
/// cofactors is comparing entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaggedElem {
    pub a11: NCPoly,
    pub q12: NCPoly,
    pub a21: NCPoly,
    pub lam22: Scalar,
    pub q22: NCPoly,
}

/// The ring `S` of the regular square-zero-free example.
#[derive(Debug, Clone)]
pub struct RegNilp {
    pub base: Quotient,
    k: NCPoly,
}

impl RegNilp {
    pub fn new(field: BaseField) -> Self {
        let text = format!("field: {field}\nvars: x y\nrule: x*x -> 0\n");
        let sys = ReductionSystem::parse(&text).expect("fixed system parses");
        let base = Quotient::new(sys);
        let k = base.parse("1 - y*x").expect("fixed literal parses");
        RegNilp { base, k }
    }

    /// The generator `1 - yx` of the left ideal `I`.
    pub fn k(&self) -> &NCPoly {
        &self.k
    }

    pub fn elem(&self, a11: &str, q12: &str, a21: &str, lam22: i64, q22: &str) -> TaggedElem {
        let p = |s: &str| self.base.parse(s).expect("literal parses");
        TaggedElem {
            a11: p(a11),
            q12: p(q12),
            a21: p(a21),
            lam22: self.field().from_i64(lam22),
            q22: p(q22),
        }
    }

    pub fn field(&self) -> BaseField {
        self.base.sys.field()
    }

    fn r(&self) -> &Quotient {
        &self.base
    }

    /// The plain 2x2 matrix over `R` this element stands for.
    pub fn expand(&self, a: &TaggedElem) -> Matrix<NCPoly> {
        let r = self.r();
        let lam = NCPoly::constant(a.lam22.clone());
        Matrix::from_rows(vec![
            vec![a.a11.clone(), r.mul(&a.q12, &self.k)],
            vec![a.a21.clone(), r.add(&lam, &r.mul(&a.q22, &self.k))],
        ])
        .expect("2x2")
    }

    pub fn full_ring(&self) -> MatRing<Quotient> {
        MatRing::new(self.base.clone(), 2)
    }
}

impl Ring for RegNilp {
    type Elem = TaggedElem;

    fn zero(&self) -> TaggedElem {
        let z = self.r().zero();
        TaggedElem {
            a11: z.clone(),
            q12: z.clone(),
            a21: z.clone(),
            lam22: self.field().zero(),
            q22: z,
        }
    }
    fn one(&self) -> TaggedElem {
        let mut e = self.zero();
        e.a11 = self.r().one();
        e.lam22 = self.field().one();
        e
    }
    fn add(&self, a: &TaggedElem, b: &TaggedElem) -> TaggedElem {
        let r = self.r();
        TaggedElem {
            a11: r.add(&a.a11, &b.a11),
            q12: r.add(&a.q12, &b.q12),
            a21: r.add(&a.a21, &b.a21),
            lam22: &a.lam22 + &b.lam22,
            q22: r.add(&a.q22, &b.q22),
        }
    }
    fn neg(&self, a: &TaggedElem) -> TaggedElem {
        let r = self.r();
        TaggedElem {
            a11: r.neg(&a.a11),
            q12: r.neg(&a.q12),
            a21: r.neg(&a.a21),
            lam22: -&a.lam22,
            q22: r.neg(&a.q22),
        }
    }
    fn mul(&self, a: &TaggedElem, b: &TaggedElem) -> TaggedElem {
        let r = self.r();
        let m = |x: &NCPoly, y: &NCPoly| r.mul(x, y);
        let s = |x: &NCPoly, c: &Scalar| x.scale(c);
        let qk = |q: &NCPoly| m(q, &self.k);
        // (1,1) = a11 b11 + qa k b21
        let a11 = r.add(&m(&a.a11, &b.a11), &m(&qk(&a.q12), &b.a21));
        // (1,2) = [a11 qb + lam_b qa + qa k q'b] k
        let q12 = r.add(
            &r.add(&m(&a.a11, &b.q12), &s(&a.q12, &b.lam22)),
            &m(&qk(&a.q12), &b.q22),
        );
        // (2,1) = a21 b11 + (lam_a + q'a k) b21
        let a21 = r.add(
            &r.add(&m(&a.a21, &b.a11), &s(&b.a21, &a.lam22)),
            &m(&qk(&a.q22), &b.a21),
        );
        // (2,2) = lam_a lam_b + [a21 qb + lam_a q'b + lam_b q'a + q'a k q'b] k
        let q22 = [
            m(&a.a21, &b.q12),
            s(&b.q22, &a.lam22),
            s(&a.q22, &b.lam22),
            m(&qk(&a.q22), &b.q22),
        ]
        .iter()
        .fold(r.zero(), |acc, t| r.add(&acc, t));
        TaggedElem {
            a11,
            q12,
            a21,
            lam22: &a.lam22 * &b.lam22,
            q22,
        }
    }
    fn show(&self, a: &TaggedElem) -> String {
        let r = self.r();
        let k = "(1 - y*x)";
        format!(
            "[[{}, ({})*{k}], [{}, {} + ({})*{k}]]",
            r.show(&a.a11),
            r.show(&a.q12),
            r.show(&a.a21),
            a.lam22,
            r.show(&a.q22)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tagged_product_matches_expanded_product() {
        let s = RegNilp::new(BaseField::Rationals);
        let a = s.elem("x + y", "y", "1 - x*y", 2, "x");
        let b = s.elem("y*y", "1 + x", "x", -1, "y*x");
        let m = s.full_ring();
        assert_eq!(s.expand(&s.mul(&a, &b)), m.mul(&s.expand(&a), &s.expand(&b)));
    }

    #[test]
    fn printed_inner_inverse() {
        let s = RegNilp::new(BaseField::Rationals);
        let a = s.elem("x", "0", "1", 0, "0");
        let r = s.elem("y", "1", "0", 0, "0");
        assert!(s.is_zero(&s.pow(&a, 3)));
        assert_eq!(s.mul(&s.mul(&a, &r), &a), a);
    }
}
