use serde::Serialize;

use super::powerreg::recursive_w;
use super::{all_hold, mul3, powerreg_build, ConstructionError, Identity, PowerMode};
use crate::freealg::{nilpotent_inverse, reduce_to_zero, Effort, ReductionSystem};
use crate::matring::{Field, FiniteRing, MatRing, Matrix, Ring};
use crate::par::{self, Exec};

/// Largest nilpotency index probed for concrete elements.
const NIL_PROBE: u32 = 64;

fn nil_index<R: Ring>(ring: &R, x: &R::Elem) -> Option<u32> {
    let mut p = x.clone();
    for k in 1..=NIL_PROBE {
        if ring.is_zero(&p) {
            return Some(k);
        }
        p = ring.mul(&p, x);
    }
    None
}

/// `(1 + x)^-1` for nilpotent `x` of index `k`, as `sum (-x)^i`.
fn one_plus_inverse<R: Ring>(ring: &R, x: &R::Elem, k: u32) -> R::Elem {
    let mx = ring.neg(x);
    let mut term = ring.one();
    let mut sum = ring.zero();
    for _ in 0..k {
        sum = ring.add(&sum, &term);
        term = ring.mul(&term, &mx);
    }
    sum
}

#[derive(Debug, Clone, Serialize)]
pub struct NilpotentCertificate {
    pub a: String,
    pub b: String,
    pub u: String,
    pub identities: Vec<Identity>,
}

impl NilpotentCertificate {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

/// For nilpotent `a, b` with `aba = a`: `u = b + (1+a)^-1 (1 - ab)` is a
/// unit inner inverse of `a`.
pub fn nilpotent_case<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<NilpotentCertificate, ConstructionError> {
    let ka = nil_index(ring, a).ok_or_else(|| ConstructionError::Precondition(format!("{} is not nilpotent", ring.show(a))))?;
    let kb = nil_index(ring, b).ok_or_else(|| ConstructionError::Precondition(format!("{} is not nilpotent", ring.show(b))))?;
    if mul3(ring, a, b, a) != *a {
        return Err(ConstructionError::Precondition("aba = a fails".into()));
    }
    let one = ring.one();
    let ia = one_plus_inverse(ring, a, ka);
    let ib = one_plus_inverse(ring, b, kb);
    let u = ring.add(b, &ring.mul(&ia, &ring.sub(&one, &ring.mul(a, b))));
    let u_inv = ring.mul(&ib, &ring.add(&one, a));
    let identities = vec![
        Identity::new("u = (1+a)^-1 (1+b)", u == ring.mul(&ia, &ring.add(&one, b))),
        Identity::new("u (1+b)^-1 (1+a) = 1", ring.mul(&u, &u_inv) == one),
        Identity::new("(1+b)^-1 (1+a) u = 1", ring.mul(&u_inv, &u) == one),
        Identity::new("a u a = a", mul3(ring, a, &u, a) == *a),
    ];
    Ok(NilpotentCertificate {
        a: ring.show(a),
        b: ring.show(b),
        u: ring.show(&u),
        identities,
    })
}

/// The same identities in `F<a, b>` modulo `aba = a`, `a^3 = 0`, `b^3 = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct NilpotentSymbolic {
    pub u: String,
    pub identities: Vec<Identity>,
}

impl NilpotentSymbolic {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

pub fn nilpotent_symbolic() -> Result<NilpotentSymbolic, ConstructionError> {
    let sys = ReductionSystem::parse("field: Q\nvars: a b\nrule: a*b*a -> a\nrule: a^3 -> 0\nrule: b^3 -> 0\n")
        .expect("fixed system parses");
    let (a, b, one) = (sys.gen("a")?, sys.gen("b")?, sys.one());
    let ia = nilpotent_inverse(&a, &sys, 3)?;
    let ib = nilpotent_inverse(&b, &sys, 3)?;
    let u = sys.normal_form(&b.add(&sys.mul(&ia, &one.sub(&sys.mul(&a, &b)))));
    let u_inv = sys.mul(&ib, &one.add(&a));
    let zero = |p: crate::freealg::NCPoly| reduce_to_zero(&p, &sys, Effort::default()).is_proved();
    let identities = vec![
        Identity::new("u = (1+a)^-1 (1+b)", zero(u.sub(&sys.mul(&ia, &one.add(&b))))),
        Identity::new("u (1+b)^-1 (1+a) = 1", zero(sys.mul(&u, &u_inv).sub(&one))),
        Identity::new("(1+b)^-1 (1+a) u = 1", zero(sys.mul(&u_inv, &u).sub(&one))),
        Identity::new("a u a = a", zero(sys.mul(&sys.mul(&a, &u), &a).sub(&a))),
    ];
    Ok(NilpotentSymbolic { u: sys.show(&u), identities })
}

#[derive(Debug, Clone, Serialize)]
pub struct LamGiftReport {
    pub e: String,
    pub u: String,
    pub a: String,
    pub bound: u32,
    pub identities: Vec<Identity>,
}

impl LamGiftReport {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

/// `a = eu` with `eue = ue`: `u^-k` is an inner inverse of `a^k`.
pub fn lamgift_case<R: Ring>(ring: &R, e: &R::Elem, u: &R::Elem, bound: u32) -> Result<LamGiftReport, ConstructionError> {
    if ring.mul(e, e) != *e {
        return Err(ConstructionError::NotIdempotent(ring.show(e)));
    }
    let ui = ring.inverse(u)?.ok_or_else(|| ConstructionError::NotUnit(ring.show(u)))?;
    if mul3(ring, e, u, e) != ring.mul(u, e) {
        return Err(ConstructionError::Precondition("eue = ue fails".into()));
    }
    let a = ring.mul(e, u);
    let mut identities = Vec::new();
    let (mut ak, mut uk) = (ring.one(), ring.one());
    for k in 1..=bound {
        ak = ring.mul(&ak, &a);
        uk = ring.mul(&uk, &ui);
        identities.push(Identity::new(
            format!("a^{k} u^-{k} a^{k} = a^{k}"),
            mul3(ring, &ak, &uk, &ak) == ak,
        ));
    }
    Ok(LamGiftReport {
        e: ring.show(e),
        u: ring.show(u),
        a: ring.show(&a),
        bound,
        identities,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LamGiftScan {
    pub ring: String,
    pub pairs: usize,
    pub verified: usize,
    /// Label pairs `(e, u)` whose certificate failed.
    pub failures: Vec<(String, String)>,
}

/// Every idempotent-unit pair with `eue = ue`.
pub fn lamgift_scan(ring: &FiniteRing, bound: u32, exec: Exec) -> Result<LamGiftScan, ConstructionError> {
    let pairs: Vec<(u32, u32)> = ring
        .idempotents()
        .iter()
        .flat_map(|&e| ring.units().iter().map(move |&u| (e, u)))
        .filter(|&(e, u)| ring.mul3(e, u, e) == ring.mul(u, e))
        .collect();
    let results = par::map(exec, &pairs, |&(e, u)| lamgift_case(ring, &e, &u, bound).map(|r| r.verified()));
    let mut failures = Vec::new();
    let mut verified = 0;
    for (&(e, u), ok) in pairs.iter().zip(results) {
        if ok? {
            verified += 1;
        } else {
            failures.push((ring.label(e).to_string(), ring.label(u).to_string()));
        }
    }
    Ok(LamGiftScan {
        ring: ring.spec().to_string(),
        pairs: pairs.len(),
        verified,
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnihilatorReport {
    pub a: String,
    /// Least `n >= 1` with `ann_r(a^(n-1)) = ann_r(a^n)`.
    pub n: u32,
    pub w: String,
    pub w_unit: Option<bool>,
    pub identities: Vec<Identity>,
}

impl AnnihilatorReport {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

/// Since `ann_r(a^(n-1)) ⊆ ann_r(a^n)`, over a field the two agree exactly
/// when the ranks do. Builds `w` for the least such `n` and checks
/// `a^k w^k a^k = a^k` for `k` up to `max(bound, 2n)`.
pub fn annihilator_case(m: &MatRing<Field>, a: &Matrix<crate::scalars::Scalar>, bound: u32) -> Result<AnnihilatorReport, ConstructionError> {
    let el = m.elimination();
    let mut n = 1;
    let mut prev = m.one();
    loop {
        let cur = m.mul(&prev, a);
        if el.rank(&prev) == el.rank(&cur) {
            break;
        }
        prev = cur;
        n += 1;
    }
    let cert = powerreg_build(m, a, n, PowerMode::Recursive, true)?;
    let wv = recursive_w(m, a, n, true)?;
    let mut identities = Vec::new();
    let (mut ak, mut wk) = (m.one(), m.one());
    for k in 1..=bound.max(2 * n) {
        ak = m.mul(&ak, a);
        wk = m.mul(&wk, &wv);
        identities.push(Identity::new(
            format!("a^{k} w^{k} a^{k} = a^{k}"),
            m.mul(&m.mul(&ak, &wk), &ak) == ak,
        ));
    }
    Ok(AnnihilatorReport {
        a: m.show(a),
        n,
        w: cert.w,
        w_unit: cert.w_unit,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::RingSpec;
    use crate::scalars::BaseField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_by_two_over_f2() {
        let m = MatRing::new(Field(BaseField::prime(2).unwrap()), 2);
        let a = m.ints(&[&[0, 1], &[0, 0]]);
        let b = m.ints(&[&[0, 0], &[1, 0]]);
        let c = nilpotent_case(&m, &a, &b).unwrap();
        assert!(c.verified(), "{:?}", c.identities);
        assert!(nilpotent_case(&m, &m.one(), &b).is_err());
    }

    #[test]
    fn symbolic_identities() {
        let s = nilpotent_symbolic().unwrap();
        assert!(s.verified(), "{:?}", s.identities);
    }

    #[test]
    fn lamgift_on_m3f2() {
        let r = RingSpec::parse("M3(F2)").unwrap().build(1 << 12, Exec::Parallel).unwrap();
        let scan = lamgift_scan(&r, 5, Exec::Parallel).unwrap();
        assert!(scan.pairs > 0);
        assert_eq!(scan.verified, scan.pairs, "{:?}", scan.failures);
    }

    #[test]
    fn lamgift_preconditions() {
        let m = MatRing::new(Field(BaseField::prime(2).unwrap()), 2);
        let e = m.ints(&[&[1, 0], &[0, 0]]);
        let u = m.ints(&[&[0, 1], &[1, 0]]);
        assert!(matches!(lamgift_case(&m, &e, &u, 3), Err(ConstructionError::Precondition(_))));
        assert!(matches!(lamgift_case(&m, &e, &m.zero(), 3), Err(ConstructionError::NotUnit(_))));
    }

    #[test]
    fn annihilator_on_random_m4f5() {
        let f = Field(BaseField::prime(5).unwrap());
        let m = MatRing::new(f, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let a = Matrix::from_fn(4, |i, j| if j + 1 >= i { f.from_int(rng.gen_range(0..5)) } else { f.zero() });
            let rep = annihilator_case(&m, &a, 0).unwrap();
            assert!(rep.verified(), "{}", rep.a);
            assert_eq!(rep.identities.len() as u32, 2 * rep.n);
        }
    }
}
