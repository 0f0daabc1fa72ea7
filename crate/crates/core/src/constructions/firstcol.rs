use serde::Serialize;

use super::{all_hold, zhang_backward, CleanCertificate, ConstructionError, Identity};
use crate::matring::FiniteRing;
use crate::predicates::{firstcol_check, Corner, FirstColData};

/// The proof's `(g, v)` for a zero-column element, then the clean pair.
#[derive(Debug, Clone, Serialize)]
pub struct FirstColCertificate {
    pub g: String,
    pub v: String,
    pub identities: Vec<Identity>,
    pub clean: CleanCertificate,
}

impl FirstColCertificate {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities) && self.clean.verified()
    }
}

/// Builds `g = ε + τ'ε` and `v` as the three-factor product, with
/// `τ' = τ + γα − γ` and `ζ = e − ε`, after checking condition (2).
pub fn firstcol_assemble(
    ring: &FiniteRing,
    e: u32,
    a: u32,
    d: &FirstColData,
) -> Result<FirstColCertificate, ConstructionError> {
    let rep = firstcol_check(ring, e, a, d)?;
    if !rep.cond2 {
        let r = ring;
        let f = r.sub(r.one(), e);
        let alpha = r.mul3(e, a, e);
        let tau = r.mul3(f, a, e);
        let tga = r.add(tau, r.mul(d.gamma, alpha));
        let first = r.add(r.mul3(d.eps, d.mu, alpha), r.mul3(d.eps, d.beta, tga)) == d.eps;
        return Err(ConstructionError::Condition2(if first {
            "e - eps = -(e - eps) mu (e - alpha)".into()
        } else {
            "eps = eps mu alpha + eps beta (tau + gamma alpha)".into()
        }));
    }
    let r = ring;
    let f = r.sub(r.one(), e);
    let alpha = r.mul3(e, a, e);
    let tau = r.mul3(f, a, e);
    let zeta = r.sub(e, d.eps);
    let tau1 = r.sub(r.add(tau, r.mul(d.gamma, alpha)), d.gamma);
    let t_eps = r.mul(tau1, d.eps);
    let g = r.add(d.eps, t_eps);
    // Block matrices [[x11,x12],[x21,x22]] are the sums x11 + x12 + x21 + x22.
    let m1 = r.add(r.add(e, t_eps), f);
    let m2 = r.add(r.sub(e, r.mul(d.eps, d.beta)), f);
    let corner11 = r.mul(r.add(e, r.mul(r.mul3(d.eps, d.beta, tau1), zeta)), d.mu);
    let corner21 = r.sub(r.mul3(tau1, zeta, d.mu), d.gamma);
    let m3 = r.sub(r.add(corner11, corner21), f);
    let v = r.mul3(m1, m2, m3);
    let pair = zhang_backward(ring, &g, &v)?;
    let identities = vec![
        Identity::new("g^2 = g", r.mul(g, g) == g),
        Identity::new("v is a unit", r.is_unit(v)),
        Identity::new("g = g v a", r.mul3(g, v, a) == g),
        Identity::new(
            "1 - g = -(1 - g) v (1 - a)",
            r.neg(r.mul3(r.sub(r.one(), g), v, r.sub(r.one(), a))) == r.sub(r.one(), g),
        ),
    ];
    let clean = CleanCertificate::build(ring, &a, &pair.e, &pair.u, false)?;
    Ok(FirstColCertificate {
        g: r.label(g).to_string(),
        v: r.label(v).to_string(),
        identities,
        clean,
    })
}

/// Data `ε = e, β = ω·erf, γ = 0` for `e = ra`, found by searching
/// `μ ∈ U(eRe)` and `ω ∈ eRe` with `e = μα + ω·erf·τ`.
pub fn stable_range_data(ring: &FiniteRing, a: u32, r: u32) -> Result<Option<(u32, FirstColData)>, ConstructionError> {
    if ring.mul3(a, r, a) != a {
        return Err(ConstructionError::Precondition(format!(
            "{} is not an inner inverse of {}",
            ring.label(r),
            ring.label(a)
        )));
    }
    let e = ring.mul(r, a);
    let f = ring.sub(ring.one(), e);
    let alpha = ring.mul3(e, a, e);
    let tau = ring.mul3(f, a, e);
    let erf = ring.mul3(e, r, f);
    let corner = Corner::new(ring, e)?;
    for &(mu, _) in &corner.units {
        for &omega in &corner.elements {
            let beta = ring.mul(omega, erf);
            if ring.add(ring.mul(mu, alpha), ring.mul(beta, tau)) == e {
                return Ok(Some((
                    e,
                    FirstColData {
                        eps: e,
                        mu,
                        beta,
                        gamma: ring.zero(),
                    },
                )));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::RingSpec;
    use crate::par::Exec;
    use crate::predicates::firstcol_search;

    fn ring(s: &str) -> FiniteRing {
        RingSpec::parse(s).unwrap().build(1 << 12, Exec::Parallel).unwrap()
    }

    #[test]
    fn trivial_corner() {
        let m = ring("M2(F2)");
        let e = m.parse_elem("[[1,0],[0,0]]").unwrap();
        let d = FirstColData {
            eps: e,
            mu: e,
            beta: m.zero(),
            gamma: m.zero(),
        };
        // a = e: α = e, τ = 0; ε = e satisfies (2) with μ = e.
        let c = firstcol_assemble(&m, e, e, &d).unwrap();
        assert!(c.verified());
    }

    #[test]
    fn every_valid_datum_in_m2f2_assembles() {
        let m = ring("M2(F2)");
        let mut count = 0;
        for &e in m.idempotents() {
            for a in m.elements().filter(|&x| m.mul(x, e) == x) {
                for d in firstcol_search(&m, e, a).unwrap().all_cond2 {
                    let c = firstcol_assemble(&m, e, a, &d).unwrap();
                    assert!(c.verified(), "e={} a={}", m.label(e), m.label(a));
                    count += 1;
                }
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn stable_range_recipe() {
        let m = ring("M2(F2)");
        for a in m.elements() {
            let Some(r) = m.elements().find(|&r| m.mul3(a, r, a) == a) else { continue };
            let (e, d) = stable_range_data(&m, a, r).unwrap().expect("stable range one");
            assert!(firstcol_assemble(&m, e, a, &d).unwrap().verified());
        }
    }

    #[test]
    fn failing_data_is_rejected() {
        let m = ring("M2(F2)");
        let e = m.one();
        let a = m.zero();
        let d = FirstColData {
            eps: m.one(),
            mu: m.one(),
            beta: m.zero(),
            gamma: m.zero(),
        };
        assert!(matches!(firstcol_assemble(&m, e, a, &d), Err(ConstructionError::Condition2(_))));
    }
}
