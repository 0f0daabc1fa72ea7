use serde::Serialize;

use super::{Corner, PredicateError, Witness};
use crate::matring::FiniteRing;

/// The four data of the zero-column conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FirstColData {
    pub eps: u32,
    pub mu: u32,
    pub beta: u32,
    pub gamma: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct FirstColReport {
    /// `ε = εμα + εβ(τ+γα)` and `e−ε = −(e−ε)μ(e−α)`.
    pub cond2: bool,
    /// `α = ε + μ + (e−ε)β(τ+γα)`.
    pub cond3: bool,
    pub tau_zero: bool,
    /// `α = ε + μ + (e−ε)βγα`, only evaluated when `τ = 0`.
    pub weakly_clean: Option<bool>,
    pub data: Vec<Witness>,
}

struct Parts {
    f: u32,
    alpha: u32,
    tau: u32,
}

fn parts(ring: &FiniteRing, e: u32, a: u32) -> Parts {
    let f = ring.sub(ring.one(), e);
    Parts {
        f,
        alpha: ring.mul3(e, a, e),
        tau: ring.mul3(f, a, e),
    }
}

fn member(ring: &FiniteRing, datum: &'static str, x: u32, set: &str, ok: bool) -> Result<(), PredicateError> {
    if ok {
        Ok(())
    } else {
        Err(PredicateError::Membership {
            datum,
            value: ring.label(x).to_string(),
            set: set.to_string(),
        })
    }
}

fn check_frame(ring: &FiniteRing, e: u32, a: u32) -> Result<(), PredicateError> {
    member(ring, "e", e, "idem(R)", ring.mul(e, e) == e)?;
    member(ring, "a", a, "Re", ring.mul(a, e) == a)
}

fn eval(ring: &FiniteRing, e: u32, p: &Parts, d: &FirstColData) -> (bool, bool, Option<bool>) {
    let r = ring;
    let zeta = r.sub(e, d.eps);
    let tga = r.add(p.tau, r.mul(d.gamma, p.alpha));
    let c2a = r.add(r.mul3(d.eps, d.mu, p.alpha), r.mul3(d.eps, d.beta, tga)) == d.eps;
    let c2b = r.neg(r.mul3(zeta, d.mu, r.sub(e, p.alpha))) == zeta;
    let c3 = r.add(r.add(d.eps, d.mu), r.mul3(zeta, d.beta, tga)) == p.alpha;
    let weak = (p.tau == r.zero()).then(|| {
        let bga = r.mul3(d.beta, d.gamma, p.alpha);
        r.add(r.add(d.eps, d.mu), r.mul(zeta, bga)) == p.alpha
    });
    (c2a && c2b, c3, weak)
}

/// Evaluates both zero-column conditions on the given data, after checking
/// that every datum lies where it should.
pub fn firstcol_check(ring: &FiniteRing, e: u32, a: u32, d: &FirstColData) -> Result<FirstColReport, PredicateError> {
    check_frame(ring, e, a)?;
    let p = parts(ring, e, a);
    let corner = Corner::new(ring, e)?;
    member(ring, "eps", d.eps, "idem(eRe)", corner.contains(ring, d.eps) && ring.mul(d.eps, d.eps) == d.eps)?;
    member(ring, "mu", d.mu, "U(eRe)", corner.is_unit(d.mu))?;
    member(ring, "beta", d.beta, "eRf", ring.mul3(e, d.beta, p.f) == d.beta)?;
    member(ring, "gamma", d.gamma, "fRe", ring.mul3(p.f, d.gamma, e) == d.gamma)?;
    let (cond2, cond3, weakly_clean) = eval(ring, e, &p, d);
    Ok(FirstColReport {
        cond2,
        cond3,
        tau_zero: p.tau == ring.zero(),
        weakly_clean,
        data: vec![
            Witness::new(ring, "eps", d.eps),
            Witness::new(ring, "mu", d.mu),
            Witness::new(ring, "beta", d.beta),
            Witness::new(ring, "gamma", d.gamma),
        ],
    })
}

/// Outcome of an exhaustive search over all admissible data.
#[derive(Debug, Clone)]
pub struct FirstColSearch {
    pub searched: u64,
    pub cond2: Option<FirstColData>,
    pub cond3: Option<FirstColData>,
    /// Every datum satisfying condition (2), for transfer checks.
    pub all_cond2: Vec<FirstColData>,
}

/// Runs over every `(ε, μ, β, γ)` with the right memberships.
pub fn firstcol_search(ring: &FiniteRing, e: u32, a: u32) -> Result<FirstColSearch, PredicateError> {
    check_frame(ring, e, a)?;
    let p = parts(ring, e, a);
    let corner = Corner::new(ring, e)?;
    let eps_set = corner.idempotents(ring);
    let dedup = |xs: Vec<u32>| {
        let mut v = xs;
        v.sort_unstable();
        v.dedup();
        v
    };
    let betas = dedup(ring.elements().map(|x| ring.mul3(e, x, p.f)).collect());
    let gammas = dedup(ring.elements().map(|x| ring.mul3(p.f, x, e)).collect());
    let mut out = FirstColSearch {
        searched: 0,
        cond2: None,
        cond3: None,
        all_cond2: Vec::new(),
    };
    for &eps in &eps_set {
        for &(mu, _) in &corner.units {
            for &beta in &betas {
                for &gamma in &gammas {
                    let d = FirstColData { eps, mu, beta, gamma };
                    out.searched += 1;
                    let (c2, c3, _) = eval(ring, e, &p, &d);
                    if c2 {
                        out.cond2.get_or_insert(d);
                        out.all_cond2.push(d);
                    }
                    if c3 {
                        out.cond3.get_or_insert(d);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Maps condition-(2) data to condition-(3) data:
/// `ε' = μ⁻¹(e−ε)μ`, `μ' = μ⁻¹`, `β' = −μ⁻¹β`, `γ' = γ`.
pub fn firstcol_two_to_three(ring: &FiniteRing, e: u32, d: &FirstColData) -> Result<FirstColData, PredicateError> {
    let corner = Corner::new(ring, e)?;
    let mi = corner.unit_inverse(d.mu).ok_or_else(|| PredicateError::Membership {
        datum: "mu",
        value: ring.label(d.mu).to_string(),
        set: "U(eRe)".into(),
    })?;
    Ok(FirstColData {
        eps: ring.mul3(mi, ring.sub(e, d.eps), d.mu),
        mu: mi,
        beta: ring.neg(ring.mul(mi, d.beta)),
        gamma: d.gamma,
    })
}
