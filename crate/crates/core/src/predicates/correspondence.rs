use std::collections::HashMap;

use serde::Serialize;

use super::{Corner, PredicateError, Witness};
use crate::matring::FiniteRing;
use crate::par::{self, Exec};

/// The six equivalent conditions evaluated on one element.
#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceProfile {
    pub element: String,
    #[serde(skip)]
    pub element_index: u32,
    pub conditions: [bool; 6],
    /// One witness list per condition, empty when the condition fails.
    pub witnesses: [Vec<Witness>; 6],
    /// How many inner inverses conditions (1) and (2) ranged over.
    pub unit_inner_inverses: usize,
    pub inner_inverses: usize,
}

impl CorrespondenceProfile {
    /// All six booleans agree.
    pub fn consistent(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }

    /// Re-checks every witness list against its condition.
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        let a = self.element_index;
        let w = |k: usize, n: &str| self.witnesses[k].iter().find(|w| w.name == n).map(|w| w.index);
        (0..6).all(|k| {
            if !self.conditions[k] {
                return true;
            }
            match k {
                0 | 1 => {
                    let name = if k == 0 { "u" } else { "r" };
                    let (Some(r), Some(mu)) = (w(k, name), w(k, "mu")) else {
                        return false;
                    };
                    let e = ring.mul(r, a);
                    let x = ring.mul3(e, a, e);
                    let Ok(c) = Corner::new(ring, e) else { return false };
                    ring.mul3(a, r, a) == a
                        && (k == 1 || ring.is_unit(r))
                        && c.is_unit(mu)
                        && ring.mul3(x, mu, x) == x
                }
                2 => match (w(2, "g"), w(2, "v")) {
                    (Some(g), Some(v)) => ring.mul(g, g) == g && ring.is_unit(v) && cond3_holds(ring, a, g, v),
                    _ => false,
                },
                _ => match (w(k, "e"), w(k, "u")) {
                    (Some(e), Some(u)) => {
                        ring.mul(e, e) == e && ring.is_unit(u) && ring.add(e, u) == a && {
                            let p = Profiler::ideal_free(ring);
                            match k {
                                3 => p.cond4(a, e),
                                4 => p.cond5(a, e),
                                _ => cond6_holds(ring, a, u),
                            }
                        }
                    }
                    _ => false,
                },
            }
        })
    }
}

fn cond3_holds(ring: &FiniteRing, a: u32, g: u32, v: u32) -> bool {
    let h = ring.sub(ring.one(), g);
    let gv = ring.mul(g, v);
    let hv = ring.mul(h, v);
    let hvh = ring.mul(hv, h);
    let gvh = ring.mul(gv, h);
    ring.mul(gv, a) == g
        && ring.neg(ring.mul(hv, ring.sub(ring.one(), a))) == h
        && hvh == ring.neg(h)
        && ring.mul(ring.mul(gvh, v), gvh) == ring.neg(gvh)
}

fn cond6_holds(ring: &FiniteRing, a: u32, u: u32) -> bool {
    let ui = ring.inverse(u).expect("unit");
    let a2 = ring.mul(a, a);
    ring.mul3(a, ui, a) == a && ring.mul3(a2, ring.mul(ui, ui), a2) == a2
}

/// Shared per-ring data for profiling many elements: every corner `eRe` at an
/// idempotent and every principal right ideal as a bitset.
pub struct Profiler<'a> {
    ring: &'a FiniteRing,
    corners: HashMap<u32, Corner>,
    ideals: Option<Vec<Vec<u64>>>,
}

impl<'a> Profiler<'a> {
    pub fn new(ring: &'a FiniteRing, exec: Exec) -> Self {
        let corners = par::map(exec, ring.idempotents(), |&e| (e, Corner::new(ring, e).expect("idempotent")))
            .into_iter()
            .collect();
        let els: Vec<u32> = ring.elements().collect();
        let ideals = par::map(exec, &els, |&a| ideal_bits(ring, a));
        Profiler {
            ring,
            corners,
            ideals: Some(ideals),
        }
    }

    /// A profiler without caches, for one-off witness checks.
    fn ideal_free(ring: &'a FiniteRing) -> Self {
        Profiler {
            ring,
            corners: HashMap::new(),
            ideals: None,
        }
    }

    pub fn corner(&self, e: u32) -> Option<&Corner> {
        self.corners.get(&e)
    }

    fn meets_zero(&self, a: u32, b: u32) -> bool {
        let zero = self.ring.zero() as usize;
        let (ia, ib) = match &self.ideals {
            Some(v) => (v[a as usize].clone(), v[b as usize].clone()),
            None => (ideal_bits(self.ring, a), ideal_bits(self.ring, b)),
        };
        ia.iter().zip(&ib).enumerate().all(|(w, (x, y))| {
            let mut both = x & y;
            if w == zero / 64 {
                both &= !(1u64 << (zero % 64));
            }
            both == 0
        })
    }

    fn cond4(&self, a: u32, e: u32) -> bool {
        let r = self.ring;
        self.meets_zero(a, e) && self.meets_zero(r.mul(a, a), r.mul(a, e))
    }

    fn cond5(&self, a: u32, e: u32) -> bool {
        let r = self.ring;
        self.meets_zero(a, e) && self.meets_zero(r.mul(a, a), r.mul3(a, e, a))
    }

    /// Conditions (1) and (2): every (unit) inner inverse `r`, the corner at
    /// `e = ra`, and whether `eae` is unit-regular there. Differing verdicts
    /// across inner inverses are an error.
    fn inner_condition(
        &self,
        a: u32,
        units_only: bool,
    ) -> Result<(bool, Vec<Witness>, usize), PredicateError> {
        let r = self.ring;
        let inverses = super::find_inner_inverses(r, a, units_only);
        let mut first: Option<(u32, bool)> = None;
        let mut witness = Vec::new();
        let name = if units_only { "u" } else { "r" };
        for &x in &inverses {
            let e = r.mul(x, a);
            let corner = self.corners.get(&e).expect("ra is idempotent");
            let ea = r.mul3(e, a, e);
            let mu = corner.unit_regular(r, ea);
            match first {
                None => {
                    first = Some((x, mu.is_some()));
                    if let Some(mu) = mu {
                        witness = vec![Witness::new(r, name, x), Witness::new(r, "mu", mu)];
                    }
                }
                Some((y, verdict)) if verdict != mu.is_some() => {
                    return Err(PredicateError::CornerDisagreement {
                        element: r.label(a).to_string(),
                        condition: if units_only { 1 } else { 2 },
                        first: r.label(y).to_string(),
                        first_verdict: verdict,
                        second: r.label(x).to_string(),
                    });
                }
                Some(_) => {}
            }
        }
        Ok((first.is_some_and(|(_, v)| v), witness, inverses.len()))
    }

    pub fn profile(&self, a: u32) -> Result<CorrespondenceProfile, PredicateError> {
        let r = self.ring;
        let (c1, w1, n_units) = self.inner_condition(a, true)?;
        let (c2, w2, n_all) = self.inner_condition(a, false)?;
        let w3 = r.idempotents().iter().find_map(|&g| {
            r.units()
                .iter()
                .find(|&&v| cond3_holds(r, a, g, v))
                .map(|&v| vec![Witness::new(r, "g", g), Witness::new(r, "v", v)])
        });
        let split = |test: &dyn Fn(u32, u32) -> bool| {
            r.idempotents().iter().find_map(|&e| {
                let u = r.sub(a, e);
                (r.is_unit(u) && test(e, u)).then(|| vec![Witness::new(r, "e", e), Witness::new(r, "u", u)])
            })
        };
        let w4 = split(&|e, _| self.cond4(a, e));
        let w5 = split(&|e, _| self.cond5(a, e));
        let w6 = split(&|_, u| cond6_holds(r, a, u));
        let conds = [c1, c2, w3.is_some(), w4.is_some(), w5.is_some(), w6.is_some()];
        Ok(CorrespondenceProfile {
            element: r.label(a).to_string(),
            element_index: a,
            conditions: conds,
            witnesses: [
                w1,
                w2,
                w3.unwrap_or_default(),
                w4.unwrap_or_default(),
                w5.unwrap_or_default(),
                w6.unwrap_or_default(),
            ],
            unit_inner_inverses: n_units,
            inner_inverses: n_all,
        })
    }

    /// Profiles of every element, in element order.
    pub fn profile_all(&self, exec: Exec) -> Result<Vec<CorrespondenceProfile>, PredicateError> {
        let els: Vec<u32> = self.ring.elements().collect();
        par::map(exec, &els, |&a| self.profile(a)).into_iter().collect()
    }
}

fn ideal_bits(ring: &FiniteRing, a: u32) -> Vec<u64> {
    let mut bits = vec![0u64; ring.size().div_ceil(64)];
    for x in ring.elements() {
        let y = ring.mul(a, x) as usize;
        bits[y / 64] |= 1 << (y % 64);
    }
    bits
}

/// The six-condition profile of a single element.
pub fn correspondence_check(ring: &FiniteRing, a: u32) -> Result<CorrespondenceProfile, PredicateError> {
    Profiler::new(ring, Exec::Sequential).profile(a)
}
