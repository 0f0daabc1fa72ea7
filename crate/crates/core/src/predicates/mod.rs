//! Decision procedures over finite table-driven rings: regularity,
//! unit-regularity, the cleanness variants, the six-condition profile, the
//! zero-column conditions and a ring-wide census.
//!
//! Every positive verdict carries witnesses (as element indices) that
//! [`verify_report`] re-checks against the defining identities.

mod census;
mod correspondence;
mod direct;
mod firstcol;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::matring::{FiniteRing, RingError};
use crate::par::{self, Exec};

pub use census::{ring_scan, Census, ElementRow, DEFAULT_CENSUS_CAP};
pub use correspondence::{correspondence_check, CorrespondenceProfile, Profiler};
pub use direct::{reg_direct_check, DirectReport};
pub use firstcol::{firstcol_check, firstcol_search, firstcol_two_to_three, FirstColData, FirstColReport, FirstColSearch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredicateError {
    #[error("ring has {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error(
        "condition ({condition}) of {element}: inner inverse {first} gives corner verdict {first_verdict}, but {second} disagrees"
    )]
    CornerDisagreement {
        element: String,
        condition: u8,
        first: String,
        first_verdict: bool,
        second: String,
    },
    #[error("{datum} = {value} is not in {set}")]
    Membership { datum: &'static str, value: String, set: String },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A named witness element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub name: String,
    pub value: String,
    #[serde(skip)]
    pub index: u32,
}

impl Witness {
    pub fn new(ring: &FiniteRing, name: &str, index: u32) -> Self {
        Witness {
            name: name.to_string(),
            value: ring.label(index).to_string(),
            index,
        }
    }
}

/// Element predicates decided by exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Regular,
    UnitRegular,
    Clean,
    /// `a = e + u` with `eu = ue`.
    StronglyClean,
    /// `a = e + u` with `ae = eae`.
    CapablyClean,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::Regular => "regular",
            Predicate::UnitRegular => "unit-regular",
            Predicate::Clean => "clean",
            Predicate::StronglyClean => "strongly-clean",
            Predicate::CapablyClean => "capably-clean",
        }
    }
}

/// Which cleanness flavour [`cleanness_decider`] tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CleanMode {
    Clean,
    Strongly,
    Capably,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecisionReport {
    pub predicate: Predicate,
    pub element: String,
    #[serde(skip)]
    pub element_index: u32,
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
    /// Candidates examined (elements or pairs).
    pub searched: u64,
    pub elapsed_us: u64,
}

/// Every `r` with `ara = a`, in element order; `units_only` keeps the units.
pub fn find_inner_inverses(ring: &FiniteRing, a: u32, units_only: bool) -> Vec<u32> {
    let pool: Vec<u32> = if units_only {
        ring.units().to_vec()
    } else {
        ring.elements().collect()
    };
    pool.into_iter().filter(|&r| ring.mul3(a, r, a) == a).collect()
}

fn first_inner_inverse(ring: &FiniteRing, a: u32, units_only: bool) -> Option<u32> {
    if units_only {
        ring.units().iter().copied().find(|&r| ring.mul3(a, r, a) == a)
    } else {
        ring.elements().find(|&r| ring.mul3(a, r, a) == a)
    }
}

/// Regularity or unit-regularity with a first witness.
pub fn regularity_decider(ring: &FiniteRing, a: u32, units_only: bool) -> DecisionReport {
    let start = Instant::now();
    let w = first_inner_inverse(ring, a, units_only);
    let name = if units_only { "u" } else { "r" };
    DecisionReport {
        predicate: if units_only { Predicate::UnitRegular } else { Predicate::Regular },
        element: ring.label(a).to_string(),
        element_index: a,
        verdict: w.is_some(),
        witnesses: w.map(|r| Witness::new(ring, name, r)).into_iter().collect(),
        searched: if units_only { ring.units().len() } else { ring.size() } as u64,
        elapsed_us: start.elapsed().as_micros() as u64,
    }
}

fn clean_pair_ok(ring: &FiniteRing, a: u32, e: u32, u: u32, mode: CleanMode) -> bool {
    match mode {
        CleanMode::Clean => true,
        CleanMode::Strongly => ring.mul(e, u) == ring.mul(u, e),
        CleanMode::Capably => ring.mul(a, e) == ring.mul3(e, a, e),
    }
}

/// Searches idempotents `e` with `a - e` a unit (and the mode's side condition).
pub fn cleanness_decider(ring: &FiniteRing, a: u32, mode: CleanMode) -> DecisionReport {
    let start = Instant::now();
    let hit = ring.idempotents().iter().find_map(|&e| {
        let u = ring.sub(a, e);
        (ring.is_unit(u) && clean_pair_ok(ring, a, e, u, mode)).then_some((e, u))
    });
    DecisionReport {
        predicate: match mode {
            CleanMode::Clean => Predicate::Clean,
            CleanMode::Strongly => Predicate::StronglyClean,
            CleanMode::Capably => Predicate::CapablyClean,
        },
        element: ring.label(a).to_string(),
        element_index: a,
        verdict: hit.is_some(),
        witnesses: hit
            .map(|(e, u)| vec![Witness::new(ring, "e", e), Witness::new(ring, "u", u)])
            .unwrap_or_default(),
        searched: ring.idempotents().len() as u64,
        elapsed_us: start.elapsed().as_micros() as u64,
    }
}

pub fn decide(ring: &FiniteRing, a: u32, p: Predicate) -> DecisionReport {
    match p {
        Predicate::Regular => regularity_decider(ring, a, false),
        Predicate::UnitRegular => regularity_decider(ring, a, true),
        Predicate::Clean => cleanness_decider(ring, a, CleanMode::Clean),
        Predicate::StronglyClean => cleanness_decider(ring, a, CleanMode::Strongly),
        Predicate::CapablyClean => cleanness_decider(ring, a, CleanMode::Capably),
    }
}

/// Re-checks the witnesses of a positive report; negative reports pass
/// vacuously.
pub fn verify_report(ring: &FiniteRing, rep: &DecisionReport) -> bool {
    if !rep.verdict {
        return true;
    }
    let a = rep.element_index;
    let get = |n: &str| rep.witnesses.iter().find(|w| w.name == n).map(|w| w.index);
    match rep.predicate {
        Predicate::Regular => get("r").is_some_and(|r| ring.mul3(a, r, a) == a),
        Predicate::UnitRegular => get("u").is_some_and(|u| ring.is_unit(u) && ring.mul3(a, u, a) == a),
        p => {
            let (Some(e), Some(u)) = (get("e"), get("u")) else {
                return false;
            };
            let mode = match p {
                Predicate::StronglyClean => CleanMode::Strongly,
                Predicate::CapablyClean => CleanMode::Capably,
                _ => CleanMode::Clean,
            };
            ring.mul(e, e) == e && ring.is_unit(u) && ring.add(e, u) == a && clean_pair_ok(ring, a, e, u, mode)
        }
    }
}

/// Decides one predicate for every element, in element order.
pub fn decide_all(ring: &FiniteRing, p: Predicate, exec: Exec) -> Vec<DecisionReport> {
    let els: Vec<u32> = ring.elements().collect();
    par::map(exec, &els, |&a| decide(ring, a, p))
}

/// A Peirce corner `eRe` listed out, with its units and their inverses.
#[derive(Debug, Clone)]
pub struct Corner {
    pub e: u32,
    pub elements: Vec<u32>,
    /// `(μ, μ⁻¹)` pairs, both in `eRe`, with `μμ⁻¹ = μ⁻¹μ = e`.
    pub units: Vec<(u32, u32)>,
}

impl Corner {
    pub fn new(ring: &FiniteRing, e: u32) -> Result<Self, PredicateError> {
        if ring.mul(e, e) != e {
            return Err(RingError::NotIdempotent.into());
        }
        let mut member = vec![false; ring.size()];
        for x in ring.elements() {
            member[ring.mul3(e, x, e) as usize] = true;
        }
        let elements: Vec<u32> = ring.elements().filter(|&x| member[x as usize]).collect();
        let units = elements
            .iter()
            .filter_map(|&m| {
                elements
                    .iter()
                    .find(|&&n| ring.mul(m, n) == e && ring.mul(n, m) == e)
                    .map(|&n| (m, n))
            })
            .collect();
        Ok(Corner { e, elements, units })
    }

    pub fn contains(&self, ring: &FiniteRing, x: u32) -> bool {
        ring.mul3(self.e, x, self.e) == x
    }

    pub fn is_unit(&self, x: u32) -> bool {
        self.units.iter().any(|&(m, _)| m == x)
    }

    pub fn unit_inverse(&self, x: u32) -> Option<u32> {
        self.units.iter().find(|&&(m, _)| m == x).map(|&(_, n)| n)
    }

    /// A corner unit `μ` with `xμx = x`.
    pub fn unit_regular(&self, ring: &FiniteRing, x: u32) -> Option<u32> {
        self.units.iter().map(|&(m, _)| m).find(|&m| ring.mul3(x, m, x) == x)
    }

    pub fn idempotents(&self, ring: &FiniteRing) -> Vec<u32> {
        self.elements.iter().copied().filter(|&x| ring.mul(x, x) == x).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::RingSpec;

    pub(crate) fn ring(spec: &str) -> FiniteRing {
        RingSpec::parse(spec).unwrap().build(1 << 12, Exec::Parallel).unwrap()
    }

    #[test]
    fn inner_inverse_examples() {
        let z4 = ring("Z/4");
        let two = z4.parse_elem("2").unwrap();
        assert!(find_inner_inverses(&z4, two, false).is_empty());
        assert_eq!(find_inner_inverses(&z4, z4.zero(), false).len(), 4);
        assert!(find_inner_inverses(&z4, z4.zero(), true).contains(&z4.one()));
        let t2 = ring("T2(F2)");
        let n = t2.parse_elem("[[0,1],[0,0]]").unwrap();
        assert!(find_inner_inverses(&t2, n, false).is_empty());
        // Oracle: brute force over all triples agrees with the filter.
        let m = ring("M2(F2)");
        for a in m.elements() {
            let want: Vec<u32> = m.elements().filter(|&r| m.mul(m.mul(a, r), a) == a).collect();
            assert_eq!(find_inner_inverses(&m, a, false), want);
        }
    }

    #[test]
    fn cleanness_examples() {
        let m = ring("M2(F2)");
        let reps = decide_all(&m, Predicate::Clean, Exec::Parallel);
        assert_eq!(reps.len(), 16);
        assert!(reps.iter().all(|r| r.verdict && verify_report(&m, r)));
        let one = cleanness_decider(&m, m.one(), CleanMode::Clean);
        assert!(one.verdict);
        for p in [Predicate::Regular, Predicate::UnitRegular, Predicate::StronglyClean, Predicate::CapablyClean] {
            for r in decide_all(&m, p, Exec::Sequential) {
                assert!(verify_report(&m, &r), "{p:?} {}", r.element);
            }
        }
    }

    #[test]
    fn remark_fixture_decomposes() {
        let m = ring("M2(F2)");
        let a = m.parse_elem("[[0,0],[1,1]]").unwrap();
        let e = m.parse_elem("[[1,0],[0,0]]").unwrap();
        let u = m.parse_elem("[[-1,0],[1,1]]").unwrap();
        assert_eq!(m.add(e, u), a);
        assert!(m.is_unit(u) && m.mul(e, e) == e);
        // aR ∩ eR is zero but a²R ∩ aeR is not.
        assert!(m.right_ideal_meets_zero(a, e));
        assert!(!m.right_ideal_meets_zero(m.mul(a, a), m.mul(a, e)));
    }

    #[test]
    fn corners_of_matrix_idempotents() {
        let m = ring("M2(F3)");
        let e = m.parse_elem("[[1,0],[0,0]]").unwrap();
        let c = Corner::new(&m, e).unwrap();
        assert_eq!(c.elements.len(), 3);
        assert_eq!(c.units.len(), 2);
        assert!(Corner::new(&m, m.parse_elem("[[1,1],[1,1]]").unwrap()).is_err());
        let full = Corner::new(&m, m.one()).unwrap();
        assert_eq!(full.units.len(), 48);
    }
}
