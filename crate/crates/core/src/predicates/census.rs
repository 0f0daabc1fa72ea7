use serde::Serialize;

use super::{cleanness_decider, CleanMode, PredicateError, Profiler};
use crate::matring::FiniteRing;
use crate::par::{self, Exec};

pub const DEFAULT_CENSUS_CAP: usize = 4096;

/// Above this size the stable-range-one test (cubic in the ring size) is skipped.
const STABLE_RANGE_CAP: usize = 1024;

/// Predicate bits for one element.
#[derive(Debug, Clone, Serialize)]
pub struct ElementRow {
    pub element: String,
    pub unit: bool,
    pub idempotent: bool,
    pub nilpotent: bool,
    pub square_zero: bool,
    pub regular: bool,
    pub unit_regular: bool,
    /// Condition (1) of the six-condition profile.
    pub doubly_unit_regular: bool,
    pub clean: bool,
    pub strongly_clean: bool,
    pub capably_clean: bool,
    /// All six conditions agree.
    pub profile_consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub ring: String,
    pub size: usize,
    pub units: usize,
    pub idempotents: usize,
    /// `None` when the ring is too large for the pairwise test.
    pub stable_range_one: Option<bool>,
    pub rows: Vec<ElementRow>,
    /// Failed implications; empty on a healthy ring.
    pub violations: Vec<String>,
}

impl Census {
    pub fn count(&self, f: impl Fn(&ElementRow) -> bool) -> usize {
        self.rows.iter().filter(|r| f(r)).count()
    }
}

/// Per-element predicate table plus the implication checks.
pub fn ring_scan(ring: &FiniteRing, cap: usize, exec: Exec) -> Result<Census, PredicateError> {
    if ring.size() > cap {
        return Err(PredicateError::TooLarge { size: ring.size(), cap });
    }
    let prof = Profiler::new(ring, exec);
    let els: Vec<u32> = ring.elements().collect();
    let rows: Vec<ElementRow> = par::map(exec, &els, |&a| -> Result<ElementRow, PredicateError> {
        let p = prof.profile(a)?;
        let a2 = ring.mul(a, a);
        let nilpotent = ring.pow(a, ring.size() as u32) == ring.zero();
        let regular = ring.elements().any(|r| ring.mul3(a, r, a) == a);
        let unit_regular = ring.units().iter().any(|&u| ring.mul3(a, u, a) == a);
        Ok(ElementRow {
            element: ring.label(a).to_string(),
            unit: ring.is_unit(a),
            idempotent: a2 == a,
            nilpotent,
            square_zero: a2 == ring.zero(),
            regular,
            unit_regular,
            doubly_unit_regular: p.conditions[0],
            clean: cleanness_decider(ring, a, CleanMode::Clean).verdict,
            strongly_clean: cleanness_decider(ring, a, CleanMode::Strongly).verdict,
            capably_clean: cleanness_decider(ring, a, CleanMode::Capably).verdict,
            profile_consistent: p.consistent(),
        })
    })
    .into_iter()
    .collect::<Result<_, _>>()?;
    let stable_range_one = (ring.size() <= STABLE_RANGE_CAP).then(|| stable_range_one(ring, exec));

    let mut violations = Vec::new();
    for r in &rows {
        let mut fail = |what: &str| violations.push(format!("{}: {what}", r.element));
        if r.unit_regular && !r.regular {
            fail("unit-regular but not regular");
        }
        if r.doubly_unit_regular && !r.clean {
            fail("doubly unit-regular but not clean");
        }
        if r.square_zero && r.regular && !(r.unit_regular && r.clean) {
            fail("regular square-zero element that is not both unit-regular and clean");
        }
        if stable_range_one == Some(true) && r.regular && !r.clean {
            fail("regular but not clean in a stable-range-one ring");
        }
        if !r.profile_consistent {
            fail("six-condition profile disagrees");
        }
        if r.strongly_clean && !r.clean {
            fail("strongly clean but not clean");
        }
    }
    Ok(Census {
        ring: ring.spec().to_string(),
        size: ring.size(),
        units: ring.units().len(),
        idempotents: ring.idempotents().len(),
        stable_range_one,
        rows,
        violations,
    })
}

/// For all `a, b` with `aR + bR = R`, some `a + by` is a unit.
fn stable_range_one(ring: &FiniteRing, exec: Exec) -> bool {
    let ideals: Vec<Vec<u32>> = ring
        .elements()
        .map(|b| {
            let mut v: Vec<u32> = ring.elements().map(|y| ring.mul(b, y)).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let member: Vec<Vec<bool>> = ideals
        .iter()
        .map(|v| {
            let mut m = vec![false; ring.size()];
            for &x in v {
                m[x as usize] = true;
            }
            m
        })
        .collect();
    let one = ring.one();
    let els: Vec<u32> = ring.elements().collect();
    !par::any(exec, &els, |&a| {
        ring.elements().any(|b| {
            let comaximal = ideals[a as usize].iter().any(|&s| member[b as usize][ring.sub(one, s) as usize]);
            comaximal && !ideals[b as usize].iter().any(|&by| ring.is_unit(ring.add(a, by)))
        })
    })
}
