//! Executable versions of the constructive recipes: each builds its object
//! and returns a certificate whose identities were re-checked with ring
//! arithmetic after construction.

mod bergman;
mod correspondence;
mod examples;
mod firstcol;
mod nilpotent;
mod powerreg;
mod rewriting;
mod zhang;

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{FreeAlgError, NCPoly};
use crate::matring::{Ring, RingError};
use crate::predicates::PredicateError;
use crate::toeplitz::ToeplitzError;

pub use bergman::{
    bergman_unit, bergman_witness, bergman_witness_element, random_tier1, BergmanUnit, WitnessReport,
};
pub use correspondence::{
    concrete_ten_relations, corr_assemble, corr_assemble_symbolic, fiftythree_space, find_ten_relation_data,
    ten_relation_system, SymbolicCorrespondence, TenRelationCertificate, PRINTED_E, TEN_RELATIONS,
};
pub use examples::{
    final_example, graded_idempotents, reg_nilp_suite, reg_power_not_clean, FinalExampleReport, GradedIdempotents,
    RegNilpReport, RegPowerReport,
};
pub use firstcol::{firstcol_assemble, stable_range_data, FirstColCertificate};
pub use nilpotent::{
    annihilator_case, lamgift_case, lamgift_scan, nilpotent_case, nilpotent_symbolic, AnnihilatorReport,
    LamGiftReport, LamGiftScan, NilpotentCertificate, NilpotentSymbolic,
};
pub use powerreg::{
    closed2, closed2_symbolic, powerreg_build, powerreg_degree_counterexample, Closed2Symbolic, DegreeReport,
    DegreeRow, GridCell, InnerInverses, PowerInverseCertificate, PowerMode, CLOSED2,
};
pub use rewriting::{power_system, rewriting_examples_suite, PowerProbe, RewritingReport};
pub use zhang::{zhang_backward, zhang_forward, ZhangPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("{0} is not idempotent")]
    NotIdempotent(String),
    #[error("condition (2) fails: {0}")]
    Condition2(String),
    #[error("relation ({index}) {relation} fails")]
    Relation { index: usize, relation: &'static str },
    #[error("a^{power} is not regular")]
    NotRegular { power: u32 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    OutOfTier(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Toeplitz(#[from] ToeplitzError),
    #[error(transparent)]
    Predicate(#[from] PredicateError),
    #[error(transparent)]
    Scalar(#[from] crate::scalars::ScalarError),
}

/// One re-checked identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
}

impl Identity {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Identity {
            name: name.into(),
            holds,
        }
    }
}

pub fn all_hold(ids: &[Identity]) -> bool {
    ids.iter().all(|i| i.holds)
}

/// A clean decomposition `a = e + u` with its checks.
#[derive(Debug, Clone, Serialize)]
pub struct CleanCertificate {
    pub a: String,
    pub e: String,
    pub u: String,
    pub u_inv: String,
    pub identities: Vec<Identity>,
    /// `au⁻¹a = a` and `a²u⁻²a² = a²`, when requested.
    pub extras: Vec<Identity>,
}

impl CleanCertificate {
    /// Checks `e² = e`, `uu⁻¹ = u⁻¹u = 1`, `a = e + u` and, with `extras`,
    /// the two inner-inverse identities for `u⁻¹`.
    pub fn build<R: Ring>(ring: &R, a: &R::Elem, e: &R::Elem, u: &R::Elem, extras: bool) -> Result<Self, ConstructionError> {
        let ui = ring.inverse(u)?.ok_or_else(|| ConstructionError::NotUnit(ring.show(u)))?;
        let one = ring.one();
        let identities = vec![
            Identity::new("e^2 = e", ring.mul(e, e) == *e),
            Identity::new("u u^-1 = 1", ring.mul(u, &ui) == one),
            Identity::new("u^-1 u = 1", ring.mul(&ui, u) == one),
            Identity::new("a = e + u", ring.add(e, u) == *a),
        ];
        let extras = if extras {
            let a2 = ring.mul(a, a);
            vec![
                Identity::new("a u^-1 a = a", ring.mul(&ring.mul(a, &ui), a) == *a),
                Identity::new(
                    "a^2 u^-2 a^2 = a^2",
                    ring.mul(&ring.mul(&a2, &ring.mul(&ui, &ui)), &a2) == a2,
                ),
            ]
        } else {
            Vec::new()
        };
        Ok(CleanCertificate {
            a: ring.show(a),
            e: ring.show(e),
            u: ring.show(u),
            u_inv: ring.show(&ui),
            identities,
            extras,
        })
    }

    pub fn verified(&self) -> bool {
        all_hold(&self.identities) && all_hold(&self.extras)
    }
}

/// `x y z`.
fn mul3<R: Ring>(r: &R, x: &R::Elem, y: &R::Elem, z: &R::Elem) -> R::Elem {
    r.mul(&r.mul(x, y), z)
}

/// Substitutes ring elements for the letters of a polynomial with integer
/// coefficients.
pub fn eval_poly<R: Ring>(ring: &R, p: &NCPoly, vals: &[R::Elem]) -> Result<R::Elem, ConstructionError> {
    let mut acc = ring.zero();
    for (w, c) in p.terms() {
        let k = c
            .to_i64()
            .ok_or_else(|| ConstructionError::Precondition(format!("coefficient {c} is not an integer")))?;
        let mono = w.0.iter().fold(ring.one(), |m, &l| ring.mul(&m, &vals[l as usize]));
        acc = ring.add(&acc, &ring.mul(&ring.from_int(k), &mono));
    }
    Ok(acc)
}
