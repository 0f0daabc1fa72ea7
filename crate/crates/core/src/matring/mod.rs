//! Ring handles, square matrices over them, Peirce corners, the ideal-tagged
//! subring used by the square-zero example, and table-driven finite rings.

mod corner;
mod elim;
mod finite;
mod matrix;
mod rings;
mod tagged;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::expr::ParseError;
use crate::freealg::FreeAlgError;

pub use corner::{peirce_corner, CornerView};
pub use elim::{Elimination, RankFactorization};
pub use finite::{parse_matrix_literal, FiniteRing, RingSpec};
pub use matrix::{MatRing, Matrix, Shape};
pub use rings::{Field, Quotient, RatFuncField, TruncPoly, ZMod};
pub use tagged::{RegNilp, TaggedElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("entry ({row},{col}) violates the {shape} shape")]
    Shape { row: usize, col: usize, shape: String },
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("ring has {size} elements, above the limit {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("unknown ring spec '{0}'")]
    UnknownSpec(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error("{0}")]
    Literal(String),
}

/// A ring handle: the operations every construction and predicate needs.
///
/// Elements are plain values; the handle carries whatever context (modulus,
/// reduction system, matrix size) the arithmetic depends on.
pub trait Ring: Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn show(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let step = if n < 0 { self.neg(&self.one()) } else { self.one() };
        for _ in 0..n.unsigned_abs() {
            acc = self.add(&acc, &step);
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// All elements, for finite rings small enough to list.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Whether every nonzero element is invertible (enables elimination).
    fn is_field(&self) -> bool {
        false
    }

    /// Inverse of a nonzero element of a field.
    fn field_inv(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Two-sided inverse, or `None` when there is none.
    fn inverse(&self, a: &Self::Elem) -> Result<Option<Self::Elem>, RingError> {
        if self.is_field() {
            return Ok(if self.is_zero(a) { None } else { self.field_inv(a) });
        }
        let all = self
            .elements()
            .ok_or_else(|| RingError::Unsupported("unit search needs an enumerable ring".into()))?;
        let one = self.one();
        Ok(all
            .into_iter()
            .find(|b| self.mul(a, b) == one && self.mul(b, a) == one))
    }
}

/// First failing ring axiom on a sample, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub sample: usize,
}

/// Spot-checks associativity, both distributive laws, identities and
/// additive inverses on the given triples.
pub fn check_ring_axioms<R: Ring>(ring: &R, triples: &[(R::Elem, R::Elem, R::Elem)]) -> Result<(), AxiomViolation> {
    let one = ring.one();
    let zero = ring.zero();
    for (i, (a, b, c)) in triples.iter().enumerate() {
        let fail = |law| Err(AxiomViolation { law, sample: i });
        if ring.mul(&ring.mul(a, b), c) != ring.mul(a, &ring.mul(b, c)) {
            return fail("associativity");
        }
        if ring.mul(a, &ring.add(b, c)) != ring.add(&ring.mul(a, b), &ring.mul(a, c)) {
            return fail("left distributivity");
        }
        if ring.mul(&ring.add(a, b), c) != ring.add(&ring.mul(a, c), &ring.mul(b, c)) {
            return fail("right distributivity");
        }
        if ring.add(&ring.add(a, b), c) != ring.add(a, &ring.add(b, c)) || ring.add(a, b) != ring.add(b, a) {
            return fail("addition");
        }
        if ring.mul(a, &one) != *a || ring.mul(&one, a) != *a {
            return fail("identity");
        }
        if ring.add(a, &ring.neg(a)) != zero || ring.add(a, &zero) != *a {
            return fail("additive inverse");
        }
    }
    Ok(())
}
