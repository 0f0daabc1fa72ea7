//! Exact computation and certificate checking for regularity, unit-regularity
//! and clean decompositions of ring elements.

pub mod battery;
pub mod constructions;
pub mod expr;
pub mod scalars;
pub mod freealg;
pub mod linalg;
pub mod matring;
pub mod par;
pub mod predicates;
pub mod toeplitz;
