//! Exact linear algebra over the base fields.

mod sparse;

pub use sparse::SparseSystem;
