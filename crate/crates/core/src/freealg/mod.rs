//! Free noncommutative algebras, monomial reduction systems and bounded
//! searches in their quotients.

mod diamond;
mod poly;
mod search;
mod system;
mod word;

use thiserror::Error;

use crate::expr::ParseError;

pub use diamond::{check_diamond, Ambiguity, AmbiguityKind, DiamondReport};
pub use poly::{parse_expr, FreeAlgebra, NCPoly, PolyDisplay};
pub use search::{
    bounded_inverse_search, inverse_search_in_span, nilpotent_inverse, reduce_to_zero, Effort, Grading,
    InverseSearch, SearchSpace, ZeroVerdict,
};
pub use system::{ReductionSystem, RewriteStep, RewriteStrategy, Rule};
pub use word::{Alphabet, Word, WordDisplay};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("invalid generator name '{0}'")]
    BadGenerator(String),
    #[error("generator '{0}' declared twice")]
    DuplicateGenerator(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("rule {index}: {reason}")]
    InvalidRule { index: usize, reason: String },
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("search space of dimension {dimension} exceeds the limit {limit}")]
    SearchSpaceTooLarge { dimension: usize, limit: usize },
    #[error("nilpotency precondition failed: power {power} does not reduce to zero")]
    NilpotencyFailed { power: u32 },
}
