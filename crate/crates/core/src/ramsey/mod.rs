//! Finite side of partition regularity: solutions inside `[1..N]`,
//! colorings of `[1..N]`, and an exhaustive search for colorings without a
//! monochromatic solution.
//!
//! A `Forced` outcome at `(N, r)` proves that every `r`-coloring of the
//! naturals has a monochromatic solution inside `[1..N]`. An avoiding
//! coloring is only finite evidence against partition regularity.

mod coloring;
mod search;
mod solutions;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use coloring::{canonical_coloring, verify_coloring, CanonicalColoring, Coloring, ColoringCheck};
pub use search::{search_avoiding_coloring, search_budget_from_env, SearchOutcome, DEFAULT_SEARCH_BUDGET};
pub use solutions::{enumerate_solutions, filter_injectivity, is_solution, SolutionSet, DEFAULT_ENUM_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error("unsupported equation: {0}")]
    Unsupported(String),
    #[error("enumeration needs about {cost} evaluations, above the budget {budget}")]
    BudgetExceeded { cost: String, budget: u64 },
    #[error("injectivity {r} is outside 1..={arity}")]
    InjectivityOutOfRange { r: usize, arity: usize },
    #[error("value {0} occurs in a solution but is not colored")]
    CoverageGap(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
