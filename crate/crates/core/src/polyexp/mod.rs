//! Polynomial-exponential equations `sum_i P_i(x, y) f_i(y) alpha_i^x = 0`
//! over the integers.
//!
//! Such an equation is partition regular exactly when it has a constant
//! solution, provided every partition of the terms with a block of size at
//! least two has a trivial character group. A constant solution `x = y = s`
//! is a zero of the exponential sum `g(s) = sum_i a_i^s A_i(s)` obtained by
//! [`diagonalize`]; [`decide_constant_solution`] finds such zeros or proves
//! there are none with a [`DominanceCertificate`] (and, when one exists, a
//! [`ModularCertificate`]).

mod characters;
mod decide;
mod dominance;
mod equation;
mod expsum;
mod modular;
mod partitions;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use characters::{
    character_group_trivial, check_hypothesis, mutually_coprime, CharacterLattice, Coprimality,
    HypothesisReport,
};
pub use decide::{
    compute_constants, decide_constant_solution, decide_opaque_constant_solution,
    decide_polyexp_pr, solution_count_bound, ABConstants, ConstantSolution, OpaqueTerm,
    PolyExpOptions, PolyExpStatus, PolyExpVerdict, SolutionBound,
};
pub use dominance::{dominance_bound, DirectionBound, DominanceCertificate, ParityBound};
pub use equation::{rat_pow, PolyExpEquation, PolyExpTerm};
pub use expsum::{diagonalize, ExpSum};
pub use modular::{modular_certificate_search, ModularCertificate, DEFAULT_MMAX};
pub use partitions::{bell_numbers, enumerate_partitions, SetPartitions, DEFAULT_PARTITION_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyExpError {
    #[error("malformed equation: {0}")]
    Malformed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{m} terms exceed the partition cap {cap} (raise it with --cap)")]
    PartitionCap { m: usize, cap: usize },
    #[error("the exponential sum vanishes identically: every integer is a solution")]
    IdenticallyZero,
    #[error("dominance threshold exceeds {0}; bases are too close in absolute value")]
    ThresholdTooLarge(u64),
}
