//! Exact arithmetic substrate: big rationals, multivariate and univariate
//! polynomials, integer root finding, factorization and matrix rank.
//!
//! Nothing in here rounds. Every value is a `BigInt` or a reduced
//! `BigRational`.

pub mod integer;
mod matrix;
mod multipoly;
mod unipoly;

use num_bigint::BigInt;
use thiserror::Error;

pub use integer::{factor_integer, Factorization, DEFAULT_FACTOR_BUDGET};
pub use matrix::{integer_rank, RatMatrix};
pub use multipoly::{divides_x_minus_y, grlex_desc, Exponents, MultiPoly};
pub use unipoly::UniPoly;

pub use num_bigint::BigInt as Int;
pub use num_rational::BigRational as Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("expected a polynomial in at most two variables, got {0:?}")]
    WrongVariableSet(Vec<String>),
    #[error("variable `{0}` is not in the target variable list")]
    UnknownVariable(String),
    #[error("cannot factor zero")]
    FactorZero,
    #[error("factorization of {n} incomplete: cofactor {cofactor} exceeds the trial-division budget")]
    IncompleteFactorization { n: BigInt, cofactor: BigInt },
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
