//! Deciders for partition regularity of equation systems over the
//! naturals and the integers, with a finite coloring search that
//! cross-checks each verdict.
//!
//! The pieces:
//!
//! * [`algebra`]: exact rationals, polynomials, integer roots, matrix rank.
//! * [`model`]: text grammar, AST, classification and JSON forms.
//! * [`rado`]: linear systems via the columns condition.
//! * [`twovar`]: polynomial systems in two variables.
//! * [`sunit`]: linear equations over finitely generated subgroups of Q^x.
//! * [`polyexp`]: polynomial-exponential equations over Z.
//! * [`ramsey`]: solution enumeration and coloring search on `[1..N]`.
//! * [`decide`]: dispatch from a parsed system to the right decider and
//!   the report format used by the command-line tool.

pub mod algebra;
pub mod decide;
pub mod model;
pub mod polyexp;
pub mod rado;
pub mod ramsey;
pub mod sunit;
pub mod twovar;

pub use algebra::{Int, Rat};

/// Solution domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Domain {
    /// `{1, 2, 3, ...}`
    #[serde(rename = "N")]
    Naturals,
    #[serde(rename = "Z")]
    Integers,
}

impl Domain {
    pub fn contains(&self, a: &Int) -> bool {
        match self {
            Domain::Naturals => a >= &Int::from(1),
            Domain::Integers => true,
        }
    }
}

impl std::str::FromStr for Domain {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "N" | "n" | "nat" | "naturals" => Ok(Domain::Naturals),
            "Z" | "z" | "int" | "integers" => Ok(Domain::Integers),
            _ => Err(format!("unknown domain `{s}` (expected N or Z)")),
        }
    }
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Domain::Naturals => "N",
            Domain::Integers => "Z",
        })
    }
}
