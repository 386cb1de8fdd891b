use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::serde_num;
use crate::{Int, Rat};

/// Expression tree as produced by the parser.
///
/// Literals produced by the parser are nonnegative; a leading minus is a
/// separate [`Expr::Neg`] node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Expr {
    Num {
        #[serde(with = "serde_num::rat")]
        value: Rat,
    },
    Var {
        name: String,
    },
    /// `var ^ k`
    Pow {
        var: String,
        exp: u32,
    },
    /// `base ^ var`
    Exp {
        #[serde(with = "serde_num::int")]
        base: Int,
        var: String,
    },
    Neg {
        arg: Box<Expr>,
    },
    Add {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Sub {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Mul {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
}

/// A system of equations, `;`-separated in the text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationSystem {
    pub equations: Vec<Equation>,
}

impl Expr {
    pub fn num(n: i64) -> Expr {
        Expr::Num {
            value: Rat::from_integer(Int::from(n)),
        }
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var { name: name.into() }
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num { .. } => {}
            Expr::Var { name: v } | Expr::Pow { var: v, .. } | Expr::Exp { var: v, .. } => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg { arg } => arg.collect_vars(out),
            Expr::Add { lhs, rhs } | Expr::Sub { lhs, rhs } | Expr::Mul { lhs, rhs } => {
                lhs.collect_vars(out);
                rhs.collect_vars(out);
            }
        }
    }

    /// Rename variables through `f`.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Expr {
        match self {
            Expr::Num { .. } => self.clone(),
            Expr::Var { name } => Expr::Var { name: f(name) },
            Expr::Pow { var, exp } => Expr::Pow {
                var: f(var),
                exp: *exp,
            },
            Expr::Exp { base, var } => Expr::Exp {
                base: base.clone(),
                var: f(var),
            },
            Expr::Neg { arg } => Expr::Neg {
                arg: Box::new(arg.rename(f)),
            },
            Expr::Add { lhs, rhs } => Expr::Add {
                lhs: Box::new(lhs.rename(f)),
                rhs: Box::new(rhs.rename(f)),
            },
            Expr::Sub { lhs, rhs } => Expr::Sub {
                lhs: Box::new(lhs.rename(f)),
                rhs: Box::new(rhs.rename(f)),
            },
            Expr::Mul { lhs, rhs } => Expr::Mul {
                lhs: Box::new(lhs.rename(f)),
                rhs: Box::new(rhs.rename(f)),
            },
        }
    }

    // 0: sum, 1: product, 2: factor
    fn write_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let open = match self {
            Expr::Add { .. } | Expr::Sub { .. } => ctx > 0,
            Expr::Mul { .. } => ctx > 1,
            _ => false,
        };
        if open {
            write!(f, "(")?;
        }
        match self {
            Expr::Num { value } => {
                if value.is_negative() {
                    write!(f, "(-{})", value.abs())?
                } else if value.denom().is_one() {
                    write!(f, "{}", value.numer())?
                } else {
                    write!(f, "{}/{}", value.numer(), value.denom())?
                }
            }
            Expr::Var { name } => write!(f, "{name}")?,
            Expr::Pow { var, exp } => write!(f, "{var}^{exp}")?,
            Expr::Exp { base, var } => {
                if base.is_negative() {
                    write!(f, "({base})^{var}")?
                } else {
                    write!(f, "{base}^{var}")?
                }
            }
            Expr::Neg { arg } => {
                write!(f, "-")?;
                arg.write_prec(f, 2)?;
            }
            Expr::Add { lhs, rhs } => {
                lhs.write_prec(f, 0)?;
                write!(f, " + ")?;
                rhs.write_prec(f, 1)?;
            }
            Expr::Sub { lhs, rhs } => {
                lhs.write_prec(f, 0)?;
                write!(f, " - ")?;
                rhs.write_prec(f, 1)?;
            }
            Expr::Mul { lhs, rhs } => {
                lhs.write_prec(f, 1)?;
                write!(f, "*")?;
                rhs.write_prec(f, 2)?;
            }
        }
        if open {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.equations.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl EquationSystem {
    /// Variables in order of first appearance.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.equations {
            e.lhs.collect_vars(&mut out);
            e.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn rename(&self, f: &impl Fn(&str) -> String) -> EquationSystem {
        EquationSystem {
            equations: self
                .equations
                .iter()
                .map(|e| Equation {
                    lhs: e.lhs.rename(f),
                    rhs: e.rhs.rename(f),
                })
                .collect(),
        }
    }
}
