//! Expansion of an expression into `sum_i P_i(vars) * chi_i^vars`, where
//! each `chi_i` is an integer character (one base per variable, 1 where
//! the variable does not appear in an exponent).

use num_traits::One;

use super::ast::Expr;
use crate::algebra::MultiPoly;
use crate::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpNormalForm {
    pub vars: Vec<String>,
    /// Distinct characters in order of first appearance, nonzero coefficients.
    pub terms: Vec<(Vec<Int>, MultiPoly)>,
}

impl ExpNormalForm {
    fn zero(vars: &[String]) -> Self {
        ExpNormalForm {
            vars: vars.to_vec(),
            terms: Vec::new(),
        }
    }

    fn trivial_char(&self) -> Vec<Int> {
        vec![Int::one(); self.vars.len()]
    }

    fn single(vars: &[String], chi: Vec<Int>, p: MultiPoly) -> Self {
        let mut out = Self::zero(vars);
        out.push(chi, p);
        out
    }

    fn push(&mut self, chi: Vec<Int>, p: MultiPoly) {
        if let Some(slot) = self.terms.iter_mut().find(|(c, _)| *c == chi) {
            slot.1 = &slot.1 + &p;
        } else {
            self.terms.push((chi, p));
        }
        self.terms.retain(|(_, p)| !p.is_zero());
    }

    pub fn is_polynomial(&self) -> bool {
        let one = self.trivial_char();
        self.terms.iter().all(|(c, _)| *c == one)
    }

    /// The polynomial part, assuming [`is_polynomial`](Self::is_polynomial).
    pub fn polynomial(&self) -> MultiPoly {
        self.terms
            .iter()
            .fold(MultiPoly::zero(self.vars.clone()), |acc, (_, p)| &acc + p)
    }

    /// Variable indices that occur in some exponent.
    pub fn exponent_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.iter().any(|(c, _)| !c[i].is_one()))
            .collect()
    }

    fn add(mut self, other: ExpNormalForm) -> Self {
        for (c, p) in other.terms {
            self.push(c, p);
        }
        self
    }

    fn neg(mut self) -> Self {
        for (_, p) in self.terms.iter_mut() {
            *p = -&*p;
        }
        self
    }

    fn mul(&self, other: &ExpNormalForm) -> Self {
        let mut out = Self::zero(&self.vars);
        for (ca, pa) in &self.terms {
            for (cb, pb) in &other.terms {
                let chi: Vec<Int> = ca.iter().zip(cb).map(|(a, b)| a * b).collect();
                out.push(chi, pa * pb);
            }
        }
        out
    }
}

/// Expand `expr` over the variable list `vars` (which must contain every
/// variable of `expr`).
pub fn normalize(expr: &Expr, vars: &[String]) -> ExpNormalForm {
    let idx = |name: &str| {
        vars.iter()
            .position(|v| v == name)
            .expect("variable list covers the expression")
    };
    let ones = || vec![Int::one(); vars.len()];
    match expr {
        Expr::Num { value } => {
            ExpNormalForm::single(vars, ones(), MultiPoly::constant(vars.to_vec(), value.clone()))
        }
        Expr::Var { name } => {
            ExpNormalForm::single(vars, ones(), MultiPoly::variable(vars.to_vec(), idx(name)))
        }
        Expr::Pow { var, exp } => ExpNormalForm::single(
            vars,
            ones(),
            MultiPoly::variable(vars.to_vec(), idx(var)).pow(*exp),
        ),
        Expr::Exp { base, var } => {
            let mut chi = ones();
            chi[idx(var)] = base.clone();
            ExpNormalForm::single(vars, chi, MultiPoly::constant(vars.to_vec(), Rat::one()))
        }
        Expr::Neg { arg } => normalize(arg, vars).neg(),
        Expr::Add { lhs, rhs } => normalize(lhs, vars).add(normalize(rhs, vars)),
        Expr::Sub { lhs, rhs } => normalize(lhs, vars).add(normalize(rhs, vars).neg()),
        Expr::Mul { lhs, rhs } => normalize(lhs, vars).mul(&normalize(rhs, vars)),
    }
}
