use num_traits::{One, Signed, Zero};

use super::PolyExpError;
use crate::algebra::{MultiPoly, UniPoly};
use crate::{Int, Rat};

/// One additive term `P(x, y) * f(y) * alpha^x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpTerm {
    /// Polynomial over [`PolyExpEquation::poly_vars`].
    pub poly: MultiPoly,
    /// Optional extra factor in the parameter variable.
    pub f: Option<UniPoly>,
    /// One nonzero base per exponent variable.
    pub character: Vec<Int>,
}

/// `sum_i P_i(x, y) f_i(y) alpha_i^x = 0` with `x = (x_1..x_n)` the exponent
/// variables and `y` an optional parameter that never occurs in an
/// exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpEquation {
    exponent_vars: Vec<String>,
    parameter: Option<String>,
    terms: Vec<PolyExpTerm>,
}

impl PolyExpEquation {
    pub fn new(
        exponent_vars: Vec<String>,
        parameter: Option<String>,
        terms: Vec<PolyExpTerm>,
    ) -> Result<Self, PolyExpError> {
        if exponent_vars.is_empty() {
            return Err(PolyExpError::Malformed("at least one exponent variable is required".into()));
        }
        if terms.is_empty() {
            return Err(PolyExpError::Malformed("at least one term is required".into()));
        }
        let eq = PolyExpEquation {
            exponent_vars,
            parameter,
            terms,
        };
        let pv = eq.poly_vars();
        for (i, t) in eq.terms.iter().enumerate() {
            if t.character.len() != eq.exponent_vars.len() {
                return Err(PolyExpError::Malformed(format!(
                    "term {} has a character of length {}, expected {}",
                    i + 1,
                    t.character.len(),
                    eq.exponent_vars.len()
                )));
            }
            if t.character.iter().any(|a| a.is_zero()) {
                return Err(PolyExpError::Malformed(format!(
                    "term {} has a zero character entry",
                    i + 1
                )));
            }
            if t.poly.vars() != pv.as_slice() {
                return Err(PolyExpError::Malformed(format!(
                    "term {} polynomial is over {:?}, expected {:?}",
                    i + 1,
                    t.poly.vars(),
                    pv
                )));
            }
            if t.f.is_some() && eq.parameter.is_none() {
                return Err(PolyExpError::Malformed(format!(
                    "term {} has a parameter factor but the equation has no parameter",
                    i + 1
                )));
            }
        }
        Ok(eq)
    }

    pub fn exponent_vars(&self) -> &[String] {
        &self.exponent_vars
    }

    pub fn parameter(&self) -> Option<&str> {
        self.parameter.as_deref()
    }

    pub fn terms(&self) -> &[PolyExpTerm] {
        &self.terms
    }

    /// Exponent variables followed by the parameter, if any.
    pub fn poly_vars(&self) -> Vec<String> {
        let mut v = self.exponent_vars.clone();
        v.extend(self.parameter.iter().cloned());
        v
    }

    /// Number of exponent variables.
    pub fn n(&self) -> usize {
        self.exponent_vars.len()
    }

    /// Number of terms.
    pub fn m(&self) -> usize {
        self.terms.len()
    }

    pub fn characters(&self) -> Vec<Vec<Int>> {
        self.terms.iter().map(|t| t.character.clone()).collect()
    }

    /// Exact value at an integer point over [`poly_vars`](Self::poly_vars).
    /// Negative exponents give rational powers.
    pub fn eval(&self, point: &[Int]) -> Result<Rat, PolyExpError> {
        let pt: Vec<Rat> = point.iter().cloned().map(Rat::from_integer).collect();
        let mut acc = Rat::zero();
        for t in &self.terms {
            let mut v = t.poly.eval(&pt)?;
            if let (Some(f), Some(y)) = (&t.f, pt.get(self.n())) {
                v *= f.eval(y);
            }
            for (a, x) in t.character.iter().zip(point) {
                v *= rat_pow(a, x);
            }
            acc += v;
        }
        Ok(acc)
    }
}

/// `a^e` for integer `a != 0` and any integer `e`.
pub fn rat_pow(a: &Int, e: &Int) -> Rat {
    let k: usize = e
        .abs()
        .try_into()
        .expect("exponent fits in usize");
    let p = num_traits::pow(a.clone(), k);
    if e.is_negative() {
        Rat::one() / Rat::from_integer(p)
    } else {
        Rat::from_integer(p)
    }
}
