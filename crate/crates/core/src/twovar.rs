//! Polynomial systems `P_1(x, y) = .. = P_m(x, y) = 0`.
//!
//! Such a system is partition regular over the naturals iff it has a
//! constant solution `x = y = a`, and it is partition regular on every
//! infinite subset iff `x - y` divides each `P_i`, that is iff every
//! diagonal `P_i(w, w)` vanishes.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, MultiPoly, UniPoly};
use crate::model::TwoVarSystem;
use crate::{Domain, Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoVarError {
    #[error("equation {0} has degree 0")]
    ConstantPolynomial(usize),
    #[error("expected at most two variables, got {0}")]
    TooManyVariables(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witnesses {
    /// Every element of the domain.
    All,
    Finite(#[serde(with = "crate::model::serde_num::int_vec")] Vec<Int>),
}

impl Witnesses {
    pub fn is_empty(&self) -> bool {
        matches!(self, Witnesses::Finite(v) if v.is_empty())
    }

    pub fn least(&self, domain: Domain) -> Option<Int> {
        match self {
            Witnesses::All => Some(match domain {
                Domain::Naturals => Int::from(1),
                Domain::Integers => Int::zero(),
            }),
            Witnesses::Finite(v) => v.first().cloned(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoVarStatus {
    #[serde(rename = "PR_CONSTANT")]
    PrConstant,
    #[serde(rename = "NOT_PR")]
    NotPr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoVarVerdict {
    pub status: TwoVarStatus,
    pub witnesses: Witnesses,
    pub infinitely_pr: bool,
}

/// Diagonals `P_i(w, w)` after dropping zero polynomials.
fn diagonals(system: &TwoVarSystem) -> Result<Vec<UniPoly>, TwoVarError> {
    if system.vars.len() > 2 {
        return Err(TwoVarError::TooManyVariables(system.vars.len()));
    }
    let mut out = Vec::new();
    for (i, p) in system.polys.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        if p.degree() < 1 {
            return Err(TwoVarError::ConstantPolynomial(i + 1));
        }
        out.push(p.diagonal());
    }
    Ok(out)
}

/// Constant solutions in `domain`, sorted.
pub fn constant_solutions(system: &TwoVarSystem, domain: Domain) -> Result<Witnesses, TwoVarError> {
    let diags = diagonals(system)?;
    let Some(first) = diags.iter().find(|d| !d.is_zero()) else {
        return Ok(Witnesses::All);
    };
    let roots = first
        .integer_roots()?
        .into_iter()
        .filter(|r| domain.contains(r))
        .filter(|r| diags.iter().all(|d| d.eval_int(r).is_zero()))
        .collect();
    Ok(Witnesses::Finite(roots))
}

pub fn decide_infinitely_pr(system: &TwoVarSystem) -> Result<bool, TwoVarError> {
    Ok(diagonals(system)?.iter().all(UniPoly::is_zero))
}

pub fn decide_twovar(system: &TwoVarSystem, domain: Domain) -> Result<TwoVarVerdict, TwoVarError> {
    let witnesses = constant_solutions(system, domain)?;
    let infinitely_pr = decide_infinitely_pr(system)?;
    let status = if witnesses.is_empty() {
        TwoVarStatus::NotPr
    } else {
        TwoVarStatus::PrConstant
    };
    Ok(TwoVarVerdict {
        status,
        witnesses,
        infinitely_pr,
    })
}

/// Evaluates every polynomial at `(a, .., a)`.
pub fn verify_witness(polys: &[MultiPoly], a: &Int) -> bool {
    polys.iter().all(|p| {
        let pt = vec![Rat::from_integer(a.clone()); p.vars().len()];
        p.eval(&pt).is_ok_and(|v| v.is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{classify, parse_equation_text, EquationClass};
    use proptest::prelude::*;

    fn sys(src: &str) -> TwoVarSystem {
        match classify(&parse_equation_text(src).unwrap()).unwrap().class {
            EquationClass::TwoVar(s) => s,
            EquationClass::Linear(l) => TwoVarSystem {
                polys: (0..l.a.rows()).map(|i| l.row_poly(i)).collect(),
                vars: l.vars,
            },
            other => panic!("{other:?}"),
        }
    }

    fn ints(v: &[i64]) -> Witnesses {
        Witnesses::Finite(v.iter().map(|&x| Int::from(x)).collect())
    }

    #[test]
    fn quadratic() {
        let v = decide_twovar(&sys("x^2 - y - 2 = 0"), Domain::Naturals).unwrap();
        assert_eq!(v.status, TwoVarStatus::PrConstant);
        assert_eq!(v.witnesses, ints(&[2]));
        let z = decide_twovar(&sys("x^2 - y - 2 = 0"), Domain::Integers).unwrap();
        assert_eq!(z.witnesses, ints(&[-1, 2]));
    }

    #[test]
    fn no_root() {
        let v = decide_twovar(&sys("x + y - 1 = 0"), Domain::Naturals).unwrap();
        assert_eq!(v.status, TwoVarStatus::NotPr);
    }

    #[test]
    fn two_x_minus_y() {
        let v = decide_twovar(&sys("2*x - y - 7 = 0"), Domain::Naturals).unwrap();
        assert_eq!(v.witnesses, ints(&[7]));
        assert!(!v.infinitely_pr);
    }

    #[test]
    fn infinitely_pr_cases() {
        assert!(decide_infinitely_pr(&sys("x^2 - 2*x*y + y^2 = 0")).unwrap());
        assert!(decide_infinitely_pr(&sys("x - y = 0 ; x^2 - y^2 = 0")).unwrap());
        let v = decide_twovar(&sys("x^2 = y^2"), Domain::Naturals).unwrap();
        assert_eq!(v.witnesses, Witnesses::All);
    }

    #[test]
    fn intersection_of_roots() {
        let v = decide_twovar(&sys("x^2 - y - 2 = 0 ; x*y - 4 = 0"), Domain::Naturals).unwrap();
        assert_eq!(v.witnesses, ints(&[2]));
        let v = decide_twovar(&sys("x^2 - y - 2 = 0 ; x*y - 9 = 0"), Domain::Naturals).unwrap();
        assert_eq!(v.status, TwoVarStatus::NotPr);
    }

    #[test]
    fn constant_polynomial_rejected() {
        let s = TwoVarSystem {
            vars: vec!["x".into(), "y".into()],
            polys: vec![MultiPoly::from_int_terms(&["x", "y"], &[(&[0, 0], 3)])],
        };
        assert_eq!(decide_twovar(&s, Domain::Naturals), Err(TwoVarError::ConstantPolynomial(1)));
    }

    /// Division by `x - y` with `x` as the main variable: each term
    /// `c x^i y^j` with `i > 0` is cancelled by `c x^(i-1) y^j (x - y)`.
    fn long_division_remainder_zero(p: &MultiPoly) -> bool {
        let vars = p.vars().to_vec();
        let x_minus_y = MultiPoly::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], -1)]);
        let mut r = p.clone();
        loop {
            let lead = r
                .terms()
                .into_iter()
                .find(|(e, _)| e[0] > 0)
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = lead else { break };
            let mut q = vec![0u32; 2];
            q[0] = e[0] - 1;
            q[1] = e[1];
            let term = MultiPoly::from_terms(vars.clone(), [(q, c)]).unwrap();
            r = &r - &(&term * &x_minus_y);
        }
        r.is_zero()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn witnesses_match_scan(
            coeffs in prop::collection::vec((0u32..=3, 0u32..=2, -9i64..=9), 1..=5),
            root in 1i64..=20,
            plant in any::<bool>(),
        ) {
            let vars = vec!["x".to_string(), "y".to_string()];
            let mut p = MultiPoly::from_terms(
                vars.clone(),
                coeffs.iter().map(|&(i, j, c)| (vec![i, j], Rat::from_integer(c.into()))),
            ).unwrap();
            if plant {
                let d = p.diagonal().eval_int(&Int::from(root));
                p = &p - &MultiPoly::constant(vars.clone(), d);
            }
            prop_assume!(p.degree() >= 1);
            let s = TwoVarSystem { vars, polys: vec![p.clone()] };
            let w = constant_solutions(&s, Domain::Naturals).unwrap();
            let scan: Vec<Int> = (1..=1000)
                .map(Int::from)
                .filter(|a| verify_witness(&[p.clone()], a))
                .collect();
            match w {
                Witnesses::All => prop_assert_eq!(scan.len(), 1000),
                Witnesses::Finite(v) => {
                    let in_range: Vec<Int> = v.into_iter().filter(|a| a <= &Int::from(1000)).collect();
                    prop_assert_eq!(in_range, scan);
                }
            }
        }

        #[test]
        fn divisibility_matches_long_division(
            coeffs in prop::collection::vec((0u32..=3, 0u32..=3, -3i64..=3), 1..=6),
            factor in any::<bool>(),
        ) {
            let vars = vec!["x".to_string(), "y".to_string()];
            let mut p = MultiPoly::from_terms(
                vars.clone(),
                coeffs.iter().map(|&(i, j, c)| (vec![i, j], Rat::from_integer(c.into()))),
            ).unwrap();
            if factor {
                p = &p * &MultiPoly::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], -1)]);
            }
            prop_assume!(p.degree() >= 1);
            let s = TwoVarSystem { vars, polys: vec![p.clone()] };
            prop_assert_eq!(decide_infinitely_pr(&s).unwrap(), long_division_remainder_zero(&p));
        }
    }
}
