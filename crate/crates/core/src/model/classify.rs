use num_traits::Zero;
use thiserror::Error;

use super::ast::{EquationSystem, Expr};
use super::normal::{normalize, ExpNormalForm};
use crate::algebra::{MultiPoly, RatMatrix};
use crate::polyexp::{PolyExpEquation, PolyExpTerm};
use crate::Rat;

/// `A x = b` over the listed variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub vars: Vec<String>,
    pub a: RatMatrix,
    pub b: Vec<Rat>,
}

/// Polynomial equations `P_i = 0` in at most two variables, each of
/// degree at least one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVarSystem {
    pub vars: Vec<String>,
    pub polys: Vec<MultiPoly>,
}

/// Polynomial equations `P_i = 0` that fit no more specific class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSystem {
    pub vars: Vec<String>,
    pub polys: Vec<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationClass {
    Linear(LinearSystem),
    TwoVar(TwoVarSystem),
    PolyExp(PolyExpEquation),
    General(GeneralSystem),
}

impl EquationClass {
    pub fn name(&self) -> &'static str {
        match self {
            EquationClass::Linear(_) => "linear",
            EquationClass::TwoVar(_) => "twovar",
            EquationClass::PolyExp(_) => "polyexp",
            EquationClass::General(_) => "general",
        }
    }

    /// Variable order used by solutions of this class.
    pub fn vars(&self) -> Vec<String> {
        match self {
            EquationClass::Linear(s) => s.vars.clone(),
            EquationClass::TwoVar(s) => s.vars.clone(),
            EquationClass::PolyExp(e) => e.poly_vars(),
            EquationClass::General(s) => s.vars.clone(),
        }
    }
}

/// Classification result plus the human-readable notes it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classified {
    pub class: EquationClass,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the system has no equations")]
    Empty,
    #[error("systems of several polynomial-exponential equations are not supported")]
    ExponentialSystem,
}

pub fn classify(system: &EquationSystem) -> Result<Classified, ClassifyError> {
    if system.equations.is_empty() {
        return Err(ClassifyError::Empty);
    }
    let vars = system.vars();
    let forms: Vec<ExpNormalForm> = system
        .equations
        .iter()
        .map(|e| {
            normalize(
                &Expr::Sub {
                    lhs: Box::new(e.lhs.clone()),
                    rhs: Box::new(e.rhs.clone()),
                },
                &vars,
            )
        })
        .collect();
    let mut notes = Vec::new();

    if forms.iter().all(|f| f.is_polynomial()) {
        let polys: Vec<MultiPoly> = forms.iter().map(|f| f.polynomial()).collect();
        if polys.iter().all(|p| p.degree() <= 1) {
            return Ok(Classified {
                class: EquationClass::Linear(linear_from_polys(&vars, &polys)),
                notes,
            });
        }
        let nonzero: Vec<MultiPoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        if vars.len() <= 2 && nonzero.iter().all(|p| p.degree() >= 1) {
            return Ok(Classified {
                class: EquationClass::TwoVar(TwoVarSystem {
                    vars,
                    polys: nonzero,
                }),
                notes,
            });
        }
        return Ok(Classified {
            class: EquationClass::General(GeneralSystem {
                vars,
                polys: nonzero,
            }),
            notes,
        });
    }

    if forms.len() > 1 {
        return Err(ClassifyError::ExponentialSystem);
    }
    let form = &forms[0];
    let in_exponent = form.exponent_vars();
    let free: Vec<usize> = (0..vars.len()).filter(|i| !in_exponent.contains(i)).collect();
    let parameter = free.first().copied();
    if free.len() > 1 {
        notes.push(format!(
            "variables {} never occur in an exponent; `{}` is taken as the parameter and the rest \
             are treated as exponent variables with base 1",
            free.iter().map(|&i| format!("`{}`", vars[i])).collect::<Vec<_>>().join(", "),
            vars[free[0]],
        ));
    } else if let Some(p) = parameter {
        notes.push(format!("parameter variable: `{}`", vars[p]));
    }
    let exp_idx: Vec<usize> = (0..vars.len()).filter(|&i| Some(i) != parameter).collect();
    let exponent_vars: Vec<String> = exp_idx.iter().map(|&i| vars[i].clone()).collect();
    let mut poly_vars = exponent_vars.clone();
    if let Some(p) = parameter {
        poly_vars.push(vars[p].clone());
    }
    let terms = form
        .terms
        .iter()
        .map(|(chi, p)| PolyExpTerm {
            poly: p.with_vars(&poly_vars).expect("same variable set"),
            f: None,
            character: exp_idx.iter().map(|&i| chi[i].clone()).collect(),
        })
        .collect();
    let eq = PolyExpEquation::new(exponent_vars, parameter.map(|p| vars[p].clone()), terms)
        .expect("normal form yields a well-formed equation");
    Ok(Classified {
        class: EquationClass::PolyExp(eq),
        notes,
    })
}

fn linear_from_polys(vars: &[String], polys: &[MultiPoly]) -> LinearSystem {
    let n = vars.len();
    let mut rows = Vec::with_capacity(polys.len());
    let mut b = Vec::with_capacity(polys.len());
    for p in polys {
        let row: Vec<Rat> = (0..n)
            .map(|j| {
                let mut e = vec![0u32; n];
                e[j] = 1;
                p.coefficient(&e)
            })
            .collect();
        rows.push(row);
        b.push(-p.constant_term());
    }
    let a = if rows.is_empty() {
        RatMatrix::zeros(0, n)
    } else {
        RatMatrix::from_rows(rows).expect("rows have equal length")
    };
    LinearSystem {
        vars: vars.to_vec(),
        a,
        b,
    }
}

impl LinearSystem {
    pub fn new(vars: Vec<String>, a: RatMatrix, b: Vec<Rat>) -> Result<Self, String> {
        if a.cols() != vars.len() {
            return Err(format!(
                "matrix has {} columns but {} variables are listed",
                a.cols(),
                vars.len()
            ));
        }
        if a.rows() != b.len() {
            return Err(format!(
                "matrix has {} rows but the right-hand side has {} entries",
                a.rows(),
                b.len()
            ));
        }
        Ok(LinearSystem { vars, a, b })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.b.iter().all(|x| x.is_zero())
    }

    /// Row `i` as the polynomial `A_i x - b_i`.
    pub fn row_poly(&self, i: usize) -> MultiPoly {
        let n = self.vars.len();
        let terms = (0..n)
            .map(|j| {
                let mut e = vec![0u32; n];
                e[j] = 1;
                (e, self.a.get(i, j).clone())
            })
            .chain(std::iter::once((vec![0; n], -self.b[i].clone())));
        MultiPoly::from_terms(self.vars.clone(), terms).expect("well-formed")
    }
}

/// Default variable names `x1..xn` for matrix-only input.
pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::model::parse_equation_text;
    use crate::Int;

    fn cls(src: &str) -> EquationClass {
        classify(&parse_equation_text(src).unwrap()).unwrap().class
    }

    #[test]
    fn linear_nonhomogeneous() {
        let EquationClass::Linear(s) = cls("2*x - y = 3") else { panic!() };
        assert_eq!(s.a, RatMatrix::from_int_rows(&[vec![2, -1]]).unwrap());
        assert_eq!(s.b, vec![rat(3)]);
    }

    #[test]
    fn x_equals_y_is_linear() {
        let EquationClass::Linear(s) = cls("x = y") else { panic!() };
        assert_eq!(s.a, RatMatrix::from_int_rows(&[vec![1, -1]]).unwrap());
        assert_eq!(s.b, vec![rat(0)]);
    }

    #[test]
    fn quadratic_two_var() {
        let EquationClass::TwoVar(s) = cls("x^2 - y = 2") else { panic!() };
        assert_eq!(s.vars, vec!["x", "y"]);
        assert_eq!(
            s.polys,
            vec![MultiPoly::from_int_terms(
                &["x", "y"],
                &[(&[2, 0], 1), (&[0, 1], -1), (&[0, 0], -2)]
            )]
        );
    }

    #[test]
    fn three_var_polynomial_is_general() {
        assert!(matches!(cls("x*y = z"), EquationClass::General(_)));
    }

    #[test]
    fn constant_equation_in_polynomial_system_is_general() {
        assert!(matches!(cls("x^2 = y ; 1 = 0"), EquationClass::General(_)));
    }

    #[test]
    fn example_polyexp() {
        let src = "(x*y - z + 2)*2^x*3^y + (x - y + 2*z + 2)*5^x*7^y + (x*y - z + 3)*11^x*13^y = 0";
        let EquationClass::PolyExp(e) = cls(src) else { panic!() };
        assert_eq!(e.m(), 3);
        assert_eq!(e.exponent_vars(), ["x", "y"]);
        assert_eq!(e.parameter(), Some("z"));
        let chars: Vec<Vec<Int>> = e.characters();
        let want: Vec<Vec<Int>> = [[2, 3], [5, 7], [11, 13]]
            .iter()
            .map(|c| c.iter().map(|&x| Int::from(x)).collect())
            .collect();
        assert_eq!(chars, want);
    }

    #[test]
    fn polyexp_without_parameter() {
        let EquationClass::PolyExp(e) = cls("(x - 2)*2^x = 0") else { panic!() };
        assert_eq!(e.parameter(), None);
        assert_eq!(e.m(), 1);
    }

    #[test]
    fn several_free_variables_get_unit_bases() {
        let c = classify(&parse_equation_text("2^x*z + w = 0").unwrap()).unwrap();
        let EquationClass::PolyExp(e) = c.class else { panic!() };
        assert_eq!(e.parameter(), Some("z"));
        assert_eq!(e.exponent_vars(), ["x", "w"]);
        assert!(c.notes[0].contains("parameter"));
    }

    #[test]
    fn exponential_systems_rejected() {
        let s = parse_equation_text("2^x = y ; x = 1").unwrap();
        assert_eq!(classify(&s), Err(ClassifyError::ExponentialSystem));
    }
}
