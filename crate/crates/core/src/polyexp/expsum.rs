use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::equation::{rat_pow, PolyExpEquation};
use super::PolyExpError;
use crate::algebra::UniPoly;
use crate::{Int, Rat};

/// `g(s) = sum_i a_i^s A_i(s)` with distinct nonzero bases and nonzero
/// integer polynomials. The empty sum is the zero function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSum {
    terms: Vec<(Int, UniPoly)>,
}

impl ExpSum {
    /// Merges equal bases, drops vanishing terms and clears denominators.
    /// Returns the sum together with the positive factor it was scaled by.
    pub fn new(raw: Vec<(Int, UniPoly)>) -> Result<(ExpSum, Int), PolyExpError> {
        let mut terms: Vec<(Int, UniPoly)> = Vec::new();
        for (a, p) in raw {
            if a.is_zero() {
                return Err(PolyExpError::Malformed("exponential base 0".into()));
            }
            match terms.iter_mut().find(|(b, _)| *b == a) {
                Some(slot) => slot.1 = &slot.1 + &p,
                None => terms.push((a, p)),
            }
        }
        terms.retain(|(_, p)| !p.is_zero());
        let scale = terms
            .iter()
            .fold(Int::one(), |acc, (_, p)| acc.lcm(&p.denominator_lcm()));
        let s = Rat::from_integer(scale.clone());
        for (_, p) in terms.iter_mut() {
            *p = p.scale(&s);
        }
        Ok((ExpSum { terms }, scale))
    }

    /// From integer coefficient lists, lowest degree first.
    pub fn from_ints(terms: &[(i64, &[i64])]) -> ExpSum {
        ExpSum::new(
            terms
                .iter()
                .map(|(a, c)| (Int::from(*a), UniPoly::from_ints(c)))
                .collect(),
        )
        .expect("nonzero bases")
        .0
    }

    pub fn terms(&self) -> &[(Int, UniPoly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn bases(&self) -> Vec<Int> {
        self.terms.iter().map(|(a, _)| a.clone()).collect()
    }

    /// Exact value at any integer `s`.
    pub fn eval(&self, s: &Int) -> Rat {
        self.terms
            .iter()
            .map(|(a, p)| rat_pow(a, s) * p.eval_int(s))
            .sum()
    }

    /// Integer coefficients of `A_i`, lowest degree first.
    pub fn int_coeffs(&self) -> Vec<Vec<Int>> {
        self.terms
            .iter()
            .map(|(_, p)| p.integer_coeffs().expect("cleared"))
            .collect()
    }

    /// `h(u) = g(-u) * (prod_i |a_i|)^u = sum_i c_i^u A_i(-u)` with
    /// `c_i = sign(a_i) prod_{j != i} |a_j|`. For `u >= 0` the zeros of
    /// `h` are exactly the `u` with `g(-u) = 0`.
    pub fn negated(&self) -> ExpSum {
        let abs: Vec<Int> = self.terms.iter().map(|(a, _)| a.abs()).collect();
        let raw = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, (a, p))| {
                let mut c: Int = abs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, x)| x.clone())
                    .product();
                if a.is_negative() {
                    c = -c;
                }
                (c, p.compose_affine(&-Rat::one(), &Rat::zero()))
            })
            .collect();
        ExpSum::new(raw).expect("nonzero bases").0
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if a.is_negative() {
                write!(f, "({a})^s*({})", p.display_in("s"))?;
            } else {
                write!(f, "{a}^s*({})", p.display_in("s"))?;
            }
        }
        Ok(())
    }
}

/// The exponential sum whose zeros are the constant solutions:
/// `a_i = prod_j alpha_ij` and `A_i(w) = P_i(w, .., w) f_i(w)`.
pub fn diagonalize(eq: &PolyExpEquation) -> ExpSum {
    let raw = eq
        .terms()
        .iter()
        .map(|t| {
            let a: Int = t.character.iter().product();
            let mut p = t.poly.diagonal();
            if let Some(f) = &t.f {
                p = &p * f;
            }
            (a, p)
        })
        .collect();
    ExpSum::new(raw).expect("characters are nonzero").0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{classify, parse_equation_text, EquationClass};
    use proptest::prelude::*;

    const EXAMPLE: &str =
        "(x*y - z + 2)*2^x*3^y + (x - y + 2*z + 2)*5^x*7^y + (x*y - z + 3)*11^x*13^y = 0";

    fn eq(src: &str) -> PolyExpEquation {
        match classify(&parse_equation_text(src).unwrap()).unwrap().class {
            EquationClass::PolyExp(e) => e,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn example_diagonal() {
        let g = diagonalize(&eq(EXAMPLE));
        let want = ExpSum::from_ints(&[(6, &[2, -1, 1]), (35, &[2, 2]), (143, &[3, -1, 1])]);
        assert_eq!(g, want);
        assert_eq!(
            g.to_string(),
            "6^s*(s^2 - s + 2) + 35^s*(2*s + 2) + 143^s*(s^2 - s + 3)"
        );
    }

    #[test]
    fn single_and_merged_terms() {
        assert_eq!(diagonalize(&eq("(x - 2)*2^x = 0")), ExpSum::from_ints(&[(2, &[-2, 1])]));
        assert_eq!(diagonalize(&eq("2^x + 4^y = 0")), ExpSum::from_ints(&[(2, &[1]), (4, &[1])]));
        let (g, _) = ExpSum::new(vec![
            (Int::from(2), UniPoly::from_ints(&[1])),
            (Int::from(2), UniPoly::from_ints(&[1])),
        ])
        .unwrap();
        assert_eq!(g, ExpSum::from_ints(&[(2, &[2])]));
    }

    #[test]
    fn vanishing_diagonal() {
        assert!(diagonalize(&eq("(x - y)*2^x*3^y = 0")).is_zero());
    }

    #[test]
    fn denominators_cleared() {
        let (g, scale) = ExpSum::new(vec![(
            Int::from(3),
            UniPoly::new(vec![Rat::new(1.into(), 2.into()), Rat::new(1.into(), 3.into())]),
        )])
        .unwrap();
        assert_eq!(scale, Int::from(6));
        assert_eq!(g, ExpSum::from_ints(&[(3, &[3, 2])]));
    }

    #[test]
    fn negated_matches_definition() {
        let g = ExpSum::from_ints(&[(2, &[1, 1]), (-3, &[0, 2]), (5, &[-1])]);
        let h = g.negated();
        let prod = Int::from(30);
        for u in 0..8 {
            let u = Int::from(u);
            let want = g.eval(&-u.clone()) * rat_pow(&prod, &u);
            assert_eq!(h.eval(&u), want);
        }
    }

    fn base(b: i64) -> String {
        if b < 0 {
            format!("({b})")
        } else {
            b.to_string()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn diagonal_times_scale_equals_original(
            c in prop::collection::vec(-4i64..=4, 6),
            b in prop::collection::vec(prop::sample::select(vec![-3i64, -2, 2, 3, 5]), 4),
            den in 1i64..=4,
            s in -5i64..=5,
        ) {
            let src = format!(
                "({}*x*y + {}*z - {}/{den})*{}^x*{}^y + ({}*x + {}*y*z + {})*{}^x*{}^y = 0",
                c[0], c[1], c[2], base(b[0]), base(b[1]), c[3], c[4], c[5], base(b[2]), base(b[3])
            ).replace("+ -", "- ").replace("- -", "+ ");
            let class = classify(&parse_equation_text(&src).unwrap()).unwrap().class;
            let EquationClass::PolyExp(e) = class else { return Ok(()) };
            let raw: Vec<(Int, UniPoly)> = e.terms().iter()
                .map(|t| (t.character.iter().product(), t.poly.diagonal()))
                .collect();
            let (g, scale) = ExpSum::new(raw).unwrap();
            let s = Int::from(s);
            let point = vec![s.clone(); e.poly_vars().len()];
            prop_assert_eq!(g.eval(&s), e.eval(&point).unwrap() * Rat::from_integer(scale));
        }
    }
}
