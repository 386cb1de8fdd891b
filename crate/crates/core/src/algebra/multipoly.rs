use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, UniPoly};

pub type Exponents = Vec<u32>;

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vectors of length `vars.len()`; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, BigRational>,
}

/// Graded lexicographic order, largest term first.
pub fn grlex_desc(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        let e = vec![0; p.vars.len()];
        p.add_term(e, c);
        p
    }

    /// The polynomial consisting of the single variable `vars[index]`.
    pub fn variable(vars: Vec<String>, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(AlgebraError::ArityMismatch {
                    expected: p.vars.len(),
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(vars: &[&str], terms: &[(&[u32], i64)]) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::from_terms(
            vars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigRational::from_integer(BigInt::from(*c)))),
        )
        .expect("exponent vectors match the variable list")
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lexicographic order, leading term first.
    pub fn terms(&self) -> Vec<(&Exponents, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as i64).sum::<i64>())
            .max()
            .unwrap_or(-1)
    }

    /// Total degree counting only the variables at `indices`; -1 for zero.
    pub fn degree_in(&self, indices: &[usize]) -> i64 {
        self.terms
            .keys()
            .map(|e| indices.iter().map(|&i| e[i] as i64).sum::<i64>())
            .max()
            .unwrap_or(-1)
    }

    /// Indices of variables that occur with a positive exponent.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.degree() <= 0
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, AlgebraError> {
        if point.len() != self.vars.len() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_int(&self, point: &[BigInt]) -> Result<BigRational, AlgebraError> {
        let pt: Vec<BigRational> = point.iter().cloned().map(BigRational::from_integer).collect();
        self.eval(&pt)
    }

    /// Substitute every variable by a single variable `w`.
    pub fn diagonal(&self) -> UniPoly {
        let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: usize = e.iter().map(|&k| k as usize).sum();
            *coeffs.entry(d).or_insert_with(BigRational::zero) += c;
        }
        let deg = coeffs.keys().next_back().copied().unwrap_or(0);
        let mut dense = vec![BigRational::zero(); deg + 1];
        for (d, c) in coeffs {
            dense[d] = c;
        }
        UniPoly::new(dense)
    }

    /// Fix every variable except `keep` to the given values and return the
    /// resulting polynomial in `vars[keep]`. `values` is indexed like
    /// `vars`; the entry at `keep` is ignored.
    pub fn restrict_to(&self, keep: usize, values: &[BigRational]) -> Result<UniPoly, AlgebraError> {
        if values.len() != self.vars.len() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.vars.len(),
                got: values.len(),
            });
        }
        let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, (x, &k)) in values.iter().zip(e).enumerate() {
                if i != keep && k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            *coeffs.entry(e[keep] as usize).or_insert_with(BigRational::zero) += t;
        }
        let deg = coeffs.keys().next_back().copied().unwrap_or(0);
        let mut dense = vec![BigRational::zero(); deg + 1];
        for (d, c) in coeffs {
            dense[d] = c;
        }
        Ok(UniPoly::new(dense))
    }

    /// Re-express the polynomial over `new_vars`, which must contain every
    /// variable that occurs in `self`.
    pub fn with_vars(&self, new_vars: &[String]) -> Result<MultiPoly, AlgebraError> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match new_vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().all(|e| e[i] == 0) => map.push(None),
                None => return Err(AlgebraError::UnknownVariable(v.clone())),
            }
        }
        let mut out = MultiPoly::zero(new_vars.to_vec());
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.vars.clone(), BigRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn check_same_vars(&self, other: &MultiPoly) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial arithmetic requires identical variable lists"
        );
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// True iff `(x - y)` divides `p`, where `p` has at most the two variables
/// `x` and `y`. By the factor theorem this holds exactly when `p(w, w) = 0`.
pub fn divides_x_minus_y(p: &MultiPoly) -> Result<bool, AlgebraError> {
    if p.vars().len() > 2 {
        return Err(AlgebraError::WrongVariableSet(p.vars().to_vec()));
    }
    Ok(p.diagonal().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn xyz() -> MultiPoly {
        // x*y - z + 2
        MultiPoly::from_int_terms(
            &["x", "y", "z"],
            &[(&[1, 1, 0], 1), (&[0, 0, 1], -1), (&[0, 0, 0], 2)],
        )
    }

    #[test]
    fn eval_examples() {
        assert_eq!(xyz().eval(&[r(1), r(1), r(1)]).unwrap(), r(2));
        let zero = MultiPoly::zero(vec!["x".into()]);
        assert_eq!(zero.eval(&[r(17)]).unwrap(), r(0));
        let p = MultiPoly::from_int_terms(&["x", "y"], &[(&[2, 0], 1), (&[0, 1], -1)]);
        assert_eq!(p.eval(&[r(3), r(9)]).unwrap(), r(0));
    }

    #[test]
    fn eval_arity_mismatch() {
        assert!(matches!(
            xyz().eval(&[r(1)]),
            Err(AlgebraError::ArityMismatch { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn diagonals() {
        assert_eq!(xyz().diagonal(), UniPoly::from_ints(&[2, -1, 1]));
        let p2 = MultiPoly::from_int_terms(
            &["x", "y", "z"],
            &[(&[1, 0, 0], 1), (&[0, 1, 0], -1), (&[0, 0, 1], 2), (&[0, 0, 0], 2)],
        );
        assert_eq!(p2.diagonal(), UniPoly::from_ints(&[2, 2]));
        let d = MultiPoly::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert!(d.diagonal().is_zero());
    }

    #[test]
    fn divisibility_by_x_minus_y() {
        let sq = MultiPoly::from_int_terms(&["x", "y"], &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert!(divides_x_minus_y(&sq).unwrap());
        let perfect = MultiPoly::from_int_terms(
            &["x", "y"],
            &[(&[2, 0], 1), (&[1, 1], -2), (&[0, 2], 1)],
        );
        assert!(divides_x_minus_y(&perfect).unwrap());
        let sum = MultiPoly::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(!divides_x_minus_y(&sum).unwrap());
        assert!(divides_x_minus_y(&xyz()).is_err());
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(MultiPoly::zero(vec!["x".into()]).degree(), -1);
        assert_eq!(xyz().degree(), 2);
        assert_eq!(xyz().degree_in(&[2]), 1);
    }

    #[test]
    fn display_is_grlex() {
        assert_eq!(xyz().to_string(), "x*y - z + 2");
    }

    #[test]
    fn with_vars_reorders() {
        let p = xyz();
        let q = p
            .with_vars(&["z".into(), "w".into(), "y".into(), "x".into()])
            .unwrap();
        assert_eq!(
            q.eval(&[r(5), r(100), r(2), r(3)]).unwrap(),
            p.eval(&[r(3), r(2), r(5)]).unwrap()
        );
        assert!(p.with_vars(&["x".into(), "y".into()]).is_err());
    }

    #[test]
    fn restrict_to_one_variable() {
        let p = xyz();
        let u = p.restrict_to(2, &[r(2), r(3), r(0)]).unwrap();
        assert_eq!(u, UniPoly::from_ints(&[8, -1]));
    }
}
