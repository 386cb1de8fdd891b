use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::RamseyError;
use crate::algebra::{MultiPoly, UniPoly};
use crate::model::{EquationClass, LinearSystem};
use crate::polyexp::PolyExpEquation;
use crate::{Int, Rat};

pub const DEFAULT_ENUM_BUDGET: u64 = 50_000_000;

/// Solutions with every variable in `[1..n]`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub n: u64,
    pub vars: Vec<String>,
    pub tuples: Vec<Vec<u64>>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Distinct value sets of the tuples, sorted and deduplicated.
    pub fn supports(&self) -> Vec<Vec<u64>> {
        let set: BTreeSet<Vec<u64>> = self
            .tuples
            .iter()
            .map(|t| {
                let s: BTreeSet<u64> = t.iter().copied().collect();
                s.into_iter().collect()
            })
            .collect();
        set.into_iter().collect()
    }

    /// Re-evaluates every tuple against `class`.
    pub fn verify(&self, class: &EquationClass) -> bool {
        self.tuples.iter().all(|t| {
            let pt: Vec<Int> = t.iter().map(|&v| Int::from(v)).collect();
            is_solution(class, &pt)
        })
    }
}

fn polys_of(class: &EquationClass) -> Vec<MultiPoly> {
    match class {
        EquationClass::Linear(s) => (0..s.a.rows()).map(|i| s.row_poly(i)).collect(),
        EquationClass::TwoVar(s) => s.polys.clone(),
        EquationClass::General(s) => s.polys.clone(),
        EquationClass::PolyExp(_) => unreachable!("not polynomial"),
    }
}

/// Exact check of an integer point against every equation.
pub fn is_solution(class: &EquationClass, pt: &[Int]) -> bool {
    match class {
        EquationClass::PolyExp(e) => e.eval(pt).is_ok_and(|v| v.is_zero()),
        _ => polys_of(class)
            .iter()
            .all(|p| p.eval_int(pt).is_ok_and(|v| v.is_zero())),
    }
}

fn check_budget(n: u64, k: usize, budget: u64) -> Result<(), RamseyError> {
    let cost = Int::from(n).pow(k as u32);
    if cost > Int::from(budget) {
        return Err(RamseyError::BudgetExceeded {
            cost: cost.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Every solution of `class` with all variables in `[1..n]`.
pub fn enumerate_solutions(
    class: &EquationClass,
    n: u64,
    budget: u64,
) -> Result<SolutionSet, RamseyError> {
    let vars = class.vars();
    let mut tuples = match class {
        EquationClass::Linear(s) => match integer_rows(s) {
            Some(rows) => enumerate_linear(&rows, vars.len(), n, budget)?,
            None => enumerate_polynomial(&polys_of(class), vars.len(), n, budget)?,
        },
        EquationClass::TwoVar(_) | EquationClass::General(_) => {
            enumerate_polynomial(&polys_of(class), vars.len(), n, budget)?
        }
        EquationClass::PolyExp(e) => enumerate_polyexp(e, n, budget)?,
    };
    tuples.sort();
    tuples.dedup();
    Ok(SolutionSet { n, vars, tuples })
}

/// Keeps tuples with at least `r` distinct values.
pub fn filter_injectivity(set: &SolutionSet, r: usize) -> Result<SolutionSet, RamseyError> {
    let arity = set.vars.len();
    if r < 1 || r > arity.max(1) {
        return Err(RamseyError::InjectivityOutOfRange { r, arity });
    }
    let tuples = set
        .tuples
        .iter()
        .filter(|t| t.iter().collect::<BTreeSet<_>>().len() >= r)
        .cloned()
        .collect();
    Ok(SolutionSet {
        n: set.n,
        vars: set.vars.clone(),
        tuples,
    })
}

/// Rows `(c, b)` of `c . x = b` scaled to machine integers.
fn integer_rows(s: &LinearSystem) -> Option<Vec<(Vec<i64>, i64)>> {
    let mut out = Vec::new();
    for i in 0..s.a.rows() {
        let row = s.a.row(i);
        let l = row
            .iter()
            .chain(std::iter::once(&s.b[i]))
            .fold(Int::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        let l = Rat::from_integer(l);
        let c: Vec<i64> = row
            .iter()
            .map(|x| (x * &l).to_integer().to_i64())
            .collect::<Option<_>>()?;
        let b = (&s.b[i] * &l).to_integer().to_i64()?;
        if c.iter().any(|x| x.unsigned_abs() > 1 << 40) || b.unsigned_abs() > 1 << 40 {
            return None;
        }
        out.push((c, b));
    }
    Some(out)
}

fn enumerate_linear(
    rows: &[(Vec<i64>, i64)],
    k: usize,
    n: u64,
    budget: u64,
) -> Result<Vec<Vec<u64>>, RamseyError> {
    let rows: Vec<&(Vec<i64>, i64)> = rows.iter().filter(|(c, b)| c.iter().any(|&x| x != 0) || *b != 0).collect();
    if rows.iter().any(|(c, b)| c.iter().all(|&x| x == 0) && *b != 0) {
        return Ok(vec![]);
    }
    if k == 0 {
        return Ok(vec![vec![]]);
    }
    let pivot = rows.first().map(|(c, _)| c.iter().position(|&x| x != 0).expect("nonzero row"));
    let free: Vec<usize> = (0..k).filter(|&j| Some(j) != pivot).collect();
    check_budget(n, free.len(), budget)?;
    let mut out = Vec::new();
    let mut x = vec![1i128; k];
    let mut idx = vec![1u64; free.len()];
    loop {
        for (slot, &j) in free.iter().enumerate() {
            x[j] = idx[slot] as i128;
        }
        let ok = match pivot {
            None => true,
            Some(p) => {
                let (c, b) = rows[0];
                let rest: i128 = free.iter().map(|&j| c[j] as i128 * x[j]).sum();
                let num = *b as i128 - rest;
                let den = c[p] as i128;
                if num % den == 0 && (1..=n as i128).contains(&(num / den)) {
                    x[p] = num / den;
                    rows[1..].iter().all(|(c, b)| {
                        c.iter().zip(&x).map(|(&ci, &xi)| ci as i128 * xi).sum::<i128>() == *b as i128
                    })
                } else {
                    false
                }
            }
        };
        if ok {
            out.push(x.iter().map(|&v| v as u64).collect());
        }
        let mut s = 0;
        loop {
            if s == idx.len() {
                return Ok(out);
            }
            idx[s] += 1;
            if idx[s] <= n {
                break;
            }
            idx[s] = 1;
            s += 1;
        }
    }
}

/// Runs over `[1..n]^(k-1)` and solves for the last variable.
fn enumerate_polynomial(
    polys: &[MultiPoly],
    k: usize,
    n: u64,
    budget: u64,
) -> Result<Vec<Vec<u64>>, RamseyError> {
    let polys: Vec<&MultiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(vec![]);
    }
    if k == 0 {
        return Ok(vec![vec![]]);
    }
    check_budget(n, k - 1, budget)?;
    let last = k - 1;
    let mut out = Vec::new();
    let mut prefix = vec![1u64; last];
    loop {
        let values: Vec<Rat> = prefix
            .iter()
            .map(|&v| Rat::from_integer(Int::from(v)))
            .chain(std::iter::once(Rat::zero()))
            .collect();
        let mut candidates: Option<BTreeSet<u64>> = None;
        let mut dead = false;
        for p in &polys {
            let u = p.restrict_to(last, &values)?;
            if u.is_zero() {
                continue;
            }
            let roots = roots_in_range(&u, n)?;
            candidates = Some(match candidates {
                None => roots,
                Some(c) => c.intersection(&roots).copied().collect(),
            });
            if candidates.as_ref().is_some_and(BTreeSet::is_empty) {
                dead = true;
                break;
            }
        }
        if !dead {
            let lasts: Vec<u64> = match candidates {
                None => (1..=n).collect(),
                Some(c) => c.into_iter().collect(),
            };
            for v in lasts {
                let mut t = prefix.clone();
                t.push(v);
                out.push(t);
            }
        }
        let mut s = 0;
        loop {
            if s == prefix.len() {
                return Ok(out);
            }
            prefix[s] += 1;
            if prefix[s] <= n {
                break;
            }
            prefix[s] = 1;
            s += 1;
        }
    }
}

fn roots_in_range(u: &UniPoly, n: u64) -> Result<BTreeSet<u64>, RamseyError> {
    let to_range = |r: &Int| r.to_u64().filter(|&v| v >= 1 && v <= n);
    if u.degree() == 0 {
        return Ok(BTreeSet::new());
    }
    if u.degree() == 1 {
        let c = u.coeffs();
        let r = -&c[0] / &c[1];
        return Ok(if r.is_integer() && r.is_positive() {
            to_range(&r.to_integer()).into_iter().collect()
        } else {
            BTreeSet::new()
        });
    }
    Ok(u.integer_roots()?.iter().filter_map(to_range).collect())
}

fn enumerate_polyexp(
    e: &PolyExpEquation,
    n: u64,
    budget: u64,
) -> Result<Vec<Vec<u64>>, RamseyError> {
    let k = e.poly_vars().len();
    check_budget(n, k, budget)?;
    let mut out = Vec::new();
    let mut x = vec![1u64; k];
    loop {
        let pt: Vec<Int> = x.iter().map(|&v| Int::from(v)).collect();
        if e.eval(&pt).is_ok_and(|v| v.is_zero()) {
            out.push(x.clone());
        }
        let mut s = 0;
        loop {
            if s == k {
                return Ok(out);
            }
            x[s] += 1;
            if x[s] <= n {
                break;
            }
            x[s] = 1;
            s += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{classify, parse_equation_text};

    fn sols(src: &str, n: u64) -> Vec<Vec<u64>> {
        let c = classify(&parse_equation_text(src).unwrap()).unwrap().class;
        let s = enumerate_solutions(&c, n, DEFAULT_ENUM_BUDGET).unwrap();
        assert!(s.verify(&c));
        s.tuples
    }

    fn brute(src: &str, n: u64) -> Vec<Vec<u64>> {
        let c = classify(&parse_equation_text(src).unwrap()).unwrap().class;
        let k = c.vars().len();
        let mut out = Vec::new();
        let total = n.pow(k as u32);
        for code in 0..total {
            let t: Vec<u64> = (0..k).map(|i| code / n.pow(i as u32) % n + 1).collect();
            let pt: Vec<Int> = t.iter().map(|&v| Int::from(v)).collect();
            if is_solution(&c, &pt) {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn schur_triples() {
        assert_eq!(sols("x + y = z", 3), vec![vec![1, 1, 2], vec![1, 2, 3], vec![2, 1, 3]]);
    }

    #[test]
    fn small_examples() {
        assert_eq!(sols("x - y = 0", 2), vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(sols("2*x - y = 1", 3), vec![vec![1, 1], vec![2, 3]]);
    }

    #[test]
    fn agrees_with_brute_force() {
        for src in [
            "x + y = z",
            "2*x + 3*y = 4*z",
            "x + y = z ; x = 2*y",
            "x^2 + y^2 = z^2",
            "x^2 - y = 2",
            "x*y = 12",
            "x*y = z",
            "x - y = 1/2",
            "(x - 3)*2^x = 0",
            "2^x + 2^y = 2^z",
            "0*x = 1",
        ] {
            assert_eq!(sols(src, 9), brute(src, 9), "{src}");
        }
    }

    #[test]
    fn injectivity() {
        let c = classify(&parse_equation_text("x + y = z").unwrap()).unwrap().class;
        let s = enumerate_solutions(&c, 4, DEFAULT_ENUM_BUDGET).unwrap();
        let f2 = filter_injectivity(&s, 2).unwrap();
        assert!(f2.tuples.contains(&vec![1, 1, 2]));
        let f3 = filter_injectivity(&s, 3).unwrap();
        assert!(!f3.tuples.contains(&vec![1, 1, 2]));
        assert!(filter_injectivity(&s, 4).is_err());
        let c = classify(&parse_equation_text("x = y").unwrap()).unwrap().class;
        let s = enumerate_solutions(&c, 5, DEFAULT_ENUM_BUDGET).unwrap();
        assert!(s.tuples.contains(&vec![5, 5]));
        assert!(filter_injectivity(&s, 2).unwrap().is_empty());
    }

    #[test]
    fn budget_enforced() {
        let c = classify(&parse_equation_text("x*y*z*w = 1").unwrap()).unwrap().class;
        assert!(matches!(
            enumerate_solutions(&c, 1000, 1000),
            Err(RamseyError::BudgetExceeded { .. })
        ));
    }
}
