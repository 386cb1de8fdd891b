//! Linear equations whose unknowns range over a finitely generated
//! subgroup `G` of the nonzero rationals.
//!
//! `ax + by + cz = 0` is partition regular over `G` iff `a + b + c = 0`.
//! The unit equation `ax + by = 1` has at most `2^(8(r+2))` solutions in a
//! group of rank `r`; for pairs drawn from `G x G` (rank `2r`) this reads
//! `2^(16(r+1))`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{factor_integer, integer_rank, AlgebraError};
use crate::algebra::integer::big_pow;
use crate::polyexp::rat_pow;
use crate::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SUnitError {
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("coefficient {0} is zero")]
    ZeroCoefficient(char),
    #[error("no generators given")]
    NoGenerators,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("found {count} solutions, more than the bound {bound}")]
    BoundExceeded { count: usize, bound: Int },
}

/// Subgroup of the nonzero rationals given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(with = "crate::model::serde_num::rat_vec")]
    pub generators: Vec<Rat>,
    #[serde(with = "crate::model::serde_num::int_vec")]
    pub primes: Vec<Int>,
    /// One row per generator: `v_p(numerator) - v_p(denominator)`.
    pub exponents: Vec<Vec<i64>>,
    pub negative: Vec<bool>,
    pub rank: usize,
}

impl GroupSpec {
    /// `g = sign * prod_p p^e` for every generator.
    pub fn verify(&self) -> Result<(), String> {
        for (i, g) in self.generators.iter().enumerate() {
            let mut v = Rat::one();
            for (p, &e) in self.primes.iter().zip(&self.exponents[i]) {
                v *= rat_pow(p, &Int::from(e));
            }
            if self.negative[i] {
                v = -v;
            }
            if &v != g {
                return Err(format!("generator {g} does not recompose"));
            }
        }
        let rows: Vec<Vec<Int>> = self
            .exponents
            .iter()
            .map(|r| r.iter().map(|&e| Int::from(e)).collect())
            .collect();
        if integer_rank(&rows) != self.rank {
            return Err("rank does not match the exponent matrix".into());
        }
        Ok(())
    }
}

/// Rank of the free part of the group generated by `generators`.
pub fn subgroup_rank(generators: &[Rat], budget: u64) -> Result<GroupSpec, SUnitError> {
    if generators.is_empty() {
        return Err(SUnitError::NoGenerators);
    }
    if let Some(i) = generators.iter().position(Zero::is_zero) {
        return Err(SUnitError::ZeroGenerator(i + 1));
    }
    let mut facs = Vec::new();
    let mut primes = BTreeSet::new();
    for g in generators {
        let num = factor_integer(g.numer(), budget)?;
        let den = factor_integer(g.denom(), budget)?;
        primes.extend(num.factors.iter().chain(&den.factors).map(|(p, _)| p.clone()));
        facs.push((num, den));
    }
    let primes: Vec<Int> = primes.into_iter().collect();
    let exponents: Vec<Vec<i64>> = facs
        .iter()
        .map(|(num, den)| {
            primes
                .iter()
                .map(|p| num.valuation(p) as i64 - den.valuation(p) as i64)
                .collect()
        })
        .collect();
    let rows: Vec<Vec<Int>> = exponents
        .iter()
        .map(|r| r.iter().map(|&e| Int::from(e)).collect())
        .collect();
    Ok(GroupSpec {
        generators: generators.to_vec(),
        primes,
        negative: generators.iter().map(Signed::is_negative).collect(),
        rank: integer_rank(&rows),
        exponents,
    })
}

/// `2^(16(r+1))`.
pub fn sunit_solution_bound(r: usize) -> Int {
    big_pow(&Int::from(2), 16 * (r as u64 + 1))
}

/// `2^(8(r+2))`, the two-variable form for a group of rank `r`.
pub fn raw_unit_equation_bound(r: usize) -> Int {
    big_pow(&Int::from(2), 8 * (r as u64 + 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SUnitStatus {
    #[serde(rename = "PR_CONSTANT")]
    PrConstant,
    #[serde(rename = "NOT_PR")]
    NotPr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SUnitVerdict {
    pub status: SUnitStatus,
    #[serde(with = "crate::model::serde_num::rat")]
    pub sum: Rat,
    #[serde(with = "crate::model::serde_num::int")]
    pub bound: Int,
}

pub fn decide_sunit_3var(
    a: &Rat,
    b: &Rat,
    c: &Rat,
    group: &GroupSpec,
) -> Result<SUnitVerdict, SUnitError> {
    for (name, v) in [('a', a), ('b', b), ('c', c)] {
        if v.is_zero() {
            return Err(SUnitError::ZeroCoefficient(name));
        }
    }
    let sum = a + b + c;
    Ok(SUnitVerdict {
        status: if sum.is_zero() {
            SUnitStatus::PrConstant
        } else {
            SUnitStatus::NotPr
        },
        sum,
        bound: sunit_solution_bound(group.rank),
    })
}

/// Every `prod_i g_i^(e_i)` with `|e_i| <= e_max`, sorted and deduplicated.
pub fn enumerate_group_elements(group: &GroupSpec, e_max: u32) -> Vec<Rat> {
    let mut out = BTreeSet::new();
    out.insert(Rat::one());
    for g in &group.generators {
        let powers: Vec<Rat> = (-(e_max as i64)..=e_max as i64)
            .map(|e| rat_pow_rat(g, e))
            .collect();
        out = out
            .iter()
            .flat_map(|x| powers.iter().map(move |p| x * p))
            .collect();
    }
    out.into_iter().collect()
}

fn rat_pow_rat(g: &Rat, e: i64) -> Rat {
    let k = e.unsigned_abs() as usize;
    let p = num_traits::pow(g.clone(), k);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSolution {
    #[serde(with = "crate::model::serde_num::rat")]
    pub x: Rat,
    #[serde(with = "crate::model::serde_num::rat")]
    pub y: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitEquationCount {
    pub count: usize,
    pub solutions: Vec<UnitSolution>,
    #[serde(with = "crate::model::serde_num::int")]
    pub bound: Int,
}

/// All `(x, y)` with `x, y` in the exponent box and `ax + by = 1`.
pub fn count_unit_equation_solutions(
    a: &Rat,
    b: &Rat,
    group: &GroupSpec,
    e_max: u32,
) -> Result<UnitEquationCount, SUnitError> {
    if a.is_zero() {
        return Err(SUnitError::ZeroCoefficient('a'));
    }
    if b.is_zero() {
        return Err(SUnitError::ZeroCoefficient('b'));
    }
    let elems = enumerate_group_elements(group, e_max);
    let set: BTreeSet<&Rat> = elems.iter().collect();
    let solutions: Vec<UnitSolution> = elems
        .iter()
        .filter_map(|x| {
            let y = (Rat::one() - a * x) / b;
            set.contains(&y).then(|| UnitSolution { x: x.clone(), y })
        })
        .collect();
    debug_assert!(solutions.iter().all(|s| a * &s.x + b * &s.y == Rat::one()));
    let bound = sunit_solution_bound(group.rank);
    if Int::from(solutions.len()) > bound {
        return Err(SUnitError::BoundExceeded {
            count: solutions.len(),
            bound,
        });
    }
    Ok(UnitEquationCount {
        count: solutions.len(),
        solutions,
        bound,
    })
}

/// Solutions of `ax + by + cz = 0` in the exponent box with `x, y, z` not
/// all equal.
pub fn nonconstant_solutions_3var(
    a: &Rat,
    b: &Rat,
    c: &Rat,
    group: &GroupSpec,
    e_max: u32,
) -> Result<Vec<[Rat; 3]>, SUnitError> {
    if c.is_zero() {
        return Err(SUnitError::ZeroCoefficient('c'));
    }
    let elems = enumerate_group_elements(group, e_max);
    let set: BTreeSet<&Rat> = elems.iter().collect();
    let mut out = Vec::new();
    for x in &elems {
        for y in &elems {
            let z = -(a * x + b * y) / c;
            if set.contains(&z) && !(x == y && y == &z) {
                out.push([x.clone(), y.clone(), z]);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, DEFAULT_FACTOR_BUDGET};
    use proptest::prelude::*;

    fn group(g: &[i64]) -> GroupSpec {
        let gens: Vec<Rat> = g.iter().map(|&x| rat(x)).collect();
        subgroup_rank(&gens, DEFAULT_FACTOR_BUDGET).unwrap()
    }

    fn half() -> Rat {
        Rat::new(1.into(), 2.into())
    }

    #[test]
    fn ranks() {
        assert_eq!(group(&[2, 3]).rank, 2);
        assert_eq!(group(&[4, 8]).rank, 1);
        assert_eq!(group(&[-1]).rank, 0);
        let g = subgroup_rank(&[Rat::new(3.into(), 4.into()), rat(6)], DEFAULT_FACTOR_BUDGET).unwrap();
        assert_eq!(g.rank, 2);
        g.verify().unwrap();
        assert_eq!(subgroup_rank(&[rat(0)], 10), Err(SUnitError::ZeroGenerator(1)));
    }

    #[test]
    fn bounds() {
        assert_eq!(sunit_solution_bound(1), big_pow(&Int::from(2), 32));
        assert_eq!(sunit_solution_bound(0), big_pow(&Int::from(2), 16));
        assert_eq!(raw_unit_equation_bound(2), big_pow(&Int::from(2), 32));
    }

    #[test]
    fn three_variable_criterion() {
        let g = group(&[2]);
        let v = |a, b, c| decide_sunit_3var(&rat(a), &rat(b), &rat(c), &g).unwrap().status;
        assert_eq!(v(1, 1, -2), SUnitStatus::PrConstant);
        assert_eq!(v(1, 1, -1), SUnitStatus::NotPr);
        assert_eq!(v(2, 3, -5), SUnitStatus::PrConstant);
    }

    #[test]
    fn group_elements() {
        let e = enumerate_group_elements(&group(&[2]), 2);
        let want: Vec<Rat> = vec![
            Rat::new(1.into(), 4.into()),
            half(),
            rat(1),
            rat(2),
            rat(4),
        ];
        assert_eq!(e, want);
        assert_eq!(enumerate_group_elements(&group(&[2, 3]), 1).len(), 9);
        assert_eq!(enumerate_group_elements(&group(&[-1]), 1), vec![rat(-1), rat(1)]);
    }

    #[test]
    fn unit_equation_counts() {
        let c = count_unit_equation_solutions(&rat(1), &rat(1), &group(&[2]), 4).unwrap();
        assert_eq!(c.solutions, vec![UnitSolution { x: half(), y: half() }]);
        let c = count_unit_equation_solutions(&rat(1), &rat(1), &group(&[-1, 2]), 4).unwrap();
        assert_eq!(c.count, 3);
        let c = count_unit_equation_solutions(&rat(2), &rat(3), &group(&[1]), 0).unwrap();
        assert_eq!(c.count, 0);
    }

    #[test]
    fn no_nontrivial_progressions_in_powers_of_two() {
        for e in 0..=6 {
            let s = nonconstant_solutions_3var(&rat(1), &rat(1), &rat(-2), &group(&[2]), e).unwrap();
            assert!(s.is_empty(), "E = {e}: {s:?}");
        }
        // -1 + 3 = 2 * 1
        let s = nonconstant_solutions_3var(&rat(1), &rat(1), &rat(-2), &group(&[-1, 3]), 1).unwrap();
        assert!(s.contains(&[rat(-1), rat(3), rat(1)]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_invariant_under_unimodular_change(
            e in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3),
            (u, v) in (-2i64..=2, -2i64..=2),
        ) {
            // Generators 2^a 3^b 5^c; replace g1 by g1 * g2^u * g3^v.
            let primes = [2i64, 3, 5];
            let make = |row: &[i64]| -> Rat {
                row.iter().zip(primes).map(|(&k, p)| rat_pow_rat(&rat(p), k)).product()
            };
            let gens: Vec<Rat> = e.iter().map(|r| make(r)).collect();
            let r0 = subgroup_rank(&gens, DEFAULT_FACTOR_BUDGET).unwrap();
            r0.verify().unwrap();
            let mut changed = gens.clone();
            changed[0] = &gens[0] * rat_pow_rat(&gens[1], u) * rat_pow_rat(&gens[2], v);
            changed.swap(1, 2);
            let r1 = subgroup_rank(&changed, DEFAULT_FACTOR_BUDGET).unwrap();
            prop_assert_eq!(r0.rank, r1.rank);
        }

        #[test]
        fn counted_solutions_verify(a in -4i64..=4, b in -4i64..=4, e in 0u32..=4) {
            prop_assume!(a != 0 && b != 0);
            let g = group(&[-1, 2, 3]);
            let c = count_unit_equation_solutions(&rat(a), &rat(b), &g, e).unwrap();
            for s in &c.solutions {
                prop_assert_eq!(rat(a) * &s.x + rat(b) * &s.y, rat(1));
            }
            prop_assert!(Int::from(c.count) <= c.bound);
        }

        #[test]
        fn criterion_is_scale_invariant(
            a in -6i64..=6, b in -6i64..=6, c in -6i64..=6, ln in 1i64..=5, ld in 1i64..=5, neg in any::<bool>()
        ) {
            prop_assume!(a != 0 && b != 0 && c != 0);
            let g = group(&[2]);
            let l = Rat::new((if neg { -ln } else { ln }).into(), ld.into());
            let v1 = decide_sunit_3var(&rat(a), &rat(b), &rat(c), &g).unwrap();
            let v2 = decide_sunit_3var(&(rat(a) * &l), &(rat(b) * &l), &(rat(c) * &l), &g).unwrap();
            prop_assert_eq!(v1.status, v2.status);
        }
    }
}
