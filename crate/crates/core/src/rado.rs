//! Linear systems `A x = b` over the naturals.
//!
//! Homogeneous systems are partition regular iff `A` satisfies the columns
//! condition. A non-homogeneous system is partition regular iff it has a
//! constant solution in the naturals, or it satisfies the columns condition
//! and has a constant solution in the integers. Columns are numbered `1..n`.
//!
//! The columns condition is found greedily: start from any zero-sum set of
//! columns, then keep adding the first (by size, then lexicographically)
//! set of unused columns whose sum lies in the span of the used ones. If a
//! valid partition `I_0, .., I_k` exists and the used set `U` is not yet
//! everything, take the first `I_u` not inside `U`; its part outside `U`
//! has a sum in `span(U)`, so the greedy step never gets stuck.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::RatMatrix;
use crate::{Domain, Int, Rat};

pub const DEFAULT_COLUMN_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadoError {
    #[error("{n} columns exceed the column cap {cap} (raise it with --cap)")]
    ColumnCap { n: usize, cap: usize },
    #[error("coefficient of variable {0} is zero")]
    ZeroCoefficient(usize),
    #[error("the system has no variables")]
    NoColumns,
}

/// Blocks `I_0, I_1, ..` of 1-based column indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    /// Checks coverage, the zero sum of `I_0` and every span condition.
    pub fn verify(&self, a: &RatMatrix) -> Result<(), String> {
        let n = a.cols();
        let mut seen = vec![false; n];
        for &j in self.blocks.iter().flatten() {
            if j == 0 || j > n || seen[j - 1] {
                return Err(format!("column {j} is out of range or repeated"));
            }
            seen[j - 1] = true;
        }
        if seen.iter().any(|s| !s) || self.blocks.iter().any(Vec::is_empty) {
            return Err("blocks must be nonempty and cover every column".into());
        }
        let zero_based = |b: &[usize]| b.iter().map(|j| j - 1).collect::<Vec<_>>();
        if column_sum(a, &zero_based(&self.blocks[0])).iter().any(|x| !x.is_zero()) {
            return Err("the first block does not sum to zero".into());
        }
        let mut used = zero_based(&self.blocks[0]);
        for (u, block) in self.blocks.iter().enumerate().skip(1) {
            let block = zero_based(block);
            if !in_span(a, &used, &column_sum(a, &block)) {
                return Err(format!("block {u} is not in the span of the earlier columns"));
            }
            used.extend(block);
        }
        Ok(())
    }
}

fn column_sum(a: &RatMatrix, cols: &[usize]) -> Vec<Rat> {
    (0..a.rows())
        .map(|i| cols.iter().map(|&j| a.get(i, j).clone()).sum())
        .collect()
}

fn span_rank(a: &RatMatrix, cols: &[usize], extra: Option<&[Rat]>) -> usize {
    let mut columns: Vec<Vec<Rat>> = cols.iter().map(|&j| a.column(j)).collect();
    columns.extend(extra.map(<[Rat]>::to_vec));
    if columns.is_empty() {
        return 0;
    }
    RatMatrix::from_columns(a.rows(), &columns)
        .expect("columns have equal length")
        .rank()
}

fn in_span(a: &RatMatrix, cols: &[usize], v: &[Rat]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    span_rank(a, cols, None) == span_rank(a, cols, Some(v))
}

/// Subsets of `items` ordered by size, then lexicographically.
fn subsets_by_size(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1..=items.len()).flat_map(move |k| Combinations::new(items, k))
}

struct Combinations<'a> {
    items: &'a [usize],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    fn new(items: &'a [usize], k: usize) -> Self {
        Combinations {
            items,
            idx: (0..k).collect(),
            done: k > items.len(),
        }
    }
}

impl Iterator for Combinations<'_> {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.items[i]).collect();
        let (n, k) = (self.items.len(), self.idx.len());
        match (0..k).rev().find(|&i| self.idx[i] < n - k + i) {
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// An ordered partition witnessing the columns condition, if one exists.
pub fn columns_condition(
    a: &RatMatrix,
    cap: usize,
) -> Result<Option<OrderedPartition>, RadoError> {
    let n = a.cols();
    if n == 0 {
        return Err(RadoError::NoColumns);
    }
    if n > cap {
        return Err(RadoError::ColumnCap { n, cap });
    }
    let all: Vec<usize> = (0..n).collect();
    let Some(first) = subsets_by_size(&all)
        .find(|s| column_sum(a, s).iter().all(Zero::is_zero))
    else {
        return Ok(None);
    };
    let mut used = first.clone();
    let mut blocks = vec![first];
    while used.len() < n {
        let rest: Vec<usize> = all.iter().copied().filter(|j| !used.contains(j)).collect();
        let base_rank = span_rank(a, &used, None);
        let next = subsets_by_size(&rest).find(|s| {
            let v = column_sum(a, s);
            v.iter().all(Zero::is_zero) || span_rank(a, &used, Some(&v)) == base_rank
        });
        match next {
            Some(block) => {
                used.extend(&block);
                blocks.push(block);
            }
            None => return Ok(None),
        }
    }
    let partition = OrderedPartition {
        blocks: blocks
            .into_iter()
            .map(|b| b.into_iter().map(|j| j + 1).collect())
            .collect(),
    };
    debug_assert!(partition.verify(a).is_ok());
    Ok(Some(partition))
}

/// Common value `a` with `A (a, .., a) = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantWitness {
    /// Every `a` works: all row sums and right-hand sides vanish.
    All,
    Unique(#[serde(with = "crate::model::serde_num::int")] Int),
}

pub fn constant_solution_linear(a: &RatMatrix, b: &[Rat], domain: Domain) -> Option<ConstantWitness> {
    let mut value: Option<Rat> = None;
    for i in 0..a.rows() {
        let rowsum: Rat = a.row(i).iter().sum();
        if rowsum.is_zero() {
            if !b[i].is_zero() {
                return None;
            }
            continue;
        }
        let v = &b[i] / rowsum;
        match &value {
            Some(w) if *w != v => return None,
            _ => value = Some(v),
        }
    }
    match value {
        None => Some(ConstantWitness::All),
        Some(v) if v.is_integer() && domain.contains(&v.to_integer()) => {
            Some(ConstantWitness::Unique(v.to_integer()))
        }
        Some(_) => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinearStatus {
    #[serde(rename = "PR_CONSTANT")]
    PrConstant,
    #[serde(rename = "PR_COLUMNS")]
    PrColumns,
    #[serde(rename = "NOT_PR")]
    NotPr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearVerdict {
    pub status: LinearStatus,
    pub witness: Option<ConstantWitness>,
    pub partition: Option<OrderedPartition>,
    /// Zero-sum set `J` (1-based) for single equations.
    pub zero_sum_set: Option<Vec<usize>>,
    pub notes: Vec<String>,
}

impl LinearVerdict {
    fn constant(w: ConstantWitness) -> Self {
        LinearVerdict {
            status: LinearStatus::PrConstant,
            witness: Some(w),
            partition: None,
            zero_sum_set: None,
            notes: vec![],
        }
    }

    fn not_pr(note: &str) -> Self {
        LinearVerdict {
            status: LinearStatus::NotPr,
            witness: None,
            partition: None,
            zero_sum_set: None,
            notes: vec![note.to_string()],
        }
    }
}

/// Single equation `sum_j c_j x_j = b` with nonzero coefficients.
pub fn rado_single(c: &[Rat], b: &Rat) -> Result<LinearVerdict, RadoError> {
    if c.is_empty() {
        return Err(RadoError::NoColumns);
    }
    if let Some(j) = c.iter().position(Zero::is_zero) {
        return Err(RadoError::ZeroCoefficient(j + 1));
    }
    let a = RatMatrix::from_rows(vec![c.to_vec()]).expect("one row");
    let bv = [b.clone()];
    if let Some(w) = constant_solution_linear(&a, &bv, Domain::Naturals) {
        return Ok(LinearVerdict::constant(w));
    }
    let idx: Vec<usize> = (0..c.len()).collect();
    let j = subsets_by_size(&idx).find(|s| s.iter().map(|&j| &c[j]).sum::<Rat>().is_zero());
    let integer_constant = constant_solution_linear(&a, &bv, Domain::Integers);
    match (j, integer_constant) {
        (Some(j), Some(w)) => Ok(LinearVerdict {
            status: LinearStatus::PrColumns,
            witness: Some(w),
            partition: None,
            zero_sum_set: Some(j.into_iter().map(|x| x + 1).collect()),
            notes: vec![],
        }),
        (None, _) => Ok(LinearVerdict::not_pr("no nonempty set of coefficients sums to zero")),
        (Some(_), None) => Ok(LinearVerdict::not_pr("no constant solution in the integers")),
    }
}

/// Partition regularity of `A x = b` over `domain`. Over the integers a
/// linear system is partition regular exactly when it has an integer
/// constant solution.
pub fn decide_linear(
    a: &RatMatrix,
    b: &[Rat],
    domain: Domain,
    cap: usize,
) -> Result<LinearVerdict, RadoError> {
    if let Some(w) = constant_solution_linear(a, b, domain) {
        return Ok(LinearVerdict::constant(w));
    }
    if domain == Domain::Integers {
        return Ok(LinearVerdict::not_pr("no constant solution in the integers"));
    }
    let integer_constant = constant_solution_linear(a, b, Domain::Integers);
    if integer_constant.is_none() {
        // The columns condition alone is not enough without it.
        return Ok(LinearVerdict::not_pr("no constant solution in the integers"));
    }
    match columns_condition(a, cap)? {
        Some(p) => Ok(LinearVerdict {
            status: LinearStatus::PrColumns,
            witness: integer_constant,
            partition: Some(p),
            zero_sum_set: None,
            notes: vec![],
        }),
        None => Ok(LinearVerdict::not_pr("the columns condition fails")),
    }
}

/// Row sums as a quick sanity helper for witnesses: `A (a, .., a) - b`.
pub fn constant_residual(a: &RatMatrix, b: &[Rat], w: &Int) -> Vec<Rat> {
    let w = Rat::from_integer(w.clone());
    (0..a.rows())
        .map(|i| a.row(i).iter().sum::<Rat>() * &w - &b[i])
        .collect()
}

/// Re-checks a verdict against the system it was computed for.
pub fn verify_linear_verdict(
    v: &LinearVerdict,
    a: &RatMatrix,
    b: &[Rat],
) -> Result<(), String> {
    match &v.witness {
        Some(ConstantWitness::Unique(w)) => {
            if constant_residual(a, b, w).iter().any(|x| !x.is_zero()) {
                return Err(format!("{w} is not a constant solution"));
            }
        }
        Some(ConstantWitness::All) => {
            let zero = Int::zero();
            let one = Int::one();
            if constant_residual(a, b, &zero).iter().any(|x| !x.is_zero())
                || constant_residual(a, b, &one).iter().any(|x| !x.is_zero())
            {
                return Err("not every constant is a solution".into());
            }
        }
        None => {}
    }
    if let Some(p) = &v.partition {
        p.verify(a)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_int_rows(rows).unwrap()
    }

    fn blocks(p: &OrderedPartition) -> Vec<Vec<usize>> {
        p.blocks.clone()
    }

    #[test]
    fn schur_columns() {
        let p = columns_condition(&m(&[vec![1, 1, -1]]), 12).unwrap().unwrap();
        assert_eq!(blocks(&p), vec![vec![1, 3], vec![2]]);
    }

    #[test]
    fn no_zero_subset() {
        assert_eq!(columns_condition(&m(&[vec![2, -1]]), 12).unwrap(), None);
    }

    #[test]
    fn equal_columns_system() {
        let p = columns_condition(&m(&[vec![1, -1], vec![-1, 1]]), 12).unwrap().unwrap();
        assert_eq!(blocks(&p), vec![vec![1, 2]]);
    }

    #[test]
    fn cap_enforced() {
        let a = m(&[vec![1; 13]]);
        assert_eq!(
            columns_condition(&a, 12),
            Err(RadoError::ColumnCap { n: 13, cap: 12 })
        );
    }

    #[test]
    fn single_equation_examples() {
        let v = rado_single(&[rat(1), rat(1), rat(-1)], &rat(0)).unwrap();
        assert_eq!(v.status, LinearStatus::PrColumns);
        assert_eq!(v.zero_sum_set, Some(vec![1, 3]));
        let v = rado_single(&[rat(2), rat(-1)], &rat(3)).unwrap();
        assert_eq!(v.status, LinearStatus::PrConstant);
        assert_eq!(v.witness, Some(ConstantWitness::Unique(Int::from(3))));
        let v = rado_single(&[rat(2), rat(-1)], &rat(0)).unwrap();
        assert_eq!(v.status, LinearStatus::NotPr);
        assert_eq!(rado_single(&[rat(1), rat(0)], &rat(0)), Err(RadoError::ZeroCoefficient(2)));
    }

    #[test]
    fn constant_solutions() {
        assert_eq!(
            constant_solution_linear(&m(&[vec![2, -1]]), &[rat(5)], Domain::Naturals),
            Some(ConstantWitness::Unique(Int::from(5)))
        );
        assert_eq!(constant_solution_linear(&m(&[vec![1, 1]]), &[rat(1)], Domain::Naturals), None);
        assert_eq!(
            constant_solution_linear(&m(&[vec![1, -1]]), &[rat(0)], Domain::Naturals),
            Some(ConstantWitness::All)
        );
        // a = 0 is an integer witness but not a natural one.
        assert_eq!(constant_solution_linear(&m(&[vec![1, 1]]), &[rat(0)], Domain::Naturals), None);
    }

    #[test]
    fn decide_examples() {
        let v = decide_linear(&m(&[vec![1, 1, -1]]), &[rat(0)], Domain::Naturals, 12).unwrap();
        assert_eq!(v.status, LinearStatus::PrColumns);
        verify_linear_verdict(&v, &m(&[vec![1, 1, -1]]), &[rat(0)]).unwrap();
        let v = decide_linear(&m(&[vec![1, 1]]), &[rat(1)], Domain::Naturals, 12).unwrap();
        assert_eq!(v.status, LinearStatus::NotPr);
        let v = decide_linear(&m(&[vec![1, -1]]), &[rat(0)], Domain::Naturals, 12).unwrap();
        assert_eq!(v.status, LinearStatus::PrConstant);
        assert_eq!(v.witness, Some(ConstantWitness::All));
    }

    #[test]
    fn nonhomogeneous_needs_integer_constant() {
        // x + y - z = 1 has constant solution a = 1.
        let v = decide_linear(&m(&[vec![1, 1, -1]]), &[rat(1)], Domain::Naturals, 12).unwrap();
        assert_eq!(v.status, LinearStatus::PrConstant);
        // x + y - 2z = 1: columns condition holds, but 0 = 1 has no constant solution.
        let v = decide_linear(&m(&[vec![1, 1, -2]]), &[rat(1)], Domain::Naturals, 12).unwrap();
        assert_eq!(v.status, LinearStatus::NotPr);
        // x + y - z = -1: a = -1 is an integer constant, and the columns condition holds.
        let v = decide_linear(&m(&[vec![1, 1, -1]]), &[rat(-1)], Domain::Naturals, 12).unwrap();
        assert_eq!(v.status, LinearStatus::PrColumns);
    }

    #[test]
    fn tampered_partition_rejected() {
        let a = m(&[vec![1, 1, -1]]);
        let bad = OrderedPartition {
            blocks: vec![vec![1, 2], vec![3]],
        };
        assert!(bad.verify(&a).is_err());
    }

    /// Every ordered set partition, by brute force.
    fn ordered_partition_exists(a: &RatMatrix) -> bool {
        let n = a.cols();
        // Assign each column a block label 0..n; labels must be used
        // contiguously from 0 for the blocks to be nonempty.
        let mut labels = vec![0usize; n];
        loop {
            let k = labels.iter().max().unwrap() + 1;
            let contiguous = (0..k).all(|b| labels.contains(&b));
            if contiguous {
                let p = OrderedPartition {
                    blocks: (0..k)
                        .map(|b| (0..n).filter(|&j| labels[j] == b).map(|j| j + 1).collect())
                        .collect(),
                };
                if p.verify(a).is_ok() {
                    return true;
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                labels[i] += 1;
                if labels[i] < n {
                    break;
                }
                labels[i] = 0;
                i += 1;
            }
        }
    }

    fn subset_sum_oracle(c: &[i64]) -> bool {
        (1u32..(1 << c.len())).any(|mask| {
            (0..c.len()).filter(|j| mask >> j & 1 == 1).map(|j| c[j]).sum::<i64>() == 0
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn greedy_matches_exhaustive(
            rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..=2)
        ) {
            let a = m(&rows);
            let greedy = columns_condition(&a, 12).unwrap();
            if let Some(p) = &greedy {
                prop_assert!(p.verify(&a).is_ok());
            }
            prop_assert_eq!(greedy.is_some(), ordered_partition_exists(&a));
        }

        #[test]
        fn single_equation_agrees_with_subset_sums(
            c in prop::collection::vec(prop::sample::select(
                vec![-9i64, -8, -7, -6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6, 7, 8, 9]), 1..=6)
        ) {
            let a = m(&[c.clone()]);
            let v = decide_linear(&a, &[rat(0)], Domain::Naturals, 12).unwrap();
            let single = rado_single(&c.iter().map(|&x| rat(x)).collect::<Vec<_>>(), &rat(0)).unwrap();
            let pr = v.status != LinearStatus::NotPr;
            prop_assert_eq!(pr, subset_sum_oracle(&c));
            prop_assert_eq!(pr, single.status != LinearStatus::NotPr);
            verify_linear_verdict(&v, &a, &[rat(0)]).unwrap();
        }
    }
}
