use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::partitions::bell_numbers;
use super::PolyExpError;
use crate::algebra::{factor_integer, integer_rank};
use crate::Int;

/// Prime-exponent data of a list of characters.
#[derive(Clone, Debug)]
pub struct CharacterLattice {
    n: usize,
    primes: Vec<Int>,
    /// `valuations[i][k][p]`: exponent of `primes[p]` in `alpha_{ik}`.
    valuations: Vec<Vec<Vec<u32>>>,
}

impl CharacterLattice {
    pub fn new(characters: &[Vec<Int>], budget: u64) -> Result<Self, PolyExpError> {
        let n = characters.first().map_or(0, Vec::len);
        let mut facs = Vec::with_capacity(characters.len());
        let mut primes = BTreeSet::new();
        for chi in characters {
            if chi.len() != n {
                return Err(PolyExpError::Malformed("characters of different lengths".into()));
            }
            let row = chi
                .iter()
                .map(|a| factor_integer(a, budget))
                .collect::<Result<Vec<_>, _>>()?;
            for f in &row {
                primes.extend(f.factors.iter().map(|(p, _)| p.clone()));
            }
            facs.push(row);
        }
        let primes: Vec<Int> = primes.into_iter().collect();
        let valuations = facs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| primes.iter().map(|p| f.valuation(p)).collect())
                    .collect()
            })
            .collect();
        Ok(CharacterLattice {
            n,
            primes,
            valuations,
        })
    }

    pub fn primes(&self) -> &[Int] {
        &self.primes
    }

    /// Rows `(v_p(alpha_{ik}) - v_p(alpha_{jk}))_k`, one per prime.
    fn difference_rows(&self, i: usize, j: usize) -> Vec<Vec<Int>> {
        (0..self.primes.len())
            .map(|p| {
                (0..self.n)
                    .map(|k| {
                        Int::from(self.valuations[i][k][p]) - Int::from(self.valuations[j][k][p])
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether the only `z` with `alpha_i^z = alpha_j^z` for all `i ~ j`
    /// in a common block is `z = 0`.
    pub fn group_trivial(&self, partition: &[Vec<usize>]) -> bool {
        let mut rows = Vec::new();
        for block in partition {
            for &j in block.iter().skip(1) {
                rows.extend(self.difference_rows(block[0], j));
            }
        }
        integer_rank(&rows) == self.n
    }
}

/// Triviality of `G(P)`: the rational rank of the stacked difference rows
/// must be `n`. Sign conditions only cut out a finite-index subgroup of the
/// kernel, so they cannot make a nontrivial kernel trivial.
pub fn character_group_trivial(
    characters: &[Vec<Int>],
    partition: &[Vec<usize>],
    budget: u64,
) -> Result<bool, PolyExpError> {
    Ok(CharacterLattice::new(characters, budget)?.group_trivial(partition))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coprimality {
    pub coprime: bool,
    pub warnings: Vec<String>,
}

/// Pairwise coprimality of all character entries at distinct positions.
pub fn mutually_coprime(characters: &[Vec<Int>]) -> Coprimality {
    let entries: Vec<Int> = characters.iter().flatten().map(|a| a.abs()).collect();
    let mut coprime = true;
    'outer: for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            if !a.gcd(b).is_one() {
                coprime = false;
                break 'outer;
            }
        }
    }
    let mut warnings = Vec::new();
    if entries.iter().any(|a| a.is_one()) {
        warnings.push(
            "a character entry is a unit; coprimality does not imply a trivial character \
             group, so the rank test decides"
                .to_string(),
        );
    }
    Coprimality { coprime, warnings }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// Whether `G(P)` is trivial for every partition with a block of size >= 2.
    pub holds: bool,
    /// Number of partitions covered by the check (`Bell(m) - 1`).
    #[serde(with = "crate::model::serde_num::int")]
    pub partitions_covered: Int,
    /// A two-element block `{i, j}` (1-based) with a nontrivial group.
    pub failing_pair: Option<(usize, usize)>,
    pub coprimality: Coprimality,
    pub notes: Vec<String>,
}

/// Checks the character hypothesis on every partition with a block of size
/// at least two. Merging blocks only adds constraints, so `G(P)` shrinks as
/// `P` coarsens and it suffices to test the partitions whose only nontrivial
/// block is a pair.
pub fn check_hypothesis(
    characters: &[Vec<Int>],
    budget: u64,
) -> Result<HypothesisReport, PolyExpError> {
    let lattice = CharacterLattice::new(characters, budget)?;
    let m = characters.len();
    let mut failing_pair = None;
    'outer: for i in 0..m {
        for j in i + 1..m {
            let part = pair_partition(m, i, j);
            if !lattice.group_trivial(&part) {
                failing_pair = Some((i + 1, j + 1));
                break 'outer;
            }
        }
    }
    let mut notes = Vec::new();
    if m == 1 {
        notes.push("a single term has no partition with a block of size 2 or more".to_string());
    }
    Ok(HypothesisReport {
        holds: failing_pair.is_none(),
        partitions_covered: &bell_numbers(m)[m] - Int::one(),
        failing_pair,
        coprimality: mutually_coprime(characters),
        notes,
    })
}

fn pair_partition(m: usize, i: usize, j: usize) -> Vec<Vec<usize>> {
    let mut p = vec![vec![i, j]];
    p.extend((0..m).filter(|&k| k != i && k != j).map(|k| vec![k]));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_FACTOR_BUDGET;
    use crate::polyexp::enumerate_partitions;
    use proptest::prelude::*;

    fn chars(c: &[&[i64]]) -> Vec<Vec<Int>> {
        c.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
    }

    fn trivial(c: &[&[i64]], p: &[Vec<usize>]) -> bool {
        character_group_trivial(&chars(c), p, DEFAULT_FACTOR_BUDGET).unwrap()
    }

    #[test]
    fn example_characters_single_block() {
        assert!(trivial(&[&[2, 3], &[5, 7], &[11, 13]], &[vec![0, 1, 2]]));
    }

    #[test]
    fn identical_characters() {
        assert!(!trivial(&[&[2, 3], &[2, 3]], &[vec![0, 1]]));
    }

    #[test]
    fn powers_of_two() {
        assert!(trivial(&[&[2], &[4]], &[vec![0, 1]]));
    }

    #[test]
    fn coprimality() {
        let c = mutually_coprime(&chars(&[&[2, 3], &[5, 7], &[11, 13]]));
        assert!(c.coprime && c.warnings.is_empty());
        assert!(!mutually_coprime(&chars(&[&[2], &[4]])).coprime);
        let c = mutually_coprime(&chars(&[&[1], &[2]]));
        assert!(c.coprime);
        assert_eq!(c.warnings.len(), 1);
    }

    #[test]
    fn hypothesis_on_example() {
        let r = check_hypothesis(&chars(&[&[2, 3], &[5, 7], &[11, 13]]), DEFAULT_FACTOR_BUDGET)
            .unwrap();
        assert!(r.holds);
        assert_eq!(r.partitions_covered, Int::from(4));
        let r = check_hypothesis(&chars(&[&[2, 3], &[5, 7], &[2, 3]]), DEFAULT_FACTOR_BUDGET)
            .unwrap();
        assert_eq!(r.failing_pair, Some((1, 3)));
    }

    #[test]
    fn sign_only_difference_is_nontrivial() {
        // 2^z = (-2)^z for every even z.
        assert!(!trivial(&[&[2], &[-2]], &[vec![0, 1]]));
    }

    fn brute_trivial(c: &[Vec<Int>], p: &[Vec<usize>]) -> bool {
        let n = c[0].len();
        let mut z = vec![-6i64; n];
        loop {
            if z.iter().any(|&v| v != 0) {
                let ok = p.iter().all(|b| {
                    b.iter().all(|&j| char_pow(&c[b[0]], &z) == char_pow(&c[j], &z))
                });
                if ok {
                    return false;
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return true;
                }
                z[k] += 1;
                if z[k] <= 6 {
                    break;
                }
                z[k] = -6;
                k += 1;
            }
        }
    }

    fn char_pow(chi: &[Int], z: &[i64]) -> crate::Rat {
        chi.iter()
            .zip(z)
            .map(|(a, &e)| crate::polyexp::rat_pow(a, &Int::from(e)))
            .product()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_test_matches_brute_force(
            n in 1usize..=2,
            raw in prop::collection::vec(prop::collection::vec(
                prop::sample::select(vec![-4i64, -3, -2, -1, 1, 2, 3, 4, 6, 8, 9]), 2), 2..=3),
        ) {
            let c: Vec<Vec<Int>> = raw.iter()
                .map(|r| r[..n].iter().map(|&x| Int::from(x)).collect())
                .collect();
            for p in enumerate_partitions(c.len(), 12).unwrap() {
                let got = character_group_trivial(&c, &p, DEFAULT_FACTOR_BUDGET).unwrap();
                prop_assert_eq!(got, brute_trivial(&c, &p), "{:?} {:?}", c, p);
            }
        }

        #[test]
        fn pair_reduction_matches_full_enumeration(
            raw in prop::collection::vec(prop::collection::vec(
                prop::sample::select(vec![-3i64, -1, 1, 2, 3, 4, 5, 6, 9]), 2), 1..=5),
        ) {
            let c: Vec<Vec<Int>> = raw.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect();
            let lattice = CharacterLattice::new(&c, DEFAULT_FACTOR_BUDGET).unwrap();
            let full = enumerate_partitions(c.len(), 12).unwrap()
                .filter(|p| p.iter().any(|b| b.len() >= 2))
                .all(|p| lattice.group_trivial(&p));
            let report = check_hypothesis(&c, DEFAULT_FACTOR_BUDGET).unwrap();
            prop_assert_eq!(report.holds, full);
        }
    }
}
