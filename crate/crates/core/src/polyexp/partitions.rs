use num_traits::Zero;

use super::PolyExpError;
use crate::algebra::integer::binomial;
use crate::Int;

pub const DEFAULT_PARTITION_CAP: usize = 12;

/// `B_0..=B_m` from `B_{k+1} = sum_{l<=k} binom(k, l) B_l`.
pub fn bell_numbers(m: usize) -> Vec<Int> {
    let mut b = vec![Int::from(1)];
    for k in 0..m {
        let next = (0..=k).fold(Int::zero(), |acc, l| acc + binomial(k as u64, l as u64) * &b[l]);
        b.push(next);
    }
    b
}

/// Set partitions of `{0..m-1}` in restricted-growth-string order. Each item
/// lists its blocks, ordered by smallest element.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    max_prefix: Vec<usize>,
    done: bool,
}

pub fn enumerate_partitions(m: usize, cap: usize) -> Result<SetPartitions, PolyExpError> {
    if m == 0 || m > cap {
        return Err(PolyExpError::PartitionCap { m, cap });
    }
    Ok(SetPartitions {
        rgs: vec![0; m],
        max_prefix: vec![0; m],
        done: false,
    })
}

impl Iterator for SetPartitions {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let nblocks = self.rgs.iter().max().map_or(0, |&x| x + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        // Advance: rightmost position that can still grow.
        let m = self.rgs.len();
        let mut i = m;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.max_prefix[i - 1] {
                self.rgs[i] += 1;
                self.max_prefix[i] = self.max_prefix[i - 1].max(self.rgs[i]);
                for j in i + 1..m {
                    self.rgs[j] = 0;
                    self.max_prefix[j] = self.max_prefix[i];
                }
                break;
            }
        }
        Some(blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn bell_values() {
        let b: Vec<u64> = bell_numbers(10).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(b, [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]);
    }

    #[test]
    fn counts_match_recurrence() {
        let bell = bell_numbers(10);
        for m in 1..=10 {
            let n = enumerate_partitions(m, DEFAULT_PARTITION_CAP).unwrap().count();
            assert_eq!(Int::from(n), bell[m], "m = {m}");
        }
    }

    #[test]
    fn partitions_are_distinct_and_cover() {
        let all: Vec<_> = enumerate_partitions(5, 12).unwrap().collect();
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for p in &all {
            let mut flat: Vec<usize> = p.iter().flatten().copied().collect();
            flat.sort();
            assert_eq!(flat, (0..5).collect::<Vec<_>>());
            assert!(p.iter().all(|b| !b.is_empty()));
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            enumerate_partitions(13, 12),
            Err(PolyExpError::PartitionCap { m: 13, cap: 12 })
        ));
        assert_eq!(enumerate_partitions(1, 12).unwrap().count(), 1);
    }
}
