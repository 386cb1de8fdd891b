use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::AlgebraError;

/// Dense rectangular matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::RaggedMatrix);
        }
        let n = rows.len();
        Ok(RatMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(BigInt::from(x)))
                        .collect()
                })
                .collect(),
        )
    }

    /// Build a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Result<Self, AlgebraError> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(AlgebraError::RaggedMatrix);
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rank over the rationals.
    ///
    /// Each row is scaled to integers, then fraction-free (Bareiss)
    /// elimination runs with the pivot taken from the leftmost remaining
    /// column, topmost nonzero row.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                row.iter()
                    .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        integer_rank_in_place(&mut a, self.cols)
    }
}

/// Rank of an integer matrix given as rows; the rows are consumed.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut a = rows.to_vec();
    integer_rank_in_place(&mut a, cols)
}

fn integer_rank_in_place(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in rank + 1..rows {
            let factor = a[i][c].clone();
            for j in c..cols {
                let v = (&pivot * &a[i][j] - &factor * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            for v in a[i][..c].iter_mut() {
                *v = BigInt::zero();
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(RatMatrix::from_int_rows(&[vec![1, 0], vec![0, 1]]).unwrap().rank(), 2);
        assert_eq!(RatMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]).unwrap().rank(), 1);
        assert_eq!(RatMatrix::from_int_rows(&[vec![2], vec![3]]).unwrap().rank(), 1);
        assert_eq!(RatMatrix::from_int_rows(&[vec![0, 0]]).unwrap().rank(), 0);
        assert_eq!(RatMatrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn skipped_columns() {
        let m = RatMatrix::from_int_rows(&[
            vec![0, 2, 4, 1],
            vec![0, 1, 2, 3],
            vec![0, 3, 6, 4],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matches!(
            RatMatrix::from_int_rows(&[vec![1, 2], vec![3]]),
            Err(AlgebraError::RaggedMatrix)
        ));
    }

    #[test]
    fn rational_entries() {
        let h = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let m = RatMatrix::from_rows(vec![vec![h(1, 2), h(1, 3)], vec![h(3, 2), h(1, 1)]]).unwrap();
        assert_eq!(m.rank(), 1);
    }
}
