//! Exact sparse Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Outcome of adding an equation to a [`SparseSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    NewPivot,
    Redundant,
    Inconsistent,
}

/// An incrementally built linear system `A x = b` kept in row echelon form.
///
/// Each stored row has its pivot as its smallest column, so a new row is
/// reduced by sweeping its columns in increasing order.
#[derive(Debug, Clone, Default)]
pub struct SparseSystem {
    ncols: usize,
    pivots: BTreeMap<usize, (SparseRow, Rational)>,
    inconsistent: bool,
}

fn axpy(row: &mut SparseRow, rhs: &mut Rational, f: &Rational, other: &SparseRow, orhs: &Rational) {
    for (&c, v) in other {
        let e = row.entry(c).or_insert_with(Rational::zero);
        *e -= f * v;
        if e.is_zero() {
            row.remove(&c);
        }
    }
    *rhs -= f * orhs;
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, pivots: BTreeMap::new(), inconsistent: false }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    fn reduce(&self, mut row: SparseRow, mut rhs: Rational) -> (SparseRow, Rational) {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).map(|(&c, _)| c).find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let f = row[&c].clone();
            let (prow, prhs) = &self.pivots[&c];
            axpy(&mut row, &mut rhs, &f, prow, prhs);
            cursor = c + 1;
        }
        (row, rhs)
    }

    pub fn add_equation(&mut self, row: SparseRow, rhs: Rational) -> RowStatus {
        let (row, rhs) = self.reduce(row, rhs);
        match row.keys().next().copied() {
            None if rhs.is_zero() => RowStatus::Redundant,
            None => {
                self.inconsistent = true;
                RowStatus::Inconsistent
            }
            Some(c) => {
                let p = row[&c].clone();
                let row: SparseRow = row.into_iter().map(|(k, v)| (k, v / &p)).collect();
                self.pivots.insert(c, (row, rhs / p));
                RowStatus::NewPivot
            }
        }
    }

    /// Whether `row` lies in the row space.
    pub fn in_row_space(&self, row: SparseRow) -> bool {
        self.reduce(row, Rational::zero()).0.is_empty()
    }

    /// Columns without a pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Back substitution with free variables set to zero.
    pub fn particular_solution(&self) -> Option<Vec<Rational>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Rational::zero(); self.ncols];
        for (&c, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (&k, a) in row.range(c + 1..) {
                v -= a * &x[k];
            }
            x[c] = v;
        }
        Some(x)
    }

    /// The solution when it exists and is unique.
    pub fn unique_solution(&self) -> Option<Vec<Rational>> {
        if self.rank() != self.ncols {
            return None;
        }
        self.particular_solution()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> usize {
    let mut s = SparseSystem::new(ncols);
    for r in rows {
        s.add_equation(r, Rational::zero());
    }
    s.rank()
}

/// Solves `M x = b` for a square dense matrix; `None` if singular.
pub fn solve_dense(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut s = SparseSystem::new(n);
    for (row, rhs) in m.iter().zip(b) {
        let r: SparseRow = row.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        s.add_equation(r, rhs.clone());
    }
    s.unique_solution()
}

/// Inverse of a square dense matrix; `None` if singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect();
        cols.push(solve_dense(m, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64) -> Rational {
        Rational::from_integer(BigInt::from(a))
    }

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, q(v))).collect()
    }

    #[test]
    fn unique_solve() {
        let mut s = SparseSystem::new(3);
        s.add_equation(row(&[(0, 1), (1, 1), (2, 1)]), q(6));
        s.add_equation(row(&[(1, 2), (2, 5)]), q(-4));
        assert_eq!(s.add_equation(row(&[(0, 2), (1, 5), (2, -1)]), q(27)), RowStatus::NewPivot);
        assert_eq!(s.unique_solution().unwrap(), vec![q(5), q(3), q(-2)]);
        assert_eq!(s.add_equation(row(&[(0, 2), (1, 2), (2, 2)]), q(12)), RowStatus::Redundant);
        assert_eq!(s.add_equation(row(&[(0, 1), (1, 1), (2, 1)]), q(7)), RowStatus::Inconsistent);
        assert!(s.unique_solution().is_none());
    }

    #[test]
    fn rank_and_inverse() {
        assert_eq!(rank(vec![row(&[(0, 1), (1, 2)]), row(&[(0, 2), (1, 4)]), row(&[(2, 1)])], 3), 2);
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(invert(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn underdetermined() {
        let mut s = SparseSystem::new(3);
        s.add_equation(row(&[(0, 1), (2, 1)]), q(1));
        assert_eq!(s.free_columns(), vec![1, 2]);
        assert!(s.unique_solution().is_none());
        assert_eq!(s.particular_solution().unwrap(), vec![q(1), q(0), q(0)]);
        assert!(s.in_row_space(row(&[(0, 3), (2, 3)])));
        assert!(!s.in_row_space(row(&[(1, 1)])));
    }
}
