use num_traits::Zero;

use super::rational::Rational;
use super::sparse::SparseVec;

/// Row-sparse rational matrix. Entries are addressed as `(row, col)`; rows
/// never store zeros and all column indices are below `cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: Vec<SparseVec>,
    cols: usize,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows: vec![SparseVec::new(); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: (0..n).map(SparseVec::unit).collect(),
            cols: n,
        }
    }

    pub fn from_rows(rows: Vec<SparseVec>, cols: usize) -> Self {
        for r in &rows {
            if let Some(m) = r.max_index() {
                assert!(m < cols, "column index {m} out of bounds ({cols})");
            }
        }
        SparseMatrix { rows, cols }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(nrows: usize, columns: &[SparseVec]) -> Self {
        let mut m = SparseMatrix::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                m.rows[i].add_at(j, c);
            }
        }
        m
    }

    pub fn from_dense(values: &[Vec<Rational>]) -> Self {
        let cols = values.first().map_or(0, |r| r.len());
        SparseMatrix {
            rows: values.iter().map(|r| SparseVec::from_dense(r)).collect(),
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Rational) {
        assert!(j < self.cols);
        self.rows[i].set(j, c);
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &Rational) {
        assert!(j < self.cols);
        self.rows[i].add_at(j, c);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, c)| (i, j, c)))
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get_ref(j).map(|c| (i, c.clone())))
            .collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows.len());
        for (i, j, c) in self.entries() {
            t.rows[j].add_at(i, c);
        }
        t
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.dot(v)))
            .collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = SparseVec::new();
                for (k, c) in r.iter() {
                    out.axpy(c, &other.rows[k]);
                }
                out
            })
            .collect();
        SparseMatrix {
            rows,
            cols: other.cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub echelon: SparseMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form. Pivoting is deterministic: the leftmost column
/// with a nonzero entry among the remaining rows, taken from the first such row.
pub fn row_reduce(m: &SparseMatrix) -> RowReduction {
    let mut rows: Vec<SparseVec> = m.rows.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    while next < rows.len() {
        let candidate = rows[next..]
            .iter()
            .enumerate()
            .filter_map(|(k, r)| r.leading().map(|(c, _)| (c, k + next)))
            .min();
        let Some((col, at)) = candidate else { break };
        rows.swap(next, at);
        let inv = rows[next].get(col).recip();
        rows[next] = rows[next].scaled(&inv);
        let pivot_row = rows[next].clone();
        for (k, r) in rows.iter_mut().enumerate() {
            if k == next {
                continue;
            }
            let c = r.get(col);
            if !c.is_zero() {
                r.axpy(&-c, &pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    let rank = pivots.len();
    RowReduction {
        echelon: SparseMatrix {
            rows,
            cols: m.cols,
        },
        pivots,
        rank,
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    row_reduce(m).rank
}

/// Basis of `{x : m x = 0}`: one vector per free column, in column order,
/// with pivot coordinates back-solved from the reduced echelon form.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let red = row_reduce(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = SparseVec::unit(f);
            for (r, &p) in red.pivots.iter().enumerate() {
                let c = red.echelon.get(r, f);
                if !c.is_zero() {
                    v.set(p, -c);
                }
            }
            v
        })
        .collect()
}

/// Standard basis vectors completing `sub` to a basis of the ambient space:
/// the non-pivot coordinates of the echelon form of `sub`.
pub fn quotient_complement(sub: &[SparseVec], ambient_dim: usize) -> Vec<SparseVec> {
    let red = row_reduce(&SparseMatrix::from_rows(sub.to_vec(), ambient_dim));
    let mut is_pivot = vec![false; ambient_dim];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..ambient_dim)
        .filter(|&j| !is_pivot[j])
        .map(SparseVec::unit)
        .collect()
}

/// Nonzero rows of the reduced echelon form of the span of `vectors`.
pub fn echelon_basis(vectors: &[SparseVec], ambient_dim: usize) -> Vec<SparseVec> {
    let red = row_reduce(&SparseMatrix::from_rows(vectors.to_vec(), ambient_dim));
    red.echelon.rows.into_iter().take(red.rank).collect()
}

/// Any solution of `m x = b`, with free coordinates set to zero.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let mut aug = m.rows.clone();
    let n = m.cols;
    for (i, c) in b.iter() {
        aug[i].add_at(n, c);
    }
    let red = row_reduce(&SparseMatrix::from_rows(aug, n + 1));
    if red.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = SparseVec::new();
    for (r, &p) in red.pivots.iter().enumerate() {
        x.set(p, red.echelon.get(r, n));
    }
    Some(x)
}

pub fn determinant_is_nonzero(m: &SparseMatrix) -> bool {
    m.nrows() == m.ncols() && rank(m) == m.nrows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::int;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn identity_reduces_to_itself() {
        let red = row_reduce(&SparseMatrix::identity(2));
        assert_eq!(red.pivots, vec![0, 1]);
        assert_eq!(red.rank, 2);
        assert_eq!(red.echelon, SparseMatrix::identity(2));
    }

    #[test]
    fn zero_matrix_has_no_pivots() {
        let red = row_reduce(&SparseMatrix::zeros(3, 3));
        assert!(red.pivots.is_empty());
        assert_eq!(red.rank, 0);
    }

    #[test]
    fn dependent_rows() {
        let red = row_reduce(&dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(red.rank, 1);
        assert_eq!(red.pivots, vec![0]);
        assert_eq!(red.echelon.row(0), &SparseVec::from_dense(&[int(1), int(2)]));
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        let k = kernel_basis(&SparseMatrix::zeros(2, 3));
        assert_eq!(k, (0..3).map(SparseVec::unit).collect::<Vec<_>>());
        let k = kernel_basis(&dense(&[&[1, 1, 0]]));
        assert_eq!(
            k,
            vec![
                SparseVec::from_dense(&[int(-1), int(1), int(0)]),
                SparseVec::unit(2)
            ]
        );
    }

    #[test]
    fn complements() {
        assert_eq!(
            quotient_complement(&[], 2),
            vec![SparseVec::unit(0), SparseVec::unit(1)]
        );
        assert_eq!(quotient_complement(&[SparseVec::unit(0)], 2), vec![SparseVec::unit(1)]);
        let diag = SparseVec::from_dense(&[int(1), int(1)]);
        assert_eq!(quotient_complement(&[diag], 2), vec![SparseVec::unit(1)]);
    }

    #[test]
    fn solves_consistent_systems() {
        let m = dense(&[&[1, 1], &[1, -1]]);
        let x = solve(&m, &SparseVec::from_dense(&[int(3), int(1)])).unwrap();
        assert_eq!(x, SparseVec::from_dense(&[int(2), int(1)]));
        let singular = dense(&[&[1, 1], &[2, 2]]);
        assert!(solve(&singular, &SparseVec::from_dense(&[int(1), int(3)])).is_none());
    }
}
