use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::FxHashSet;

use super::field::Field;

/// A sparse matrix stored row-major; every stored entry is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F: Field> {
    rows: usize,
    cols: usize,
    /// Per row: `(column, value)` sorted by column.
    data: Vec<Vec<(usize, F)>>,
}

/// Below this many cells, rank is computed on a dense copy.
const DENSE_CELLS: usize = 64 * 64;

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut data: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            data[r].push((c, v));
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, F)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => lv.add_assign(&v),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        SparseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, F)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    /// Iterates stored entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut triplets = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &rhs.data[*k] {
                    triplets.push((r, *c, a.mul(b)));
                }
            }
        }
        SparseMatrix::from_triplets(self.rows, rhs.cols, triplets)
    }

    /// Restriction to the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix<F> {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| {
                self.data[r].iter().filter(|(c, _)| col_pos[*c] != usize::MAX).map(|(c, v)| (col_pos[*c], v.clone())).collect()
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 || self.is_zero() {
            return 0;
        }
        if self.rows * self.cols <= DENSE_CELLS {
            dense_rank(self)
        } else {
            sparse_rank(self.data.clone(), self.cols)
        }
    }
}

fn dense_rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    let mut a = vec![vec![F::zero(); m.cols]; m.rows];
    for (r, c, v) in m.entries() {
        a[r][c] = v.clone();
    }
    let mut rank = 0;
    for col in 0..m.cols {
        let pivot = (rank..m.rows).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| !a[r][col].is_plus_minus_one());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for r in 0..m.rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].mul(&inv);
                for c in col..m.cols {
                    if !a[rank][c].is_zero() {
                        let t = factor.mul(&a[rank][c]);
                        a[r][c] = a[r][c].sub(&t);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dst - factor * src` on sorted sparse rows.
pub(crate) fn axpy_row<F: Field>(dst: &[(usize, F)], factor: &F, src: &[(usize, F)]) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            out.push((src[j].0, factor.mul(&src[j].1).neg()));
            j += 1;
        } else {
            let v = dst[i].1.sub(&factor.mul(&src[j].1));
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Markowitz-flavoured sparse elimination: the shortest live row is taken
/// each step and its pivot column is chosen to minimize fill, preferring
/// unit entries.
fn sparse_rank<F: Field>(mut rows: Vec<Vec<(usize, F)>>, cols: usize) -> usize {
    let mut col_rows: Vec<FxHashSet<usize>> = vec![FxHashSet::default(); cols];
    let mut heap = BinaryHeap::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
        if !row.is_empty() {
            heap.push(Reverse((row.len(), r)));
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut rank = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        if !alive[r] || rows[r].len() != len {
            continue;
        }
        if rows[r].is_empty() {
            alive[r] = false;
            continue;
        }
        let (pc, pv) = rows[r]
            .iter()
            .min_by_key(|(c, v)| (col_rows[*c].len(), !v.is_plus_minus_one()))
            .map(|(c, v)| (*c, v.clone()))
            .expect("nonempty row");
        let inv = pv.inv().expect("nonzero pivot");
        let pivot_row = std::mem::take(&mut rows[r]);
        alive[r] = false;
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&r);
        }
        let others: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r2 in others {
            let factor = rows[r2].iter().find(|e| e.0 == pc).map(|e| e.1.mul(&inv)).expect("column index consistent");
            let updated = axpy_row(&rows[r2], &factor, &pivot_row);
            for (c, _) in &rows[r2] {
                col_rows[*c].remove(&r2);
            }
            for (c, _) in &updated {
                col_rows[*c].insert(r2);
            }
            rows[r2] = updated;
            heap.push(Reverse((rows[r2].len(), r2)));
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Rational, F2};

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(2, 2, vec![(0, 0, q(1)), (0, 0, q(-1)), (1, 1, q(2))]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), q(2));
    }

    #[test]
    fn rank_small_examples() {
        let m = SparseMatrix::from_triplets(3, 3, vec![(0, 0, q(1)), (1, 1, q(1)), (2, 0, q(1)), (2, 1, q(1))]);
        assert_eq!(m.rank(), 2);
        let f = SparseMatrix::from_triplets(2, 2, vec![(0, 0, F2(true)), (0, 1, F2(true)), (1, 0, F2(true)), (1, 1, F2(true))]);
        assert_eq!(f.rank(), 1);
        let g = SparseMatrix::from_triplets(2, 2, vec![(0, 0, q(1)), (0, 1, q(1)), (1, 0, q(1)), (1, 1, q(-1))]);
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn sparse_and_dense_rank_agree() {
        // 100x100 banded matrix with a rank defect in the middle.
        let n = 100;
        let mut t = Vec::new();
        for i in 0..n {
            if i != 50 {
                t.push((i, i, q(1)));
            }
            if i + 1 < n {
                t.push((i, i + 1, q(-1)));
            }
        }
        let m = SparseMatrix::from_triplets(n, n, t);
        assert_eq!(sparse_rank(m.data.clone(), n), dense_rank(&m));
    }
}
