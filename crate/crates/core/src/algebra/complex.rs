//! Bigraded cochain complexes over an exact field.
//!
//! Generators are grouped by homological degree `i`; each carries a second
//! grading `q` that the differential preserves. `d_i` maps degree `i` to
//! degree `i + 1`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::field::Field;
use super::graded::BigradedDims;
use super::reduce::Reducer;
use super::sparse::SparseMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential d_{degree} is {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    DimensionMismatch { degree: i32, rows: usize, cols: usize, exp_rows: usize, exp_cols: usize },
    #[error("differential d_{degree} does not preserve q at ({row},{col})")]
    GradingViolation { degree: i32, row: usize, col: usize },
    #[error("entry ({row},{col}) of d_{degree} is not a unit")]
    NotAUnit { degree: i32, row: usize, col: usize },
    #[error("d squared is nonzero starting at degree {degree}")]
    NotAComplex { degree: i32 },
}

/// `diffs[i]` has one row per generator in degree `i + 1` and one column
/// per generator in degree `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChainComplex<F: Field> {
    gens: BTreeMap<i32, Vec<i32>>,
    diffs: BTreeMap<i32, SparseMatrix<F>>,
}

impl<F: Field> Default for GradedChainComplex<F> {
    fn default() -> Self {
        Self { gens: BTreeMap::new(), diffs: BTreeMap::new() }
    }
}

impl<F: Field> GradedChainComplex<F> {
    /// `gens[i]` lists the q-grading of each generator in degree `i`.
    pub fn new(gens: BTreeMap<i32, Vec<i32>>, diffs: BTreeMap<i32, SparseMatrix<F>>) -> Result<Self, ComplexError> {
        let c = Self { gens, diffs };
        c.validate()?;
        Ok(c)
    }

    /// A complex with zero differential.
    pub fn from_dims(dims: &BigradedDims) -> Self {
        let mut gens: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
        for (i, q, d) in dims.iter() {
            gens.entry(i).or_default().extend(std::iter::repeat(q).take(d as usize));
        }
        Self { gens, diffs: BTreeMap::new() }
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for (&i, m) in &self.diffs {
            let (exp_rows, exp_cols) = (self.count(i + 1), self.count(i));
            if m.rows() != exp_rows || m.cols() != exp_cols {
                return Err(ComplexError::DimensionMismatch { degree: i, rows: m.rows(), cols: m.cols(), exp_rows, exp_cols });
            }
            for (row, col, _) in m.entries() {
                if self.gens[&(i + 1)][row] != self.gens[&i][col] {
                    return Err(ComplexError::GradingViolation { degree: i, row, col });
                }
            }
        }
        Ok(())
    }

    fn count(&self, i: i32) -> usize {
        self.gens.get(&i).map_or(0, Vec::len)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.gens.keys().copied()
    }

    pub fn generators(&self, i: i32) -> &[i32] {
        self.gens.get(&i).map_or(&[], Vec::as_slice)
    }

    pub fn differential(&self, i: i32) -> SparseMatrix<F> {
        self.diffs.get(&i).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.count(i + 1), self.count(i)))
    }

    pub fn total_rank(&self) -> usize {
        self.gens.values().map(Vec::len).sum()
    }

    pub fn rank_dims(&self) -> BigradedDims {
        let mut out = BigradedDims::new();
        for (&i, qs) in &self.gens {
            for &q in qs {
                out.add(i, q, 1);
            }
        }
        out
    }

    /// Checks `d_{i+1} d_i = 0` for every `i`.
    pub fn check_d_squared(&self) -> Result<(), ComplexError> {
        for (&i, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(ComplexError::NotAComplex { degree: i });
                }
            }
        }
        Ok(())
    }

    fn q_blocks(&self, i: i32) -> BTreeMap<i32, Vec<usize>> {
        let mut blocks: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (k, &q) in self.generators(i).iter().enumerate() {
            blocks.entry(q).or_default().push(k);
        }
        blocks
    }

    /// `rank(d_i)` restricted to each q-block.
    fn block_ranks(&self, i: i32) -> BTreeMap<i32, usize> {
        let Some(d) = self.diffs.get(&i) else { return BTreeMap::new() };
        let src = self.q_blocks(i);
        let tgt = self.q_blocks(i + 1);
        src.iter()
            .filter_map(|(q, cols)| {
                let rows = tgt.get(q)?;
                Some((*q, d.submatrix(rows, cols).rank()))
            })
            .collect()
    }

    /// `dim ker d_i - rank d_{i-1}` per `(i, q)`, computed blockwise.
    pub fn homology_dims(&self) -> BigradedDims {
        let mut out = BigradedDims::new();
        let ranks: BTreeMap<i32, BTreeMap<i32, usize>> = self.gens.keys().map(|&i| (i, self.block_ranks(i))).collect();
        for &i in self.gens.keys() {
            for (q, members) in self.q_blocks(i) {
                let out_rank = ranks[&i].get(&q).copied().unwrap_or(0);
                let in_rank = ranks.get(&(i - 1)).and_then(|r| r.get(&q)).copied().unwrap_or(0);
                out.add(i, q, (members.len() - out_rank - in_rank) as u64);
            }
        }
        out
    }

    /// `sum_i (-1)^i rank(i, q)` per q.
    pub fn euler(&self) -> BTreeMap<i32, i64> {
        let mut out: BTreeMap<i32, i64> = BTreeMap::new();
        for (&i, qs) in &self.gens {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            for &q in qs {
                *out.entry(q).or_insert(0) += sign;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn to_reducer(&self) -> (Reducer<F>, Vec<(i32, usize)>) {
        let mut index: BTreeMap<(i32, usize), usize> = BTreeMap::new();
        let mut back = Vec::new();
        let mut gens = Vec::new();
        for (&i, qs) in &self.gens {
            for (k, &q) in qs.iter().enumerate() {
                index.insert((i, k), back.len());
                back.push((i, k));
                gens.push((i, q));
            }
        }
        let mut r = Reducer::new(gens);
        for (&i, d) in &self.diffs {
            for (row, col, v) in d.entries() {
                r.add_entry(index[&(i, col)], index[&(i + 1, row)], v.clone());
            }
        }
        (r, back)
    }

    fn from_reducer(r: &Reducer<F>) -> Self {
        let mut gens: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
        let mut pos = vec![usize::MAX; r.len()];
        for g in r.live_generators() {
            let list = gens.entry(r.degree(g)).or_default();
            pos[g] = list.len();
            list.push(r.weight(g));
        }
        let mut triplets: BTreeMap<i32, Vec<(usize, usize, F)>> = BTreeMap::new();
        for g in r.live_generators() {
            for (t, v) in r.out_edges(g) {
                triplets.entry(r.degree(g)).or_default().push((pos[t], pos[g], v.clone()));
            }
        }
        let diffs = triplets
            .into_iter()
            .map(|(i, t)| {
                let rows = gens.get(&(i + 1)).map_or(0, Vec::len);
                let cols = gens.get(&i).map_or(0, Vec::len);
                (i, SparseMatrix::from_triplets(rows, cols, t))
            })
            .collect();
        Self { gens, diffs }
    }

    /// Cancels the unit entry in row `row` (degree `i + 1`) and column `col`
    /// (degree `i`) of `d_i`.
    pub fn gaussian_eliminate(&self, i: i32, row: usize, col: usize) -> Result<Self, ComplexError> {
        let unit = self.diffs.get(&i).map(|d| d.get(row, col)).filter(|v| !v.is_zero());
        if unit.is_none() {
            return Err(ComplexError::NotAUnit { degree: i, row, col });
        }
        let (mut r, back) = self.to_reducer();
        let src = back.iter().position(|&p| p == (i, col)).expect("column generator");
        let tgt = back.iter().position(|&p| p == (i + 1, row)).expect("row generator");
        r.eliminate(src, tgt);
        Ok(Self::from_reducer(&r))
    }

    /// Cancels nonzero entries until the differential vanishes; the result
    /// has one generator per homology dimension.
    pub fn simplify(&self) -> Self {
        let (mut r, _) = self.to_reducer();
        r.eliminate_all_by_level(&|_, _| 0);
        Self::from_reducer(&r)
    }
}
