//! Sparse integer chain complexes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::sset::SimplicialSet;
use crate::error::{Error, Result};

/// Column-major sparse integer matrix; each column sorted by row with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// Appends a column given by unsorted, possibly repeated entries.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, i64)>) {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (r, v) in entries {
            debug_assert!(r < self.rows);
            *acc.entry(r).or_insert(0) += v;
        }
        self.cols.push(acc.into_iter().filter(|(_, v)| *v != 0).collect());
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.rows, 0);
        for col in &other.cols {
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for &(k, b) in col {
                for &(r, a) in &self.cols[k] {
                    *acc.entry(r).or_insert(0) += a as i128 * b as i128;
                }
            }
            out.cols.push(
                acc.into_iter()
                    .filter(|(_, v)| *v != 0)
                    .map(|(r, v)| (r, i64::try_from(v).expect("chain matrix entries stay small")))
                    .collect(),
            );
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols.len()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                d[r][c] = v;
            }
        }
        d
    }
}

/// How a simplicial set is turned into chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainMode {
    Unreduced,
    /// Chains relative to the basepoint.
    Pointed,
    /// Unreduced chains augmented by `ℤ` in degree −1.
    Augmented,
}

/// `dims[i]` is the rank in degree `offset + i`; `boundaries[i]` maps that
/// degree to the one below (the lowest boundary is the zero map).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub offset: isize,
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn degree(&self, i: usize) -> isize {
        self.offset + i as isize
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.boundaries.len() {
            if !self.boundaries[i - 1].mul(&self.boundaries[i]).is_zero() {
                return Err(Error::Invalid(alloc::format!(
                    "boundary squares to a nonzero map in degree {}",
                    self.degree(i)
                )));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if self.degree(i).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Normalized chains of a simplicial set.
    pub fn from_simplicial(x: &SimplicialSet, mode: ChainMode) -> Result<ChainComplex> {
        let base = match mode {
            ChainMode::Pointed => Some(x.basepoint().ok_or(Error::MissingBasepoint)?),
            _ => None,
        };
        let top = x.dim().map_or(0, |d| d + 1);
        let mut index: Vec<Vec<Option<usize>>> = Vec::with_capacity(top);
        let mut dims = Vec::with_capacity(top + 1);
        for k in 0..top {
            let mut next = 0;
            let ids = (0..x.count(k))
                .map(|id| {
                    if k == 0 && Some(id) == base {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect();
            index.push(ids);
            dims.push(next);
        }
        let mut boundaries = Vec::with_capacity(top + 1);
        let augmented = mode == ChainMode::Augmented;
        if augmented {
            dims.insert(0, 1);
            boundaries.push(SparseMatrix::zero(0, 1));
        }
        if augmented && top > 0 {
            let mut eps = SparseMatrix::zero(1, 0);
            for _ in 0..x.count(0) {
                eps.push_column([(0, 1)]);
            }
            boundaries.push(eps);
        } else if top > 0 {
            boundaries.push(SparseMatrix::zero(0, dims[0]));
        }
        for k in 1..top {
            let mut m = SparseMatrix::zero(dims[if augmented { k } else { k - 1 }], 0);
            for c in x.cells(k) {
                if index[k][c.id].is_none() {
                    continue;
                }
                let entries = x.faces_of(c).iter().enumerate().filter_map(|(i, f)| {
                    if f.is_degenerate() {
                        return None;
                    }
                    let row = index[f.cell.dim][f.cell.id]?;
                    Some((row, if i % 2 == 0 { 1 } else { -1 }))
                });
                m.push_column(entries);
            }
            boundaries.push(m);
        }
        Ok(ChainComplex { offset: if augmented { -1 } else { 0 }, dims, boundaries })
    }
}
