//! Total cofibers of cubes of subobject inclusions.
//!
//! For a `k`-cube `U ↦ X_U ⊆ X` with `X_U ⊆ X_V` whenever `U ⊆ V`, the
//! total cofiber has `C_p(X_U)` in total degree `p + k − |U|` and differential
//! `(−1)^{k−|U|} ∂ + Σ_{j ∉ U} ε(U, j) · incl`, `ε(U, j) = (−1)^{#{i ∉ U : i < j}}`.
//! The cube is a homotopy pushout cube exactly when this complex is acyclic.

use alloc::vec;
use alloc::vec::Vec;

use super::chain::{ChainComplex, SparseMatrix};
use super::homology::{homology_of_complex, Coefficients, HomologyResult};
use super::sset::{CellId, SimplicialSet, Subobject};
use crate::error::{Error, Result};

pub const MAX_CUBE_DIMENSION: usize = 4;

#[derive(Clone, Debug)]
pub struct SubobjectCube {
    pub ambient: SimplicialSet,
    pub dim: usize,
    /// `corners[U]` for every bitmask `U` of `0..dim`.
    pub corners: Vec<Subobject>,
}

impl SubobjectCube {
    pub fn validate(&self) -> Result<()> {
        if self.dim > MAX_CUBE_DIMENSION {
            return Err(Error::CapExceeded { what: "cube dimension", size: self.dim, cap: MAX_CUBE_DIMENSION });
        }
        if self.corners.len() != 1 << self.dim {
            return Err(Error::SizeMismatch { expected: 1 << self.dim, found: self.corners.len() });
        }
        for s in &self.corners {
            s.check_closed(&self.ambient)?;
        }
        for u in 0..self.corners.len() {
            for j in 0..self.dim {
                let v = u | 1 << j;
                if v != u && !self.corners[u].is_subset_of(&self.corners[v]) {
                    return Err(Error::NonInclusion { from: u, to: v });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CubeCertificate {
    pub dim: usize,
    pub square_zero: bool,
    pub acyclic: bool,
    pub homology: HomologyResult,
    pub total_ranks: Vec<usize>,
}

fn epsilon(u: usize, j: usize) -> i64 {
    let below = (0..j).filter(|&i| u >> i & 1 == 0).count();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn total_cofiber(cube: &SubobjectCube) -> Result<ChainComplex> {
    cube.validate()?;
    let x = &cube.ambient;
    let k = cube.dim;
    let top = x.dim().map_or(0, |d| d + 1);
    let degrees = top + k;
    // index[U][p][id] = position inside total degree p + k − |U|
    let mut dims = vec![0usize; degrees.max(1)];
    let mut index: Vec<Vec<Vec<Option<usize>>>> = Vec::with_capacity(cube.corners.len());
    for (u, corner) in cube.corners.iter().enumerate() {
        let shift = k - u.count_ones() as usize;
        let mut per_dim = Vec::with_capacity(top);
        for p in 0..top {
            let ids = (0..x.count(p))
                .map(|id| {
                    corner.contains(CellId { dim: p, id }).then(|| {
                        dims[p + shift] += 1;
                        dims[p + shift] - 1
                    })
                })
                .collect();
            per_dim.push(ids);
        }
        index.push(per_dim);
    }
    let mut columns: Vec<Vec<Vec<(usize, i64)>>> = vec![Vec::new(); dims.len()];
    for u in 0..cube.corners.len() {
        let shift = k - u.count_ones() as usize;
        let sign = if shift % 2 == 0 { 1 } else { -1 };
        for p in 0..top {
            for c in x.cells(p) {
                let Some(pos) = index[u][p][c.id] else { continue };
                let t = p + shift;
                let mut col = Vec::new();
                if p > 0 {
                    for (i, f) in x.faces_of(c).iter().enumerate() {
                        if f.is_degenerate() {
                            continue;
                        }
                        let row = index[u][f.cell.dim][f.cell.id].expect("corners are closed");
                        col.push((row, if i % 2 == 0 { sign } else { -sign }));
                    }
                }
                for j in 0..k {
                    if u >> j & 1 == 0 {
                        let v = u | 1 << j;
                        col.push((index[v][p][c.id].expect("inclusions checked"), epsilon(u, j)));
                    }
                }
                debug_assert_eq!(columns[t].len(), pos);
                columns[t].push(col);
            }
        }
    }
    let mut boundaries = Vec::with_capacity(dims.len());
    for t in 0..dims.len() {
        let rows = if t == 0 { 0 } else { dims[t - 1] };
        let mut m = SparseMatrix::zero(rows, 0);
        for col in core::mem::take(&mut columns[t]) {
            if t == 0 {
                m.push_column(core::iter::empty());
            } else {
                m.push_column(col);
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplex { offset: 0, dims, boundaries })
}

pub fn total_cofiber_check(cube: &SubobjectCube, coeff: Coefficients) -> Result<CubeCertificate> {
    let c = total_cofiber(cube)?;
    let square_zero = c.check_square_zero().is_ok();
    let homology = homology_of_complex(&c, coeff, false)?;
    Ok(CubeCertificate {
        dim: cube.dim,
        square_zero,
        acyclic: square_zero && homology.is_acyclic(),
        homology,
        total_ranks: c.dims,
    })
}

/// The cube of a cover `X = X₁ ∪ ⋯ ∪ X_k`: the corner at a nonempty `U` is
/// `⋃_{i ∈ U} X_i` and the initial corner is `⋂ X_i`.
pub fn cover_cube(ambient: SimplicialSet, pieces: &[Subobject]) -> SubobjectCube {
    let k = pieces.len();
    let mut all = Subobject::full(&ambient);
    for piece in pieces {
        all = all.intersection(piece);
    }
    let corners = (0..1usize << k)
        .map(|u| {
            if u == 0 {
                return all.clone();
            }
            let mut s = Subobject::empty(&ambient);
            for (i, piece) in pieces.iter().enumerate() {
                if u >> i & 1 == 1 {
                    s = s.union(piece);
                }
            }
            s
        })
        .collect();
    SubobjectCube { ambient, dim: k, corners }
}
