//! Finite products and smash products.
//!
//! A nondegenerate `k`-simplex of `X₁ × ⋯ × X_r` is a tuple of simplices
//! `σ_j*(x_j)` with `x_j` nondegenerate and `σ_j: [k] ↠ [dim x_j]` such that
//! the `σ_j` are jointly injective: every step `i → i+1` is taken by some factor.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::op::Op;
use super::quotient::quotient;
use super::sset::{CellId, Simplex, SimplicialSet, Subobject};
use crate::error::{Error, Result};

pub const DEFAULT_DIMENSION_CAP: usize = 6;

#[derive(Clone, Debug)]
pub struct Product {
    pub set: SimplicialSet,
    /// `coords[k][id][j]`: the `j`-th coordinate of the `k`-simplex `id`.
    pub coords: Vec<Vec<Vec<Simplex>>>,
    index: Vec<BTreeMap<Vec<Simplex>, usize>>,
}

impl Product {
    pub fn cell_of(&self, coords: &[Simplex]) -> Option<CellId> {
        let dim = coords.first()?.dim();
        let id = *self.index.get(dim)?.get(coords)?;
        Some(CellId { dim, id })
    }

    pub fn coords(&self, c: CellId) -> &[Simplex] {
        &self.coords[c.dim][c.id]
    }

    /// Normalizes a tuple of equal-dimensional simplices into `π*(cell)`.
    pub fn simplex_of(&self, tuple: &[Simplex]) -> Option<Simplex> {
        let (pi, key) = normalize(tuple);
        let cell = self.cell_of(&key)?;
        Some(Simplex { cell, deg: pi })
    }
}

/// Splits a tuple of `m`-simplices into `π: [m] ↠ [k]` and a jointly injective `k`-tuple.
fn normalize(tuple: &[Simplex]) -> (Op, Vec<Simplex>) {
    let m = tuple[0].dim();
    let mut pi = Vec::with_capacity(m + 1);
    let mut reps = Vec::with_capacity(m + 1);
    pi.push(0u8);
    reps.push(0usize);
    for p in 0..m {
        let moves = tuple.iter().any(|s| s.deg.get(p) != s.deg.get(p + 1));
        let last = *pi.last().unwrap();
        if moves {
            pi.push(last + 1);
            reps.push(p + 1);
        } else {
            pi.push(last);
        }
    }
    let k = reps.len() - 1;
    let key = tuple
        .iter()
        .map(|s| {
            let values: Vec<u8> = reps.iter().map(|&r| s.deg.get(r) as u8).collect();
            Simplex { cell: s.cell, deg: Op::new(values, s.deg.codomain_dim()) }
        })
        .collect();
    (Op::new(pi, k), key)
}

/// The surjection `[k] ↠ [d]` stepping exactly at the positions in `steps`.
fn surjection(k: usize, steps: u32) -> Op {
    let mut values = Vec::with_capacity(k + 1);
    let mut v = 0u8;
    values.push(0);
    for i in 0..k {
        if steps >> i & 1 == 1 {
            v += 1;
        }
        values.push(v);
    }
    Op::new(values, v as usize)
}

pub fn product_many(factors: &[&SimplicialSet], dim_cap: usize) -> Result<Product> {
    let dims: Vec<usize> = factors.iter().map(|x| x.dim().unwrap_or(0)).collect();
    let empty = factors.iter().any(|x| x.dim().is_none());
    let top: usize = dims.iter().sum();
    if top > dim_cap {
        return Err(Error::CapExceeded { what: "product dimension", size: top, cap: dim_cap });
    }
    let mut set = SimplicialSet::new();
    let mut coords: Vec<Vec<Vec<Simplex>>> = Vec::new();
    let mut index: Vec<BTreeMap<Vec<Simplex>, usize>> = Vec::new();
    if empty {
        return Ok(Product { set, coords, index });
    }
    for k in 0..=top {
        let mut level: Vec<Vec<Simplex>> = Vec::new();
        let mut partial: Vec<Simplex> = Vec::with_capacity(factors.len());
        enumerate(factors, &dims, k, 0, 0, &mut partial, &mut level);
        if level.is_empty() {
            break;
        }
        let mut lookup = BTreeMap::new();
        for (id, tuple) in level.iter().enumerate() {
            lookup.insert(tuple.clone(), id);
        }
        for tuple in &level {
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let delta = Op::coface(k, i);
                        let face: Vec<Simplex> =
                            tuple.iter().zip(factors).map(|(s, x)| x.apply(s, &delta)).collect();
                        let (pi, key) = normalize(&face);
                        let id = index[pi.codomain_dim()][&key];
                        Simplex { cell: CellId { dim: pi.codomain_dim(), id }, deg: pi }
                    })
                    .collect()
            };
            set.add_cell(k, faces);
        }
        coords.push(level);
        index.push(lookup);
    }
    Ok(Product { set, coords, index })
}

fn enumerate(
    factors: &[&SimplicialSet],
    dims: &[usize],
    k: usize,
    j: usize,
    covered: u32,
    partial: &mut Vec<Simplex>,
    out: &mut Vec<Vec<Simplex>>,
) {
    let all = if k == 0 { 0 } else { (1u32 << k) - 1 };
    if j == factors.len() {
        if covered == all {
            out.push(partial.clone());
        }
        return;
    }
    let remaining: usize = dims[j + 1..].iter().sum();
    for d in 0..=dims[j].min(k) {
        for steps in 0..=all {
            if steps.count_ones() as usize != d {
                continue;
            }
            if ((all & !(covered | steps)).count_ones() as usize) > remaining {
                continue;
            }
            let sigma = surjection(k, steps);
            for cell in factors[j].cells(d) {
                partial.push(Simplex { cell, deg: sigma.clone() });
                enumerate(factors, dims, k, j + 1, covered | steps, partial, out);
                partial.pop();
            }
        }
    }
}

pub fn product(a: &SimplicialSet, b: &SimplicialSet) -> Result<Product> {
    product_many(&[a, b], DEFAULT_DIMENSION_CAP)
}

/// `A ∧ B = A × B / (A ∨ B)`.
pub fn smash(a: &SimplicialSet, b: &SimplicialSet) -> Result<SimplicialSet> {
    let (pa, pb) = match (a.basepoint(), b.basepoint()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::MissingBasepoint),
    };
    let prod = product_many(&[a, b], DEFAULT_DIMENSION_CAP)?;
    let wedge = Subobject::from_predicate(&prod.set, |c| {
        let t = prod.coords(c);
        t[0].cell == CellId { dim: 0, id: pa } || t[1].cell == CellId { dim: 0, id: pb }
    });
    let mut unpointed = prod.set;
    unpointed.set_basepoint(None);
    Ok(quotient(&unpointed, &wedge)?.set)
}
