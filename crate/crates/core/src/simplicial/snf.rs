//! Exact elimination: sparse unit-pivot reduction over a coefficient ring,
//! followed by a dense Smith normal form over the integers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::chain::SparseMatrix;
use crate::error::{Error, Result};

/// Arithmetic needed by the elimination routines.
pub trait Ring {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_unit(&self, a: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a · u⁻¹` for a unit `u`.
    fn div_unit(&self, a: &Self::E, u: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Ring for Integers {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn div_unit(&self, a: &BigInt, u: &BigInt) -> BigInt {
        a * u
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn div_unit(&self, a: &BigRational, u: &BigRational) -> BigRational {
        a / u
    }
}

/// The prime field `𝔽_p`, `p < 2³²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn div_unit(&self, a: &u64, u: &u64) -> u64 {
        a * self.pow(*u, self.p - 2) % self.p
    }
}

/// Outcome of sparse elimination: the number of unit pivots removed and the
/// dense matrix left over, which contains no units.
#[derive(Clone, Debug)]
pub struct Reduction<E> {
    pub unit_pivots: usize,
    pub residual: Vec<Vec<E>>,
}

/// Eliminates unit pivots, cheapest first: columns with fewest entries, and
/// within a column the pivot row with fewest entries.
pub fn eliminate<R: Ring>(ring: &R, m: &SparseMatrix) -> Reduction<R::E> {
    let ncols = m.ncols();
    let mut cols: Vec<BTreeMap<usize, R::E>> = m
        .cols
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, ring.from_i64(v))).filter(|(_, v)| !ring.is_zero(v)).collect())
        .collect();
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            rows[r].insert(c);
        }
    }
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut key: Vec<Option<usize>> = vec![None; ncols];
    let mut alive = vec![true; ncols];
    for (c, col) in cols.iter().enumerate() {
        queue.insert((col.len(), c));
        key[c] = Some(col.len());
    }
    let mut unit_pivots = 0;
    while let Some((count, c)) = queue.pop_first() {
        key[c] = None;
        if count == 0 {
            alive[c] = false;
            continue;
        }
        let pivot = cols[c]
            .iter()
            .filter(|(_, v)| ring.is_unit(v))
            .min_by_key(|(r, _)| (rows[**r].len(), **r))
            .map(|(r, v)| (*r, v.clone()));
        let Some((r, u)) = pivot else {
            continue;
        };
        let pivot_col: Vec<(usize, R::E)> = cols[c].iter().map(|(a, b)| (*a, b.clone())).collect();
        let others: Vec<usize> = rows[r].iter().copied().filter(|&c2| c2 != c).collect();
        for c2 in others {
            let factor = ring.div_unit(&cols[c2][&r], &u);
            for (r2, v) in &pivot_col {
                let old = cols[c2].get(r2).cloned().unwrap_or_else(|| ring.zero());
                let new = ring.sub(&old, &ring.mul(&factor, v));
                if ring.is_zero(&new) {
                    cols[c2].remove(r2);
                    rows[*r2].remove(&c2);
                } else {
                    cols[c2].insert(*r2, new);
                    rows[*r2].insert(c2);
                }
            }
            if let Some(k) = key[c2] {
                queue.remove(&(k, c2));
            }
            key[c2] = Some(cols[c2].len());
            queue.insert((cols[c2].len(), c2));
        }
        for (r2, _) in &pivot_col {
            rows[*r2].remove(&c);
        }
        cols[c].clear();
        alive[c] = false;
        unit_pivots += 1;
    }
    let left: Vec<usize> = (0..ncols).filter(|&c| alive[c] && !cols[c].is_empty()).collect();
    let used_rows: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let row_pos: BTreeMap<usize, usize> = used_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut residual = vec![vec![ring.zero(); left.len()]; used_rows.len()];
    for (j, &c) in left.iter().enumerate() {
        for (r, v) in &cols[c] {
            residual[row_pos[r]][j] = v.clone();
        }
    }
    Reduction { unit_pivots, residual }
}

/// Rank over a field (every nonzero element a unit).
pub fn rank_over_field<R: Ring>(ring: &R, m: &SparseMatrix) -> usize {
    let red = eliminate(ring, m);
    debug_assert!(red.residual.iter().all(|row| row.iter().all(|v| ring.is_zero(v))));
    red.unit_pivots
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let red = eliminate(&Integers, m);
    let mut out = vec![BigInt::one(); red.unit_pivots];
    let mut a = red.residual;
    let r = snf_in_place(&mut a, None, None);
    out.extend((0..r).map(|i| a[i][i].clone()));
    out
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | ⋯`, `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    snf_in_place(&mut d, Some(&mut u), Some(&mut v));
    SmithForm { d, u, v }
}

pub fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn add_row_multiple(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (s, t) = (a[src].clone(), &mut a[dst]);
    for (x, y) in t.iter_mut().zip(&s) {
        *x += q * y;
    }
}

fn add_col_multiple(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let y = row[src].clone();
        row[dst] += q * &y;
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Diagonalizes `a` in place with least-absolute-value pivots; returns the rank.
/// Row operations are mirrored on `u`, column operations on `v`.
fn snf_in_place(
    a: &mut [Vec<BigInt>],
    mut u: Option<&mut Vec<Vec<BigInt>>>,
    mut v: Option<&mut Vec<Vec<BigInt>>>,
) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut t = 0;
    while t < rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else {
                return t;
            };
            a.swap(t, i);
            if let Some(u) = u.as_deref_mut() {
                u.swap(t, i);
            }
            swap_cols(a, t, j);
            if let Some(v) = v.as_deref_mut() {
                swap_cols(v, t, j);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -(&a[i][t] / &a[t][t]);
                add_row_multiple(a, i, t, &q);
                if let Some(u) = u.as_deref_mut() {
                    add_row_multiple(u, i, t, &q);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -(&a[t][j] / &a[t][t]);
                add_col_multiple(a, j, t, &q);
                if let Some(v) = v.as_deref_mut() {
                    add_col_multiple(v, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    add_row_multiple(a, t, i, &one);
                    if let Some(u) = u.as_deref_mut() {
                        add_row_multiple(u, t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            if let Some(u) = u.as_deref_mut() {
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        t += 1;
    }
    t
}
