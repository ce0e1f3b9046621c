//! Homology with integer, rational or prime-field coefficients.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::chain::{ChainComplex, ChainMode, SparseMatrix};
use super::snf::{invariant_factors, rank_over_field, PrimeField, Rationals};
use super::sset::SimplicialSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Rationals => f.write_str("Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: isize,
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub reduced: bool,
    pub coefficients: Coefficients,
    pub groups: Vec<HomologyGroup>,
    /// Alternating count of chain ranks.
    pub euler_from_chains: i64,
}

impl HomologyResult {
    pub fn group(&self, degree: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    pub fn rank(&self, degree: isize) -> usize {
        self.group(degree).map_or(0, |g| g.rank)
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Degrees with nonzero groups.
    pub fn support(&self) -> Vec<isize> {
        self.groups.iter().filter(|g| !g.is_zero()).map(|g| g.degree).collect()
    }

    pub fn euler_from_betti(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| if g.degree.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }

    /// Ranks indexed by degree `0..=top` (negative degrees dropped).
    pub fn betti(&self) -> Vec<usize> {
        let top = self.groups.iter().map(|g| g.degree).max().unwrap_or(-1);
        (0..=top).map(|d| self.rank(d)).collect()
    }
}

/// Rank of one boundary map and, over the integers, its invariant factors.
fn rank_and_factors(m: &SparseMatrix, coeff: Coefficients) -> Result<(usize, Vec<BigInt>)> {
    Ok(match coeff {
        Coefficients::Integers => {
            let f = invariant_factors(m);
            let torsion = f.iter().filter(|x| !x.is_one()).cloned().collect();
            (f.len(), torsion)
        }
        Coefficients::Rationals => (rank_over_field(&Rationals, m), Vec::new()),
        Coefficients::Prime(p) => (rank_over_field(&PrimeField::new(p)?, m), Vec::new()),
    })
}

pub fn homology_of_complex(c: &ChainComplex, coeff: Coefficients, reduced: bool) -> Result<HomologyResult> {
    let n = c.dims.len();
    let mut ranks = Vec::with_capacity(n);
    let mut factors = Vec::with_capacity(n);
    for b in &c.boundaries {
        let (r, t) = rank_and_factors(b, coeff)?;
        ranks.push(r);
        factors.push(t);
    }
    let mut groups = Vec::with_capacity(n);
    for i in 0..n {
        let out_rank = ranks.get(i).copied().unwrap_or(0);
        let in_rank = ranks.get(i + 1).copied().unwrap_or(0);
        let torsion = factors.get(i + 1).cloned().unwrap_or_default();
        let degree = c.degree(i);
        let g = HomologyGroup { degree, rank: c.dims[i] - out_rank - in_rank, torsion };
        if degree >= 0 || !g.is_zero() {
            groups.push(g);
        }
    }
    Ok(HomologyResult { reduced, coefficients: coeff, groups, euler_from_chains: c.euler_characteristic() })
}

/// Homology of a finite simplicial set from normalized chains. Reduced
/// homology of a pointed set is taken relative to the basepoint, of an
/// unpointed one through the augmentation.
pub fn homology(x: &SimplicialSet, reduced: bool, coeff: Coefficients) -> Result<HomologyResult> {
    let mode = match (reduced, x.is_pointed()) {
        (false, _) => ChainMode::Unreduced,
        (true, true) => ChainMode::Pointed,
        (true, false) => {
            if x.count(0) == 0 {
                return Err(Error::Invalid("reduced homology of the empty simplicial set".into()));
            }
            ChainMode::Augmented
        }
    };
    let c = ChainComplex::from_simplicial(x, mode)?;
    homology_of_complex(&c, coeff, reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::models;

    #[test]
    fn projective_plane() {
        let rp2 = models::real_projective_plane();
        let h = homology(&rp2, false, Coefficients::Integers).unwrap();
        assert_eq!(h.rank(0), 1);
        assert_eq!(h.rank(1), 0);
        assert_eq!(h.group(1).unwrap().torsion, alloc::vec![BigInt::from(2)]);
        assert_eq!(h.rank(2), 0);
        let f2 = homology(&rp2, false, Coefficients::Prime(2)).unwrap();
        assert_eq!(f2.betti(), alloc::vec![1, 1, 1]);
        let q = homology(&rp2, true, Coefficients::Rationals).unwrap();
        assert!(q.is_acyclic());
    }

    #[test]
    fn point_and_circles() {
        assert!(homology(&models::points(1), true, Coefficients::Integers).unwrap().is_acyclic());
        let w = homology(&models::wedge_of_circles(3), true, Coefficients::Integers).unwrap();
        assert_eq!(w.support(), alloc::vec![1]);
        assert_eq!(w.rank(1), 3);
        assert_eq!(w.euler_from_betti(), w.euler_from_chains);
        assert!(homology(&models::points(0), true, Coefficients::Integers).is_err());
        assert!(homology(&models::points(1), true, Coefficients::Prime(4)).is_err());
    }
}
