//! Nerves of finite posets, their boundary parts and the spaces `T_Λ`.

use alloc::vec::Vec;

use super::product::smash;
use super::quotient::quotient;
use super::sset::{models, CellId, Simplex, SimplicialSet, Subobject};
use crate::error::{Error, Result};
use crate::partition::{refinement_poset, Partition, PosetTable};

/// A nerve with the chain behind every nondegenerate simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: SimplicialSet,
    /// `chains[k][id]`: strictly increasing element indices of the `k`-simplex `id`.
    pub chains: Vec<Vec<Vec<usize>>>,
}

impl Nerve {
    pub fn cell_of(&self, chain: &[usize]) -> Option<CellId> {
        let dim = chain.len().checked_sub(1)?;
        let id = self.chains.get(dim)?.binary_search_by(|c| c.as_slice().cmp(chain)).ok()?;
        Some(CellId { dim, id })
    }

    pub fn chain(&self, cell: CellId) -> &[usize] {
        &self.chains[cell.dim][cell.id]
    }
}

/// The nerve: nondegenerate `k`-simplices are chains `p₀ < ⋯ < p_k`, listed lexicographically.
pub fn nerve(p: &PosetTable) -> Nerve {
    let n = p.len();
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    if n > 0 {
        chains.push((0..n).map(|i| alloc::vec![i]).collect());
    }
    // element indices form a linear extension, so chains are increasing index lists
    loop {
        let last = chains.last().map_or(&[][..], |c| c.as_slice());
        let mut next = Vec::new();
        for c in last {
            let top = *c.last().unwrap();
            for j in top + 1..n {
                if p.lt(top, j) {
                    let mut d = c.clone();
                    d.push(j);
                    next.push(d);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        chains.push(next);
    }
    let mut set = SimplicialSet::new();
    for (k, level) in chains.iter().enumerate() {
        for c in level {
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let mut f = c.clone();
                        f.remove(i);
                        let id = chains[k - 1].binary_search(&f).expect("faces of chains are chains");
                        Simplex::nondegenerate(CellId { dim: k - 1, id })
                    })
                    .collect()
            };
            set.add_cell(k, faces);
        }
    }
    Nerve { set, chains }
}

/// Chains that do not contain both the minimum and the maximum.
/// Empty when the minimum and maximum coincide.
pub fn boundary_part(p: &PosetTable, n: &Nerve) -> Subobject {
    if p.is_empty() || p.min() == p.max() {
        return Subobject::empty(&n.set);
    }
    let (lo, hi) = (p.min(), p.max());
    Subobject::from_predicate(&n.set, |c| {
        let chain = n.chain(c);
        !(chain.contains(&lo) && chain.contains(&hi))
    })
}

/// `T_Λ = N(P(Λ)) / ∂N(P(Λ))`, pointed at the collapsed boundary.
pub fn t_space(lambda: &Partition, cap: usize) -> Result<SimplicialSet> {
    let p = refinement_poset(lambda, cap)?;
    let n = nerve(&p);
    let boundary = boundary_part(&p, &n);
    Ok(quotient(&n.set, &boundary)?.set)
}

/// `S¹ ∧ (N(P∖{1̂}) / N(P∖{Λ, 1̂}))`.
///
/// Defined for non-discrete `Λ`; for discrete `Λ` the poset minus its top is empty.
pub fn t_space_suspension_model(lambda: &Partition, cap: usize) -> Result<SimplicialSet> {
    if lambda.is_discrete() {
        return Err(Error::Invalid("suspension model needs a non-discrete partition".into()));
    }
    let p = refinement_poset(lambda, cap)?;
    let top = p.max();
    let without_top = p.subposet(|i| i != top);
    let n = nerve(&without_top);
    let root = without_top.index_of(lambda).expect("Λ is in its own poset");
    let avoid_root = Subobject::from_predicate(&n.set, |c| !n.chain(c).contains(&root));
    let q = quotient(&n.set, &avoid_root)?.set;
    smash(&models::minimal_circle(), &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::DEFAULT_SUPPORT_CAP;

    #[test]
    fn nerve_counts() {
        let chain2 = refinement_poset(&Partition::indiscrete(2), 9).unwrap();
        assert_eq!(nerve(&chain2).set.counts(), alloc::vec![2, 1]);
        let p3 = refinement_poset(&Partition::indiscrete(3), 9).unwrap();
        let n3 = nerve(&p3);
        n3.set.verify().unwrap();
        assert_eq!(n3.set.counts(), alloc::vec![5, 7, 3]);
        let b = boundary_part(&p3, &n3);
        b.check_closed(&n3.set).unwrap();
        assert_eq!(b.counts(), alloc::vec![5, 6, 0]);
    }

    #[test]
    fn discrete_t_space_is_two_points() {
        let t = t_space(&Partition::discrete(3), DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(t.counts(), alloc::vec![2]);
        assert!(t_space_suspension_model(&Partition::discrete(3), 9).is_err());
    }
}
