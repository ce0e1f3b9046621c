//! Permutation groups given by generators: exact order by a stabilizer
//! chain (orbit–stabilizer at every level) and, for small groups, the full
//! element list.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigUint;
use num_traits::One;

/// A permutation of `{0, …, degree−1}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(n);
        p.0.swap(a, b);
        p
    }

    /// One-line notation, e.g. `[1 0 2]`.
    pub fn one_line(&self) -> String {
        let mut s = String::from("[");
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{v}");
        }
        s.push(']');
        s
    }
}

/// A permutation group presented by generators, with its exact order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub order: BigUint,
}

impl GroupPresentation {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        let order = StabilizerChain::new(degree, &generators).order();
        GroupPresentation { degree, generators, order }
    }

    /// All elements, sorted, by closure under the generators.
    /// Returns `None` if the group has more than `cap` elements.
    pub fn elements(&self, cap: usize) -> Option<Vec<Perm>> {
        if self.order > BigUint::from(cap) {
            return None;
        }
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        let id = Perm::identity(self.degree);
        let mut frontier = vec![id.clone()];
        seen.insert(id);
        while let Some(g) = frontier.pop() {
            for s in &self.generators {
                let h = g.then(s);
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        Some(seen.into_iter().collect())
    }
}

/// Stabilizer chain: level `i` holds the strong generators that fix the
/// first `i` base points, and the orbit of base point `i` under all strong
/// generators of levels `≥ i` with coset representatives.
struct StabilizerChain {
    base: Vec<usize>,
    strong: Vec<Vec<Perm>>,
    transversals: Vec<BTreeMap<usize, Perm>>,
    degree: usize,
}

impl StabilizerChain {
    fn new(degree: usize, generators: &[Perm]) -> Self {
        let mut chain = StabilizerChain { base: Vec::new(), strong: Vec::new(), transversals: Vec::new(), degree };
        for g in generators {
            let (residue, at) = chain.sift(0, g.clone());
            if !residue.is_identity() {
                chain.insert(residue, at);
            }
        }
        // complete the chain: every Schreier generator must sift to the identity
        'restart: loop {
            for i in 0..chain.base.len() {
                let gens: Vec<Perm> = chain.strong[i..].concat();
                let reps: Vec<Perm> = chain.transversals[i].values().cloned().collect();
                for u in &reps {
                    for s in &gens {
                        let us = u.then(s);
                        let back = chain.transversals[i][&us.apply(chain.base[i])].inverse();
                        let (residue, at) = chain.sift(i + 1, us.then(&back));
                        if !residue.is_identity() {
                            chain.insert(residue, at);
                            continue 'restart;
                        }
                    }
                }
            }
            return chain;
        }
    }

    fn insert(&mut self, residue: Perm, at: usize) {
        if at == self.base.len() {
            let point = (0..self.degree).find(|&p| residue.apply(p) != p).expect("non-identity moves a point");
            self.base.push(point);
            self.strong.push(Vec::new());
            self.transversals.push(BTreeMap::new());
        }
        self.strong[at].push(residue);
        for i in 0..=at {
            self.rebuild(i);
        }
    }

    fn rebuild(&mut self, i: usize) {
        let gens: Vec<Perm> = self.strong[i..].concat();
        let b = self.base[i];
        let mut t = BTreeMap::new();
        t.insert(b, Perm::identity(self.degree));
        let mut queue = vec![b];
        while let Some(x) = queue.pop() {
            let ux = t[&x].clone();
            for g in &gens {
                let y = g.apply(x);
                if !t.contains_key(&y) {
                    t.insert(y, ux.then(g));
                    queue.push(y);
                }
            }
        }
        self.transversals[i] = t;
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level where it stuck.
    fn sift(&self, from: usize, mut g: Perm) -> (Perm, usize) {
        for i in from..self.base.len() {
            match self.transversals[i].get(&g.apply(self.base[i])) {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.base.len())
    }

    fn order(&self) -> BigUint {
        self.transversals.iter().fold(BigUint::one(), |acc, t| acc * BigUint::from(t.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> BigUint {
        (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 1..=7 {
            let gens = if n >= 2 {
                vec![Perm::transposition(n, 0, 1), Perm((1..n).chain(0..1).collect())]
            } else {
                vec![]
            };
            let g = GroupPresentation::new(n, gens);
            assert_eq!(g.order, factorial(n), "S_{n}");
        }
    }

    #[test]
    fn wreath_product_and_cyclic() {
        // Σ₂ ≀ Σ₂ on (01)(23)
        let g = GroupPresentation::new(
            4,
            vec![
                Perm::transposition(4, 0, 1),
                Perm::transposition(4, 2, 3),
                Perm(vec![2, 3, 0, 1]),
            ],
        );
        assert_eq!(g.order, BigUint::from(8u32));
        assert_eq!(g.elements(100).unwrap().len(), 8);
        let c5 = GroupPresentation::new(5, vec![Perm(vec![1, 2, 3, 4, 0])]);
        assert_eq!(c5.order, BigUint::from(5u32));
        assert!(c5.elements(4).is_none());
    }
}
