//! Simplicial operators: monotone maps `[m] → [n]` between ordinals.

use alloc::vec::Vec;

/// A monotone map `[m] → [codomain]`, stored as its list of values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Op {
    values: Vec<u8>,
    codomain: u8,
}

impl Op {
    pub fn new(values: Vec<u8>, codomain: usize) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| (v as usize) <= codomain));
        Op { values, codomain: codomain as u8 }
    }

    pub fn identity(n: usize) -> Self {
        Op { values: (0..=n as u8).collect(), codomain: n as u8 }
    }

    /// The constant map `[m] → [0]`.
    pub fn constant(m: usize) -> Self {
        Op { values: alloc::vec![0; m + 1], codomain: 0 }
    }

    /// The vertex inclusion `[0] → [n]` at `i`.
    pub fn vertex(n: usize, i: usize) -> Self {
        Op { values: alloc::vec![i as u8], codomain: n as u8 }
    }

    /// The coface `δ_i: [n−1] → [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        Op {
            values: (0..n as u8).map(|v| if (v as usize) < i { v } else { v + 1 }).collect(),
            codomain: n as u8,
        }
    }

    /// The codegeneracy `σ_i: [n+1] → [n]` repeating `i`.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        Op {
            values: (0..=n as u8 + 1).map(|v| if (v as usize) <= i { v } else { v - 1 }).collect(),
            codomain: n as u8,
        }
    }

    /// Dimension of the domain.
    pub fn domain_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain as usize
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn get(&self, i: usize) -> usize {
        self.values[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.values.len() == self.codomain as usize + 1
            && self.values.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_surjective(&self) -> bool {
        self.values.first() == Some(&0)
            && *self.values.last().unwrap() == self.codomain
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Op) -> Op {
        debug_assert_eq!(other.codomain as usize, self.domain_dim());
        Op {
            values: other.values.iter().map(|&v| self.values[v as usize]).collect(),
            codomain: self.codomain,
        }
    }

    /// Epi–mono factorization `self = mono ∘ epi`.
    pub fn factor(&self) -> (Op, Op) {
        let mut image: Vec<u8> = Vec::new();
        let mut epi = Vec::with_capacity(self.values.len());
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            epi.push((image.len() - 1) as u8);
        }
        let k = image.len() - 1;
        (Op { values: epi, codomain: k as u8 }, Op { values: image, codomain: self.codomain })
    }

    /// For an injective operator, the smallest index of the codomain it misses.
    pub fn first_missing(&self) -> Option<usize> {
        (0..=self.codomain as usize).find(|&r| !self.values.contains(&(r as u8)))
    }

    /// For an injection missing `r`, the injection `ι′` with `self = δ_r ∘ ι′`.
    pub fn drop_missing(&self, r: usize) -> Op {
        Op {
            values: self.values.iter().map(|&v| if (v as usize) > r { v - 1 } else { v }).collect(),
            codomain: self.codomain - 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosimplicial_identities() {
        // δ_j δ_i = δ_i δ_{j−1} for i < j
        for n in 2..6 {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = Op::coface(n, j).after(&Op::coface(n - 1, i));
                    let rhs = Op::coface(n, i).after(&Op::coface(n - 1, j - 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // σ_j δ_i = id when i = j, j+1
        for n in 1..5 {
            for j in 0..n {
                let s = Op::codegeneracy(n - 1, j);
                assert!(s.after(&Op::coface(n, j)).is_identity());
                assert!(s.after(&Op::coface(n, j + 1)).is_identity());
            }
        }
    }

    #[test]
    fn epi_mono_factorization() {
        let f = Op::new(alloc::vec![1, 1, 3, 3, 4], 5);
        let (e, m) = f.factor();
        assert!(e.is_surjective());
        assert_eq!(m.values(), &[1, 3, 4]);
        assert_eq!(m.after(&e), f);
        assert_eq!(m.first_missing(), Some(0));
        assert_eq!(m.drop_missing(0).values(), &[0, 2, 3]);
    }
}
