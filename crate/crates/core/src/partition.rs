//! Partitions of `{0, …, m−1}`, set maps between supports, and the
//! refinement poset `P(Λ)`.
//!
//! Order convention: `Λ ≤ Δ` when `Δ` refines `Λ` (every block of `Δ` lies
//! in a block of `Λ`). The indiscrete partition is the minimum and the
//! discrete partition is the maximum. `join` is the coarsest common
//! refinement and `meet` the finest common coarsening.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// Default largest support for which refinement posets are materialized.
pub const DEFAULT_SUPPORT_CAP: usize = 9;

/// A partition of `{0, …, support−1}` stored in canonical form: every block
/// sorted, blocks ordered by their minimum element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    support: usize,
    blocks: Vec<Vec<usize>>,
    labels: Vec<usize>,
}

impl Partition {
    /// Validates `blocks` as a partition of `{0, …, m−1}` and returns its canonical form.
    pub fn new(m: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition { element: m, reason: "empty block" });
            }
            for &x in block {
                if x >= m {
                    return Err(Error::InvalidPartition { element: x, reason: "outside support" });
                }
                if seen[x] {
                    return Err(Error::InvalidPartition { element: x, reason: "appears twice" });
                }
                seen[x] = true;
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition { element: x, reason: "not covered" });
        }
        let mut labels = vec![0; m];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                labels[x] = b;
            }
        }
        Ok(Self::from_labels(&labels))
    }

    /// Builds a partition from any labelling: elements with equal labels share a block.
    pub fn from_labels(labels: &[usize]) -> Self {
        let m = labels.len();
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        let mut canon = Vec::with_capacity(m);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            let next = renumber.len();
            let b = *renumber.entry(l).or_insert(next);
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(x);
            canon.push(b);
        }
        Partition { support: m, blocks, labels: canon }
    }

    pub fn discrete(m: usize) -> Self {
        Self::from_labels(&(0..m).collect::<Vec<_>>())
    }

    pub fn indiscrete(m: usize) -> Self {
        Self::from_labels(&vec![0; m])
    }

    /// The canonical partition with the given block sizes, labels consecutive.
    pub fn from_block_sizes(sizes: &[usize]) -> Self {
        let mut labels = Vec::new();
        for (b, &s) in sizes.iter().enumerate() {
            labels.extend(core::iter::repeat(b).take(s));
        }
        Self::from_labels(&labels)
    }

    pub fn support(&self) -> usize {
        self.support
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block index of every support element.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `e(Λ) = |s| − |c|`.
    pub fn excess(&self) -> usize {
        self.support - self.blocks.len()
    }

    /// No singleton blocks.
    pub fn is_irreducible(&self) -> bool {
        self.blocks.iter().all(|b| b.len() >= 2)
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.support
    }

    pub fn is_indiscrete(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// Block sizes in weakly decreasing order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// `true` when `self` refines `other`, i.e. `other ≤ self`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.support == other.support
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&x| other.labels[x] == other.labels[b[0]]))
    }

    /// `self ≤ other` in the coarsening order.
    pub fn leq(&self, other: &Partition) -> bool {
        other.refines(self)
    }

    fn check_same_support(&self, other: &Partition) -> Result<()> {
        if self.support != other.support {
            return Err(Error::SupportMismatch { left: self.support, right: other.support });
        }
        Ok(())
    }

    /// Coarsest common refinement: blockwise intersections.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_same_support(other)?;
        let pairs: Vec<usize> = (0..self.support)
            .map(|x| self.labels[x] * other.support.max(1) + other.labels[x])
            .collect();
        Ok(Partition::from_labels(&pairs))
    }

    /// Finest common coarsening: components of the union of both relations.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_same_support(other)?;
        let mut uf = UnionFind::new(self.support);
        for p in [self, other] {
            for b in &p.blocks {
                for &x in &b[1..] {
                    uf.union(b[0], x);
                }
            }
        }
        Ok(Partition::from_labels(&uf.labels().0))
    }

    /// The isomorphism-class representative: blocks of weakly decreasing size
    /// laid out on consecutive labels.
    pub fn canonicalize(&self) -> Partition {
        Partition::from_block_sizes(&self.block_sizes())
    }

    pub fn is_isomorphic(&self, other: &Partition) -> bool {
        self.support == other.support && self.block_sizes() == other.block_sizes()
    }

    /// A permutation of the support taking `self` to its canonical form.
    pub fn canonical_relabeling(&self) -> SetMap {
        let mut order: Vec<usize> = (0..self.blocks.len()).collect();
        order.sort_by(|&a, &b| self.blocks[b].len().cmp(&self.blocks[a].len()).then(a.cmp(&b)));
        let mut values = vec![0; self.support];
        let mut next = 0;
        for b in order {
            for &x in &self.blocks[b] {
                values[x] = next;
                next += 1;
            }
        }
        SetMap { source_size: self.support, target_size: self.support, values }
    }

    /// Sorted list of every refinement of `self` (all `Δ` with `self ≤ Δ`).
    pub fn refinements(&self) -> Vec<Partition> {
        let per_block: Vec<Vec<Vec<usize>>> =
            self.blocks.iter().map(|b| restricted_growth_strings(b.len())).collect();
        let mut out = Vec::new();
        let mut labels = vec![0usize; self.support];
        let mut choice = vec![0usize; self.blocks.len()];
        loop {
            let mut offset = 0;
            for (bi, block) in self.blocks.iter().enumerate() {
                let rgs = &per_block[bi][choice[bi]];
                let mut width = 0;
                for (k, &x) in block.iter().enumerate() {
                    labels[x] = offset + rgs[k];
                    width = width.max(rgs[k] + 1);
                }
                offset += width;
            }
            out.push(Partition::from_labels(&labels));
            let mut i = 0;
            loop {
                if i == choice.len() {
                    out.sort();
                    return out;
                }
                choice[i] += 1;
                if choice[i] < per_block[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Every partition of `{0, …, m−1}`, sorted.
    pub fn all(m: usize) -> Vec<Partition> {
        Partition::indiscrete(m).refinements()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support == 0 {
            return f.write_str("()");
        }
        for b in &self.blocks {
            f.write_str("(")?;
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Restricted growth strings of length `n`: one per set partition of an `n`-set.
pub fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut a = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        out.push(a.clone());
        // advance: rightmost position that can be incremented
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if a[i] <= maxes[i - 1] {
                a[i] += 1;
                let m = maxes[i - 1].max(a[i]);
                maxes[i] = m;
                for j in i + 1..n {
                    a[j] = 0;
                    maxes[j] = m;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// A total function `{0, …, source_size−1} → {0, …, target_size−1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SetMap {
    source_size: usize,
    target_size: usize,
    values: Vec<usize>,
}

impl SetMap {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= target_size) {
            return Err(Error::InvalidMap { index, value, target_size });
        }
        Ok(SetMap { source_size: values.len(), target_size, values })
    }

    pub fn identity(m: usize) -> Self {
        SetMap { source_size: m, target_size: m, values: (0..m).collect() }
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &SetMap) -> Result<SetMap> {
        if self.target_size != other.source_size {
            return Err(Error::SizeMismatch { expected: other.source_size, found: self.target_size });
        }
        Ok(SetMap {
            source_size: self.source_size,
            target_size: other.target_size,
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source_size == self.target_size && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_size];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target_size];
        for &v in &self.values {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.source_size == self.target_size && self.is_injective()
    }

    /// Glues exactly one pair of points and is injective otherwise.
    pub fn is_elementary(&self) -> bool {
        let mut fibre = vec![0usize; self.target_size];
        for &v in &self.values {
            fibre[v] += 1;
        }
        fibre.iter().filter(|&&c| c == 2).count() == 1 && fibre.iter().all(|&c| c <= 2)
    }

    /// The partition of the source into fibres.
    pub fn kernel(&self) -> Partition {
        Partition::from_labels(&self.values)
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<SetMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut values = vec![0; self.source_size];
        for (i, &v) in self.values.iter().enumerate() {
            values[v] = i;
        }
        Some(SetMap { source_size: self.target_size, target_size: self.source_size, values })
    }
}

/// `f(Λ)`: the equivalence relation on the target generated by the images of the blocks of `Λ`.
pub fn image_partition(f: &SetMap, lambda: &Partition) -> Result<Partition> {
    if f.source_size != lambda.support {
        return Err(Error::SizeMismatch { expected: lambda.support, found: f.source_size });
    }
    let mut uf = UnionFind::new(f.target_size);
    for b in &lambda.blocks {
        for &x in &b[1..] {
            uf.union(f.values[b[0]], f.values[x]);
        }
    }
    Ok(Partition::from_labels(&uf.labels().0))
}

/// Row-major bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

/// The refinement poset `P(Λ)` of a partition.
///
/// Elements are sorted by number of blocks, then canonically; index order is
/// therefore a linear extension with `Λ` first and the discrete partition last.
#[derive(Clone, Debug)]
pub struct PosetTable {
    elements: Vec<Partition>,
    order: BitMatrix,
    index: BTreeMap<Partition, usize>,
}

impl PosetTable {
    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `elements[i] ≤ elements[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.order.get(i, j)
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn min(&self) -> usize {
        0
    }

    pub fn max(&self) -> usize {
        self.elements.len() - 1
    }

    /// Full subposet on the elements kept by `keep`.
    pub fn subposet(&self, keep: impl Fn(usize) -> bool) -> PosetTable {
        let kept: Vec<Partition> =
            (0..self.len()).filter(|&i| keep(i)).map(|i| self.elements[i].clone()).collect();
        PosetTable::from_elements(kept)
    }

    /// Builds the table on an arbitrary family of partitions of one support.
    pub fn from_elements(mut elements: Vec<Partition>) -> PosetTable {
        elements.sort_by(|a, b| a.num_blocks().cmp(&b.num_blocks()).then_with(|| a.cmp(b)));
        elements.dedup();
        let n = elements.len();
        let mut order = BitMatrix::new(n);
        for i in 0..n {
            for j in i..n {
                if elements[i].leq(&elements[j]) {
                    order.set(i, j);
                }
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PosetTable { elements, order, index }
    }
}

/// `P(Λ)`, refusing supports beyond `cap`.
pub fn refinement_poset(lambda: &Partition, cap: usize) -> Result<PosetTable> {
    if lambda.support() > cap {
        return Err(Error::CapExceeded { what: "partition support", size: lambda.support(), cap });
    }
    Ok(PosetTable::from_elements(lambda.refinements()))
}
