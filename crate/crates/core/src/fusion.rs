//! Morphisms of partitions: canonical factorization, strict fusions, their
//! elementary decompositions, goodness and badness of diagonals, and the
//! cylinder graphs that witness strictness topologically.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::{image_partition, Partition, SetMap};
use crate::unionfind::UnionFind;

/// A map of supports `f` with `f(source) ≤ target`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartitionMorphism {
    source: Partition,
    target: Partition,
    map: SetMap,
}

impl PartitionMorphism {
    pub fn new(source: Partition, target: Partition, map: SetMap) -> Result<Self> {
        if map.source_size() != source.support() {
            return Err(Error::SizeMismatch { expected: source.support(), found: map.source_size() });
        }
        if map.target_size() != target.support() {
            return Err(Error::SizeMismatch { expected: target.support(), found: map.target_size() });
        }
        if !image_partition(&map, &source)?.leq(&target) {
            return Err(Error::NotAMorphism);
        }
        Ok(PartitionMorphism { source, target, map })
    }

    /// The fusion `Λ → f(Λ)` determined by a set map.
    pub fn fusion(source: Partition, map: SetMap) -> Result<Self> {
        let target = image_partition(&map, &source)?;
        Ok(PartitionMorphism { source, target, map })
    }

    pub fn identity(p: Partition) -> Self {
        let m = p.support();
        PartitionMorphism { source: p.clone(), target: p, map: SetMap::identity(m) }
    }

    pub fn source(&self) -> &Partition {
        &self.source
    }

    pub fn target(&self) -> &Partition {
        &self.target
    }

    pub fn map(&self) -> &SetMap {
        &self.map
    }

    pub fn is_fusion(&self) -> bool {
        image_partition(&self.map, &self.source).is_ok_and(|img| img == self.target)
    }

    pub fn is_refinement(&self) -> bool {
        self.map.is_identity()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PartitionMorphism) -> Result<PartitionMorphism> {
        if self.target != other.source {
            return Err(Error::Invalid("morphisms are not composable".into()));
        }
        let map = self.map.then(&other.map)?;
        PartitionMorphism::new(self.source.clone(), other.target.clone(), map)
    }

    fn require_fusion(&self) -> Result<()> {
        if self.is_fusion() {
            Ok(())
        } else {
            Err(Error::NotAFusion)
        }
    }
}

/// Factors a morphism as the fusion `Λ₁ → f(Λ₁)` followed by the refinement `f(Λ₁) → Λ₂`.
pub fn factor(m: &PartitionMorphism) -> (PartitionMorphism, PartitionMorphism) {
    let image = image_partition(&m.map, &m.source).expect("sizes checked at construction");
    let fusion = PartitionMorphism { source: m.source.clone(), target: image.clone(), map: m.map.clone() };
    let refinement = PartitionMorphism {
        source: image,
        target: m.target.clone(),
        map: SetMap::identity(m.target.support()),
    };
    (fusion, refinement)
}

/// A fusion is strict exactly when it preserves excess.
pub fn is_strict_fusion(m: &PartitionMorphism) -> Result<bool> {
    m.require_fusion()?;
    Ok(m.source.excess() == m.target.excess())
}

/// Writes a fusion as elementary fusions (each gluing two points) followed,
/// when needed, by one injective relabelling fusion. Composing the output
/// reproduces the input; the identity decomposes into the empty sequence.
pub fn decompose_elementary(m: &PartitionMorphism) -> Result<Vec<PartitionMorphism>> {
    m.require_fusion()?;
    let f = m.map.values();
    let mut steps = Vec::new();
    let mut current = m.source.clone();
    // position of each original point inside the current support
    let mut pos: Vec<usize> = (0..f.len()).collect();
    let mut size = f.len();
    let mut first_in_fibre: Vec<Option<usize>> = vec![None; m.map.target_size()];
    for x in 0..f.len() {
        let y = f[x];
        let Some(rep) = first_in_fibre[y] else {
            first_in_fibre[y] = Some(x);
            continue;
        };
        let (keep, drop) = (pos[rep].min(pos[x]), pos[rep].max(pos[x]));
        let values: Vec<usize> = (0..size)
            .map(|z| match z.cmp(&drop) {
                core::cmp::Ordering::Less => z,
                core::cmp::Ordering::Equal => keep,
                core::cmp::Ordering::Greater => z - 1,
            })
            .collect();
        let glue = SetMap::new(size - 1, values)?;
        let step = PartitionMorphism::fusion(current.clone(), glue.clone())?;
        current = step.target.clone();
        for p in pos.iter_mut() {
            *p = glue.apply(*p);
        }
        size -= 1;
        steps.push(step);
    }
    // what is left is injective: current support point pos[x] goes to f[x]
    let mut values = vec![usize::MAX; size];
    for x in 0..f.len() {
        values[pos[x]] = f[x];
    }
    let last = SetMap::new(m.map.target_size(), values)?;
    if !last.is_identity() {
        steps.push(PartitionMorphism::fusion(current, last)?);
    }
    Ok(steps)
}

/// Composite of a decomposition; the identity on `source` for an empty list.
pub fn compose_all(source: &Partition, steps: &[PartitionMorphism]) -> Result<PartitionMorphism> {
    let mut acc = PartitionMorphism::identity(source.clone());
    for s in steps {
        acc = acc.then(s)?;
    }
    Ok(acc)
}

/// Finite multigraph with a marked vertex subset; parallel edges and loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    pub vertices: usize,
    pub marked: Vec<bool>,
    pub edges: Vec<(usize, usize)>,
}

impl MarkedGraph {
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.labels().1
    }

    /// `b₁ = |E| − |V| + #components`.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + self.components() - self.vertices
    }

    /// The graph with all marked vertices identified to one vertex.
    pub fn collapse_marked(&self) -> MarkedGraph {
        let mut new_index = vec![0; self.vertices];
        let mut next = 1;
        for v in 0..self.vertices {
            if self.marked[v] {
                new_index[v] = 0;
            } else {
                new_index[v] = next;
                next += 1;
            }
        }
        let mut marked = vec![false; next];
        marked[0] = true;
        MarkedGraph {
            vertices: next,
            marked,
            edges: self.edges.iter().map(|&(a, b)| (new_index[a], new_index[b])).collect(),
        }
    }
}

/// The mapping cylinder of `s ↠ c` as a graph: vertices `s ⊔ c` with `s`
/// marked (indices `0..|s|`), one edge `x -- [x]` per support point.
pub fn cylinder_graph(lambda: &Partition) -> MarkedGraph {
    let m = lambda.support();
    let c = lambda.num_blocks();
    let mut marked = vec![false; m + c];
    marked[..m].iter_mut().for_each(|b| *b = true);
    MarkedGraph {
        vertices: m + c,
        marked,
        edges: (0..m).map(|x| (x, m + lambda.block_of(x))).collect(),
    }
}

/// `b₁` of the cylinder with the support collapsed to a point.
pub fn collapsed_b1(lambda: &Partition) -> usize {
    cylinder_graph(lambda).collapse_marked().first_betti()
}

/// Strictness through first homology of the collapsed cylinders: the induced
/// map `H₁(Cyl_Λ/s) → H₁(Cyl_Λ′/s′)` must be an isomorphism of free abelian groups.
///
/// `H₁(Cyl_Λ/s)` is the lattice of vectors in `ℤ^s` with zero sum on every
/// block; the induced map pushes coefficients forward along `f`.
pub fn strictness_via_h1(m: &PartitionMorphism) -> Result<bool> {
    m.require_fusion()?;
    let source_basis = cycle_basis(&m.source);
    let target_basis = cycle_basis(&m.target);
    if source_basis.len() != target_basis.len() {
        return Ok(false);
    }
    let k = source_basis.len();
    if k == 0 {
        return Ok(true);
    }
    // coordinates of f_*(v) in the target basis: value at each non-minimal block element
    let mut matrix: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for &(a, b) in &source_basis {
        let mut image = vec![0i64; m.target.support()];
        image[m.map.apply(b)] += 1;
        image[m.map.apply(a)] -= 1;
        matrix.push(target_basis.iter().map(|&(_, tb)| BigInt::from(image[tb])).collect());
    }
    Ok(determinant(matrix).abs().is_one())
}

/// Basis `e_b − e_a` of block-sum-zero vectors, `a` the minimum of its block.
fn cycle_basis(p: &Partition) -> Vec<(usize, usize)> {
    p.blocks().iter().flat_map(|b| b[1..].iter().map(move |&x| (b[0], x))).collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// The fusion `Λ → (c(Δ), c(Λ∧Δ))` induced by `s ↠ c(Δ)`.
pub fn induced_fusion(delta: &Partition, lambda: &Partition) -> Result<PartitionMorphism> {
    if delta.support() != lambda.support() {
        return Err(Error::SupportMismatch { left: delta.support(), right: lambda.support() });
    }
    let map = SetMap::new(delta.num_blocks(), delta.labels().to_vec())?;
    PartitionMorphism::fusion(lambda.clone(), map)
}

/// `Δ` is good relative to `Λ` when `e(Λ) = |c(Δ)| − |c(Λ∧Δ)|`.
pub fn is_good(delta: &Partition, lambda: &Partition) -> Result<bool> {
    let meet = lambda.meet(delta)?;
    Ok(lambda.excess() + meet.num_blocks() == delta.num_blocks())
}

/// Verdicts of the pushout graph `c(Λ) ← s → c(Δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphVerdict {
    /// Every component is a tree.
    pub forest: bool,
    /// Number of components equals `|c(Λ∧Δ)|`.
    pub components_match: bool,
    /// The whole graph is one tree.
    pub connected_tree: bool,
}

impl GraphVerdict {
    pub fn good(&self) -> bool {
        self.forest && self.components_match
    }
}

/// Bipartite multigraph on `c(Λ) ⊔ c(Δ)` with one edge per support point.
pub fn pushout_graph(delta: &Partition, lambda: &Partition) -> Result<MarkedGraph> {
    if delta.support() != lambda.support() {
        return Err(Error::SupportMismatch { left: delta.support(), right: lambda.support() });
    }
    let cl = lambda.num_blocks();
    let mut marked = vec![true; cl];
    marked.extend(core::iter::repeat(false).take(delta.num_blocks()));
    Ok(MarkedGraph {
        vertices: cl + delta.num_blocks(),
        marked,
        edges: (0..lambda.support())
            .map(|x| (lambda.block_of(x), cl + delta.block_of(x)))
            .collect(),
    })
}

pub fn graph_verdict(delta: &Partition, lambda: &Partition) -> Result<GraphVerdict> {
    let g = pushout_graph(delta, lambda)?;
    let comps = g.components();
    let forest = g.first_betti() == 0;
    let meet = lambda.meet(delta)?;
    Ok(GraphVerdict {
        forest,
        components_match: comps == meet.num_blocks(),
        connected_tree: forest && comps == 1,
    })
}

/// Goodness through the pushout graph: a disjoint union of trees realizing `c(Λ∧Δ)`.
pub fn goodness_via_graph(delta: &Partition, lambda: &Partition) -> Result<bool> {
    Ok(graph_verdict(delta, lambda)?.good())
}

/// Every `Δ` on the support of `Λ` that is bad relative to `Λ`, sorted.
pub fn bad_diagonals(lambda: &Partition, cap: usize) -> Result<Vec<Partition>> {
    if lambda.support() > cap {
        return Err(Error::CapExceeded { what: "partition support", size: lambda.support(), cap });
    }
    let mut out = Vec::new();
    for delta in Partition::all(lambda.support()) {
        if !is_good(&delta, lambda)? {
            out.push(delta);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(m, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn two_pairs() -> Partition {
        p(4, &[&[0, 1], &[2, 3]])
    }

    #[test]
    fn factor_examples() {
        let id = PartitionMorphism::identity(two_pairs());
        let (f, r) = factor(&id);
        assert!(f.map().is_identity() && r.map().is_identity());
        assert_eq!(f.target(), &two_pairs());

        let refine = PartitionMorphism::new(two_pairs(), Partition::discrete(4), SetMap::identity(4)).unwrap();
        let (f, r) = factor(&refine);
        assert_eq!(f.target(), &two_pairs());
        assert_eq!(r, refine);

        let glue = SetMap::new(3, vec![0, 1, 1, 2]).unwrap();
        let m = PartitionMorphism::new(two_pairs(), Partition::indiscrete(3), glue).unwrap();
        let (f, r) = factor(&m);
        assert_eq!(f.target(), &Partition::indiscrete(3));
        assert!(f.is_fusion() && r.is_refinement());
        assert_eq!(f.then(&r).unwrap(), m);
    }

    #[test]
    fn morphism_requires_image_below_target() {
        let glue = SetMap::new(3, vec![0, 1, 1, 2]).unwrap();
        assert!(PartitionMorphism::new(two_pairs(), Partition::discrete(3), glue).is_ok());
        assert_eq!(
            PartitionMorphism::new(Partition::discrete(4), two_pairs(), SetMap::identity(4)).unwrap_err(),
            Error::NotAMorphism
        );
    }

    #[test]
    fn strictness_examples() {
        let across = PartitionMorphism::fusion(two_pairs(), SetMap::new(3, vec![0, 1, 1, 2]).unwrap()).unwrap();
        assert!(is_strict_fusion(&across).unwrap());
        assert!(strictness_via_h1(&across).unwrap());
        let within = PartitionMorphism::fusion(two_pairs(), SetMap::new(3, vec![0, 0, 1, 2]).unwrap()).unwrap();
        assert!(!is_strict_fusion(&within).unwrap());
        assert!(!strictness_via_h1(&within).unwrap());
        let id = PartitionMorphism::identity(two_pairs());
        assert!(is_strict_fusion(&id).unwrap() && strictness_via_h1(&id).unwrap());
        let refine = PartitionMorphism::new(two_pairs(), Partition::discrete(4), SetMap::identity(4)).unwrap();
        assert_eq!(is_strict_fusion(&refine), Err(Error::NotAFusion));
        assert_eq!(strictness_via_h1(&refine), Err(Error::NotAFusion));
    }

    #[test]
    fn decomposition_examples() {
        assert!(decompose_elementary(&PartitionMorphism::identity(two_pairs())).unwrap().is_empty());

        // {0,2} ↦ a, {1,3} ↦ b: the second glue lands inside one block
        let f = PartitionMorphism::fusion(two_pairs(), SetMap::new(2, vec![0, 1, 0, 1]).unwrap()).unwrap();
        assert!(!is_strict_fusion(&f).unwrap());
        let steps = decompose_elementary(&f).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps.iter().all(|s| s.map().is_elementary()));
        assert_eq!(steps.iter().map(|s| is_strict_fusion(s).unwrap()).collect::<Vec<_>>(), vec![true, false]);
        assert_eq!(compose_all(f.source(), &steps).unwrap(), f);

        let three_pairs = p(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        let chain = PartitionMorphism::fusion(three_pairs, SetMap::new(4, vec![0, 1, 1, 2, 2, 3]).unwrap()).unwrap();
        assert!(is_strict_fusion(&chain).unwrap());
        let steps = decompose_elementary(&chain).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps.iter().all(|s| s.map().is_elementary() && is_strict_fusion(s).unwrap()));
        assert_eq!(compose_all(chain.source(), &steps).unwrap(), chain);

        let within = PartitionMorphism::fusion(two_pairs(), SetMap::new(3, vec![0, 0, 1, 2]).unwrap()).unwrap();
        let steps = decompose_elementary(&within).unwrap();
        assert!(steps.iter().any(|s| !is_strict_fusion(s).unwrap()));
        assert_eq!(compose_all(within.source(), &steps).unwrap(), within);
    }

    #[test]
    fn cylinder_examples() {
        assert_eq!(collapsed_b1(&Partition::indiscrete(3)), 2);
        assert_eq!(collapsed_b1(&Partition::discrete(4)), 0);
        assert_eq!(collapsed_b1(&two_pairs()), 2);
        let g = cylinder_graph(&two_pairs());
        assert_eq!(g.vertices, 6);
        assert_eq!(g.first_betti(), 0);
    }

    #[test]
    fn goodness_examples() {
        let delta_good = p(4, &[&[0], &[1, 2], &[3]]);
        assert!(is_good(&delta_good, &two_pairs()).unwrap());
        assert!(goodness_via_graph(&delta_good, &two_pairs()).unwrap());
        let g = pushout_graph(&delta_good, &two_pairs()).unwrap();
        assert_eq!((g.vertices, g.edges.len(), g.first_betti()), (5, 4, 0));

        let delta_bad = p(4, &[&[0, 2], &[1, 3]]);
        assert!(!is_good(&delta_bad, &two_pairs()).unwrap());
        assert!(!goodness_via_graph(&delta_bad, &two_pairs()).unwrap());
        let g = pushout_graph(&delta_bad, &two_pairs()).unwrap();
        assert_eq!((g.vertices, g.edges.len(), g.first_betti()), (4, 4, 1));

        assert!(is_good(&Partition::discrete(4), &two_pairs()).unwrap());
        for n in 2..6 {
            let ind = Partition::indiscrete(n);
            assert!(!goodness_via_graph(&ind, &ind).unwrap());
            assert_eq!(pushout_graph(&ind, &ind).unwrap().first_betti(), n - 1);
        }
        assert!(is_good(&Partition::discrete(3), &two_pairs()).is_err());
    }

    #[test]
    fn bad_diagonal_examples() {
        assert_eq!(bad_diagonals(&Partition::indiscrete(2), 9).unwrap(), vec![Partition::indiscrete(2)]);
        assert!(bad_diagonals(&Partition::discrete(4), 9).unwrap().is_empty());
        let bad = bad_diagonals(&Partition::indiscrete(3), 9).unwrap();
        assert_eq!(bad.len(), 4);
        assert!(bad.iter().all(|d| !d.is_discrete()));
    }

    #[test]
    fn bareiss_determinant() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(determinant(m(&[&[2, 4], &[6, 8]])), BigInt::from(-8));
        assert_eq!(determinant(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), BigInt::zero());
        assert_eq!(determinant(m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]])), BigInt::from(-3));
    }
}
