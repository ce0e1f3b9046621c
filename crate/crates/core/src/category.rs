//! The categories `E_n` of irreducible partitions of excess `n` and strict
//! fusions, one object per isomorphism class, with their filtration by the
//! number of components.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::{image_partition, restricted_growth_strings, Partition, SetMap};
use crate::perm::{GroupPresentation, Perm};
use crate::unionfind::UnionFind;

pub const DEFAULT_N_CAP: usize = 5;

/// Integer partitions of `n`, parts weakly decreasing, in reverse lexicographic order.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One canonical object per isomorphism class: block sizes `pᵢ + 1` for each
/// integer partition `p` of `n`, ordered by number of blocks.
pub fn canonical_objects(n: usize) -> Vec<Partition> {
    let mut objs: Vec<Partition> = integer_partitions(n)
        .into_iter()
        .map(|p| Partition::from_block_sizes(&p.iter().map(|x| x + 1).collect::<Vec<_>>()))
        .collect();
    objs.sort_by(|a, b| a.num_blocks().cmp(&b.num_blocks()).then_with(|| b.block_sizes().cmp(&a.block_sizes())));
    objs
}

/// Every strict fusion `source → target`, as set maps in lexicographic order.
///
/// A map is a strict fusion exactly when it sends each block of the source
/// into one block of the target, the graph on `c(source) ⊔ s(target)` with an
/// edge `[x] -- f(x)` per source point is a forest, and the images of the blocks
/// connect every target block.
pub fn strict_fusions(source: &Partition, target: &Partition) -> Vec<SetMap> {
    let m = source.support();
    let mt = target.support();
    let c = source.num_blocks();
    let mut out = Vec::new();
    if source.excess() != target.excess() || (m == 0) != (mt == 0) {
        return out;
    }
    struct State {
        values: Vec<usize>,
        hits: Vec<usize>,
        unhit: usize,
        block_target: Vec<Option<usize>>,
    }
    fn go(
        x: usize,
        st: &mut State,
        uf: &UnionFind,
        source: &Partition,
        target: &Partition,
        out: &mut Vec<SetMap>,
    ) {
        let m = source.support();
        let c = source.num_blocks();
        if x == m {
            if st.unhit == 0 {
                let f = SetMap::new(target.support(), st.values.clone()).expect("values in range");
                if image_partition(&f, source).is_ok_and(|img| img == *target) {
                    out.push(f);
                }
            }
            return;
        }
        if m - x < st.unhit {
            return;
        }
        let b = source.block_of(x);
        for y in 0..target.support() {
            let tb = target.block_of(y);
            if st.block_target[b].is_some_and(|t| t != tb) {
                continue;
            }
            let mut next = uf.clone();
            if !next.union(b, c + y) {
                continue;
            }
            let previous = st.block_target[b];
            st.block_target[b] = Some(tb);
            st.values[x] = y;
            st.hits[y] += 1;
            if st.hits[y] == 1 {
                st.unhit -= 1;
            }
            go(x + 1, st, &next, source, target, out);
            if st.hits[y] == 1 {
                st.unhit += 1;
            }
            st.hits[y] -= 1;
            st.block_target[b] = previous;
        }
    }
    let mut st = State { values: vec![0; m], hits: vec![0; mt], unhit: mt, block_target: vec![None; c] };
    go(0, &mut st, &UnionFind::new(c + mt), source, target, &mut out);
    out
}

/// `Aut(Λ)`, generated by transpositions of adjacent elements inside blocks
/// and swaps of consecutive blocks of equal size.
pub fn automorphism_group(lambda: &Partition) -> GroupPresentation {
    let m = lambda.support();
    let mut gens = Vec::new();
    for b in lambda.blocks() {
        for w in b.windows(2) {
            gens.push(Perm::transposition(m, w[0], w[1]));
        }
    }
    let mut by_size: BTreeMap<usize, Vec<&Vec<usize>>> = BTreeMap::new();
    for b in lambda.blocks() {
        by_size.entry(b.len()).or_default().push(b);
    }
    for blocks in by_size.values() {
        for pair in blocks.windows(2) {
            let mut p = Perm::identity(m);
            for (&x, &y) in pair[0].iter().zip(pair[1].iter()) {
                p.0[x] = y;
                p.0[y] = x;
            }
            gens.push(p);
        }
    }
    GroupPresentation::new(m, gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryTable {
    pub n: usize,
    pub objects: Vec<Partition>,
    /// `homs[i][j]`: the morphisms `objects[i] → objects[j]`.
    pub homs: Vec<Vec<Vec<SetMap>>>,
    pub automorphisms: Vec<GroupPresentation>,
}

impl CategoryTable {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Filtration index `i = |c(Λ)|`; the support has `n + i` points.
    pub fn stratum(&self, object: usize) -> usize {
        self.objects[object].num_blocks()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.objects.iter().position(|o| o == p)
    }

    pub fn hom(&self, from: usize, to: usize) -> &[SetMap] {
        &self.homs[from][to]
    }

    /// Number of orbits of `Hom(from, to)` under post-composition with `Aut(to)`:
    /// morphisms counted up to relabelling of the target.
    pub fn hom_classes(&self, from: usize, to: usize) -> usize {
        let maps = &self.homs[from][to];
        let position: BTreeMap<&SetMap, usize> = maps.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut uf = UnionFind::new(maps.len());
        for g in &self.automorphisms[to].generators {
            let g = SetMap::new(g.degree(), g.0.clone()).expect("permutation");
            for (i, f) in maps.iter().enumerate() {
                let gf = f.then(&g).expect("composable");
                uf.union(i, position[&gf]);
            }
        }
        uf.labels().1
    }

    /// Composing any two composable listed morphisms gives a listed morphism.
    /// Returns the first failing triple `(i, j, k)` and maps.
    pub fn composition_witness(&self) -> Option<(usize, usize, usize, SetMap, SetMap)> {
        let sets: Vec<Vec<BTreeSet<&SetMap>>> =
            self.homs.iter().map(|row| row.iter().map(|h| h.iter().collect()).collect()).collect();
        for i in 0..self.len() {
            for j in 0..self.len() {
                for k in 0..self.len() {
                    for f in &self.homs[i][j] {
                        for g in &self.homs[j][k] {
                            let gf = f.then(g).expect("composable");
                            if !sets[i][k].contains(&gf) {
                                return Some((i, j, k, f.clone(), g.clone()));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

pub fn enumerate_en(n: usize, cap: usize) -> Result<CategoryTable> {
    if n > cap {
        return Err(Error::CapExceeded { what: "excess n", size: n, cap });
    }
    let objects = canonical_objects(n);
    let homs = objects
        .iter()
        .map(|a| objects.iter().map(|b| strict_fusions(a, b)).collect())
        .collect();
    let automorphisms = objects.iter().map(automorphism_group).collect();
    Ok(CategoryTable { n, objects, homs, automorphisms })
}

/// Isomorphism-class count from the full, non-skeletal enumeration: every
/// partition of every support `n+1 … 2n` that is irreducible of excess `n`,
/// reduced to canonical form.
pub fn brute_force_class_count(n: usize) -> usize {
    let mut classes: BTreeSet<Partition> = BTreeSet::new();
    for m in n + 1..=2 * n {
        for rgs in restricted_growth_strings(m) {
            let p = Partition::from_labels(&rgs);
            if p.is_irreducible() && p.excess() == n {
                classes.insert(p.canonicalize());
            }
        }
    }
    classes.len()
}

/// The full subcategory on objects with at most `i` components; `i = 0` is empty.
pub fn filtration(table: &CategoryTable, i: usize) -> Result<CategoryTable> {
    if i > table.n {
        return Err(Error::OutOfRange { what: "filtration index", value: i, min: 0, max: table.n });
    }
    let keep: Vec<usize> = (0..table.len()).filter(|&o| table.stratum(o) <= i).collect();
    Ok(CategoryTable {
        n: table.n,
        objects: keep.iter().map(|&o| table.objects[o].clone()).collect(),
        homs: keep.iter().map(|&a| keep.iter().map(|&b| table.homs[a][b].clone()).collect()).collect(),
        automorphisms: keep.iter().map(|&o| table.automorphisms[o].clone()).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationViolation {
    pub stage: usize,
    pub from: Partition,
    pub to: Partition,
    pub map: SetMap,
    pub reason: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceFiltrationCertificate {
    pub stages: usize,
    pub violation: Option<FiltrationViolation>,
}

impl NiceFiltrationCertificate {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `E_n^{i−1} ⊂ E_n^i` is a nice extension for the opposite
/// category at every stage `i = 1 … n`, starting from the empty `E_n^0`:
/// no morphism runs from an old object into a new one, and every morphism
/// between new objects is an isomorphism.
pub fn verify_nice_filtration(table: &CategoryTable) -> NiceFiltrationCertificate {
    for stage in 1..=table.n {
        for a in 0..table.len() {
            for b in 0..table.len() {
                if table.stratum(b) != stage {
                    continue;
                }
                let sa = table.stratum(a);
                for f in &table.homs[a][b] {
                    let reason = if sa < stage {
                        Some("morphism from an old object into a new one")
                    } else if sa == stage && !f.is_bijective() {
                        Some("non-invertible morphism between new objects")
                    } else {
                        None
                    };
                    if let Some(reason) = reason {
                        return NiceFiltrationCertificate {
                            stages: table.n,
                            violation: Some(FiltrationViolation {
                                stage,
                                from: table.objects[a].clone(),
                                to: table.objects[b].clone(),
                                map: f.clone(),
                                reason,
                            }),
                        };
                    }
                }
            }
        }
    }
    NiceFiltrationCertificate { stages: table.n, violation: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn e1_is_a_groupoid() {
        let t = enumerate_en(1, DEFAULT_N_CAP).unwrap();
        assert_eq!(t.objects, vec![Partition::indiscrete(2)]);
        assert_eq!(t.automorphisms[0].order, BigUint::from(2u32));
        assert!(t.homs[0][0].iter().all(SetMap::is_bijective));
        assert!(verify_nice_filtration(&t).passed());
    }

    #[test]
    fn e2_table() {
        let t = enumerate_en(2, DEFAULT_N_CAP).unwrap();
        let tri = t.index_of(&Partition::indiscrete(3)).unwrap();
        let pairs = t.index_of(&Partition::from_block_sizes(&[2, 2])).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.automorphisms[pairs].order, BigUint::from(8u32));
        assert_eq!(t.automorphisms[tri].order, BigUint::from(6u32));
        assert_eq!(t.hom(pairs, pairs).len(), 8);
        assert_eq!(t.hom(tri, tri).len(), 6);
        assert_eq!(t.hom(pairs, tri).len(), 24);
        assert_eq!(t.hom_classes(pairs, tri), 4);
        assert!(t.hom(tri, pairs).is_empty());
        assert!(t.composition_witness().is_none());
    }

    #[test]
    fn e3_top_stratum() {
        let t = enumerate_en(3, DEFAULT_N_CAP).unwrap();
        assert_eq!(t.len(), 3);
        let f2 = filtration(&t, 2).unwrap();
        let new: Vec<usize> = (0..t.len()).filter(|&o| t.stratum(o) == 3).collect();
        assert_eq!(t.len() - f2.len(), 1);
        assert_eq!(t.objects[new[0]], Partition::from_block_sizes(&[2, 2, 2]));
        assert_eq!(t.automorphisms[new[0]].order, BigUint::from(48u32));
        assert!(filtration(&t, 0).unwrap().is_empty());
        assert!(filtration(&t, 4).is_err());
    }

    #[test]
    fn injected_backward_morphism_fails() {
        let mut t = enumerate_en(2, DEFAULT_N_CAP).unwrap();
        let tri = t.index_of(&Partition::indiscrete(3)).unwrap();
        let pairs = t.index_of(&Partition::from_block_sizes(&[2, 2])).unwrap();
        t.homs[tri][pairs].push(SetMap::new(4, vec![0, 1, 2]).unwrap());
        let cert = verify_nice_filtration(&t);
        let v = cert.violation.unwrap();
        assert_eq!((v.stage, v.from, v.to), (2, Partition::indiscrete(3), Partition::from_block_sizes(&[2, 2])));
    }

    #[test]
    fn integer_partition_counts() {
        let p: Vec<usize> = (0..8).map(|n| integer_partitions(n).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }
}
