//! Quotients of finite simplicial sets: collapsing subobjects, gluing cells
//! along an equivalence relation, and orbit sets of permutation actions.

use alloc::vec;
use alloc::vec::Vec;

use super::op::Op;
use super::sset::{CellId, Simplex, SimplicialSet, Subobject};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// A quotient together with the class of every cell of the original;
/// `None` marks cells sent to the basepoint.
#[derive(Clone, Debug)]
pub struct Glued {
    pub set: SimplicialSet,
    pub class_of: Vec<Vec<Option<usize>>>,
}

impl Glued {
    pub fn image(&self, c: CellId) -> Option<CellId> {
        self.class_of[c.dim][c.id].map(|id| CellId { dim: c.dim, id })
    }
}

/// Builder for a quotient that identifies nondegenerate cells of equal
/// dimension and collapses a family of cells to a basepoint.
///
/// The identifications must be compatible with faces: identified cells need
/// faces that become equal, and collapsed cells need collapsed faces.
/// `finish` checks both.
pub struct Gluing<'a> {
    base: &'a SimplicialSet,
    classes: Vec<UnionFind>,
    collapsed: Vec<Vec<bool>>,
}

impl<'a> Gluing<'a> {
    pub fn new(base: &'a SimplicialSet) -> Self {
        let top = base.dim().map_or(0, |d| d + 1);
        Gluing {
            base,
            classes: (0..top).map(|k| UnionFind::new(base.count(k))).collect(),
            collapsed: (0..top).map(|k| vec![false; base.count(k)]).collect(),
        }
    }

    pub fn identify(&mut self, a: CellId, b: CellId) -> Result<()> {
        if a.dim != b.dim {
            return Err(Error::Invalid(alloc::format!(
                "cannot identify cells of dimensions {} and {}",
                a.dim, b.dim
            )));
        }
        self.classes[a.dim].union(a.id, b.id);
        Ok(())
    }

    pub fn collapse(&mut self, c: CellId) {
        self.collapsed[c.dim][c.id] = true;
    }

    pub fn collapse_all(&mut self, s: &Subobject) {
        for c in s.cells() {
            self.collapse(c);
        }
    }

    /// Builds the quotient. With `pointed`, a fresh basepoint vertex with id 0
    /// receives every collapsed cell; otherwise nothing may be collapsed and the
    /// basepoint of the base, if any, is carried along.
    pub fn finish(mut self, pointed: bool) -> Result<Glued> {
        let base = self.base;
        let top = self.classes.len();
        let mut labels: Vec<Vec<usize>> = Vec::with_capacity(top);
        let mut class_collapsed: Vec<Vec<bool>> = Vec::with_capacity(top);
        for k in 0..top {
            let (lab, count) = self.classes[k].labels();
            let mut cc = vec![false; count];
            for (id, &l) in lab.iter().enumerate() {
                cc[l] |= self.collapsed[k][id];
            }
            labels.push(lab);
            class_collapsed.push(cc);
        }
        if !pointed && class_collapsed.iter().any(|c| c.iter().any(|&b| b)) {
            return Err(Error::MissingBasepoint);
        }
        let mut out = SimplicialSet::new();
        let basepoint = if pointed { Some(out.add_vertex()) } else { None };
        let mut new_id: Vec<Vec<Option<usize>>> = Vec::with_capacity(top);
        let mut class_of: Vec<Vec<Option<usize>>> = Vec::with_capacity(top);
        for k in 0..top {
            let count = class_collapsed[k].len();
            let mut ids: Vec<Option<usize>> = vec![None; count];
            let mut faces_of_class: Vec<Option<Vec<Simplex>>> = vec![None; count];
            for id in 0..base.count(k) {
                let l = labels[k][id];
                let cell = CellId { dim: k, id };
                let mapped: Vec<Simplex> = base
                    .faces_of(cell)
                    .iter()
                    .map(|f| match new_id[f.cell.dim][labels[f.cell.dim][f.cell.id]] {
                        Some(nid) => Simplex { cell: CellId { dim: f.cell.dim, id: nid }, deg: f.deg.clone() },
                        None => Simplex {
                            cell: CellId { dim: 0, id: basepoint.unwrap_or(usize::MAX) },
                            deg: Op::constant(k - 1),
                        },
                    })
                    .collect();
                if class_collapsed[k][l] {
                    if mapped.iter().any(|f| f.cell.dim > 0 || Some(f.cell.id) != basepoint) {
                        return Err(Error::NotClosed { dim: k, cell: id });
                    }
                    continue;
                }
                match &faces_of_class[l] {
                    None => faces_of_class[l] = Some(mapped),
                    Some(existing) => {
                        if *existing != mapped {
                            return Err(Error::Invalid(alloc::format!(
                                "identified {k}-cells have different faces (cell {id})"
                            )));
                        }
                    }
                }
            }
            for l in 0..count {
                if let Some(faces) = faces_of_class[l].take() {
                    ids[l] = Some(out.add_cell(k, faces));
                }
            }
            class_of.push(labels[k].iter().map(|&l| ids[l]).collect());
            new_id.push(ids);
        }
        match basepoint {
            Some(b) => out.set_basepoint(Some(b)),
            None => out.set_basepoint(base.basepoint().and_then(|b| class_of[0][b])),
        }
        Ok(Glued { set: out, class_of })
    }
}

/// `A / S`, pointed at the image of `S` (and of the basepoint of `A`, if any).
/// An empty `S` on an unpointed `A` adds a disjoint basepoint.
pub fn quotient(a: &SimplicialSet, s: &Subobject) -> Result<Glued> {
    s.check_closed(a)?;
    let mut g = Gluing::new(a);
    g.collapse_all(s);
    if let Some(b) = a.basepoint() {
        g.collapse(CellId { dim: 0, id: b });
    }
    g.finish(true)
}

/// A group acting on a simplicial set through permutations of its
/// nondegenerate cells, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    /// `generators[g][k]` permutes the nondegenerate `k`-simplices.
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl PermutationAction {
    pub fn act(&self, g: usize, c: CellId) -> CellId {
        CellId { dim: c.dim, id: self.generators[g][c.dim][c.id] }
    }

    /// Checks that every generator is a simplicial automorphism fixing the basepoint.
    pub fn check(&self, x: &SimplicialSet) -> Result<()> {
        for g in 0..self.generators.len() {
            for k in 0..x.dim().map_or(0, |d| d + 1) {
                let perm = self.generators[g].get(k).map(Vec::as_slice).unwrap_or(&[]);
                let mut hit = vec![false; x.count(k)];
                if perm.len() != x.count(k) {
                    return Err(Error::NonSimplicialAction { dim: k, cell: perm.len() });
                }
                for (id, &v) in perm.iter().enumerate() {
                    if v >= hit.len() || hit[v] {
                        return Err(Error::NonSimplicialAction { dim: k, cell: id });
                    }
                    hit[v] = true;
                }
                for id in 0..x.count(k) {
                    let c = CellId { dim: k, id };
                    let image = self.act(g, c);
                    for (f, fg) in x.faces_of(c).iter().zip(x.faces_of(image)) {
                        let moved = Simplex { cell: self.act(g, f.cell), deg: f.deg.clone() };
                        if moved != *fg {
                            return Err(Error::NonSimplicialAction { dim: k, cell: id });
                        }
                    }
                }
            }
            if let Some(b) = x.basepoint() {
                if self.generators[g][0][b] != b {
                    return Err(Error::NonSimplicialAction { dim: 0, cell: b });
                }
            }
        }
        Ok(())
    }
}

/// The orbit simplicial set `A / G`.
pub fn quotient_by_group(a: &SimplicialSet, action: &PermutationAction) -> Result<Glued> {
    action.check(a)?;
    let mut g = Gluing::new(a);
    for gen in 0..action.generators.len() {
        for c in a.all_cells() {
            g.identify(c, action.act(gen, c))?;
        }
    }
    g.finish(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::models;

    #[test]
    fn interval_mod_endpoints() {
        let i = models::interval();
        let ends = Subobject::from_predicate(&i, |c| c.dim == 0);
        let q = quotient(&i, &ends).unwrap();
        q.set.verify().unwrap();
        assert_eq!(q.set.counts(), vec![1, 1]);
        assert_eq!(q.set.basepoint(), Some(0));
    }

    #[test]
    fn empty_collapse_adds_basepoint() {
        let q = quotient(&models::points(2), &Subobject::empty(&models::points(2))).unwrap();
        assert_eq!(q.set.counts(), vec![3]);
    }

    #[test]
    fn non_closed_collapse_is_rejected() {
        let i = models::interval();
        let edge = Subobject::from_predicate(&i, |c| c.dim == 1);
        assert!(matches!(quotient(&i, &edge), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn swap_two_points() {
        let x = models::points(2);
        let act = PermutationAction { generators: vec![vec![vec![1, 0]]] };
        assert_eq!(quotient_by_group(&x, &act).unwrap().set.counts(), vec![1]);
    }

    #[test]
    fn rotation_of_hexagon_halves_cells() {
        let x = models::polygon(6);
        let rot3 = |i: usize| (i + 3) % 6;
        let act = PermutationAction { generators: vec![vec![(0..6).map(rot3).collect(), (0..6).map(rot3).collect()]] };
        let q = quotient_by_group(&x, &act).unwrap();
        q.set.verify().unwrap();
        assert_eq!(q.set.counts(), vec![3, 3]);
        let reflect = PermutationAction { generators: vec![vec![(0..6).map(|i| (6 - i) % 6).collect(), (0..6).collect()]] };
        assert!(matches!(quotient_by_group(&x, &reflect), Err(Error::NonSimplicialAction { .. })));
    }
}
