//! Finite simplicial sets stored by their nondegenerate simplices.
//!
//! Every nondegenerate `k`-simplex records its `k+1` faces as general
//! simplices `ρ*(y)`: a nondegenerate simplex `y` together with a monotone
//! surjection `ρ`. Arbitrary simplicial operators are evaluated through the
//! simplicial identities from this data.

use alloc::vec;
use alloc::vec::Vec;

use super::op::Op;
use crate::error::{Error, Result};

/// Address of a nondegenerate simplex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CellId {
    pub dim: usize,
    pub id: usize,
}

/// A possibly degenerate simplex `deg*(cell)`; `deg` is a surjection onto `[cell.dim]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex {
    pub cell: CellId,
    pub deg: Op,
}

impl Simplex {
    pub fn nondegenerate(cell: CellId) -> Self {
        Simplex { cell, deg: Op::identity(cell.dim) }
    }

    /// The totally degenerate `n`-simplex on a vertex.
    pub fn degenerate_vertex(vertex: usize, n: usize) -> Self {
        Simplex { cell: CellId { dim: 0, id: vertex }, deg: Op::constant(n) }
    }

    pub fn dim(&self) -> usize {
        self.deg.domain_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.deg.is_identity()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialSet {
    /// `faces[k][id]` lists the faces `d_0, …, d_k` of a nondegenerate `k`-simplex.
    faces: Vec<Vec<Vec<Simplex>>>,
    basepoint: Option<usize>,
}

impl SimplicialSet {
    pub fn new() -> Self {
        SimplicialSet { faces: Vec::new(), basepoint: None }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.add_cell(0, Vec::new())
    }

    /// Adds a nondegenerate cell with the given faces and returns its id.
    pub fn add_cell(&mut self, dim: usize, faces: Vec<Simplex>) -> usize {
        debug_assert!(dim == 0 && faces.is_empty() || faces.len() == dim + 1);
        debug_assert!(faces.iter().all(|f| f.dim() + 1 == dim));
        while self.faces.len() <= dim {
            self.faces.push(Vec::new());
        }
        self.faces[dim].push(faces);
        self.faces[dim].len() - 1
    }

    pub fn set_basepoint(&mut self, vertex: Option<usize>) {
        self.basepoint = vertex;
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn is_pointed(&self) -> bool {
        self.basepoint.is_some()
    }

    /// Highest dimension carrying cells, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        (0..self.faces.len()).rev().find(|&k| !self.faces[k].is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    /// Number of nondegenerate simplices in each dimension.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.dim().map_or(0, |d| d + 1);
        (0..top).map(|k| self.count(k)).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn faces_of(&self, cell: CellId) -> &[Simplex] {
        &self.faces[cell.dim][cell.id]
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.count(dim)).map(move |id| CellId { dim, id })
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.faces.len()).flat_map(move |k| self.cells(k))
    }

    /// Evaluates `θ*(x)` for a monotone `θ: [m] → [dim x]`.
    pub fn apply(&self, x: &Simplex, theta: &Op) -> Simplex {
        let (epi, mono) = x.deg.after(theta).factor();
        let y = self.face_along(x.cell, &mono);
        Simplex { cell: y.cell, deg: y.deg.after(&epi) }
    }

    /// `ι*(x)` for a nondegenerate `x` and an injective `ι`.
    fn face_along(&self, cell: CellId, iota: &Op) -> Simplex {
        match iota.first_missing() {
            None => Simplex::nondegenerate(cell),
            Some(r) => {
                let face = &self.faces[cell.dim][cell.id][r];
                self.apply(face, &iota.drop_missing(r))
            }
        }
    }

    pub fn face(&self, x: &Simplex, i: usize) -> Simplex {
        self.apply(x, &Op::coface(x.dim(), i))
    }

    /// Vertex `i` of a simplex, as a vertex id.
    pub fn vertex(&self, x: &Simplex, i: usize) -> usize {
        self.apply(x, &Op::vertex(x.dim(), i)).cell.id
    }

    /// Checks `d_i d_j = d_{j−1} d_i` (`i < j`) on every nondegenerate simplex,
    /// and that recorded faces are normalized.
    pub fn verify(&self) -> Result<()> {
        for k in 1..self.faces.len() {
            for id in 0..self.faces[k].len() {
                let faces = &self.faces[k][id];
                for f in faces {
                    if f.dim() + 1 != k
                        || !f.deg.is_surjective()
                        || f.deg.codomain_dim() != f.cell.dim
                        || f.cell.id >= self.count(f.cell.dim)
                    {
                        return Err(Error::NotClosed { dim: k, cell: id });
                    }
                }
                if k < 2 {
                    continue;
                }
                for j in 0..=k {
                    for i in 0..j {
                        let lhs = self.face(&faces[j], i);
                        let rhs = self.face(&faces[i], j - 1);
                        if lhs != rhs {
                            return Err(Error::Invalid(alloc::format!(
                                "simplicial identity d_{i} d_{j} fails on cell {id} of dimension {k}"
                            )));
                        }
                    }
                }
            }
        }
        if let Some(b) = self.basepoint {
            if b >= self.count(0) {
                return Err(Error::Invalid("basepoint is not a vertex".into()));
            }
        }
        Ok(())
    }

    /// Disjoint union; cells of `other` are shifted after the cells of `self`.
    pub fn disjoint_union(&self, other: &SimplicialSet) -> SimplicialSet {
        let top = self.faces.len().max(other.faces.len());
        let mut out = SimplicialSet::new();
        for k in 0..top {
            for id in 0..self.count(k) {
                out.add_cell(k, self.faces[k][id].clone());
            }
        }
        for k in 0..top {
            for id in 0..other.count(k) {
                let faces = other.faces[k][id]
                    .iter()
                    .map(|f| Simplex {
                        cell: CellId { dim: f.cell.dim, id: f.cell.id + self.count(f.cell.dim) },
                        deg: f.deg.clone(),
                    })
                    .collect();
                out.add_cell(k, faces);
            }
        }
        out
    }

    /// Reduced Euler characteristic read off the cell counts.
    pub fn reduced_euler(&self) -> i64 {
        let mut chi: i64 = 0;
        for k in 0..self.faces.len() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            chi += sign * self.count(k) as i64;
        }
        chi - 1
    }
}

/// A family of nondegenerate cells, one mask per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subobject {
    mask: Vec<Vec<bool>>,
}

impl Subobject {
    pub fn empty(x: &SimplicialSet) -> Self {
        Subobject { mask: (0..x.faces.len()).map(|k| vec![false; x.count(k)]).collect() }
    }

    pub fn full(x: &SimplicialSet) -> Self {
        Subobject { mask: (0..x.faces.len()).map(|k| vec![true; x.count(k)]).collect() }
    }

    /// Cells satisfying a predicate.
    pub fn from_predicate(x: &SimplicialSet, mut keep: impl FnMut(CellId) -> bool) -> Self {
        let mut s = Subobject::empty(x);
        for c in x.all_cells() {
            s.mask[c.dim][c.id] = keep(c);
        }
        s
    }

    /// Smallest subobject containing the given cells.
    pub fn generated_by(x: &SimplicialSet, cells: impl IntoIterator<Item = CellId>) -> Self {
        let mut s = Subobject::empty(x);
        let mut stack: Vec<CellId> = cells.into_iter().collect();
        while let Some(c) = stack.pop() {
            if s.mask[c.dim][c.id] {
                continue;
            }
            s.mask[c.dim][c.id] = true;
            for f in x.faces_of(c) {
                stack.push(f.cell);
            }
        }
        s
    }

    pub fn contains(&self, c: CellId) -> bool {
        self.mask.get(c.dim).and_then(|m| m.get(c.id)).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, c: CellId) {
        self.mask[c.dim][c.id] = true;
    }

    pub fn union(&self, other: &Subobject) -> Subobject {
        Subobject {
            mask: self
                .mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x || *y).collect())
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Subobject) -> Subobject {
        Subobject {
            mask: self
                .mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x && *y).collect())
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Subobject) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a.iter().zip(b).all(|(x, y)| !*x || *y))
    }

    pub fn is_empty(&self) -> bool {
        self.mask.iter().all(|m| m.iter().all(|b| !b))
    }

    pub fn count(&self, dim: usize) -> usize {
        self.mask.get(dim).map_or(0, |m| m.iter().filter(|b| **b).count())
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..self.mask.len()).map(|k| self.count(k)).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.mask.iter().enumerate().flat_map(|(dim, m)| {
            m.iter().enumerate().filter(|(_, b)| **b).map(move |(id, _)| CellId { dim, id })
        })
    }

    /// Closed under faces in `x`.
    pub fn check_closed(&self, x: &SimplicialSet) -> Result<()> {
        for c in self.cells() {
            for f in x.faces_of(c) {
                if !self.contains(f.cell) {
                    return Err(Error::NotClosed { dim: c.dim, cell: c.id });
                }
            }
        }
        Ok(())
    }

    /// The subobject as a simplicial set in its own right, with the cell map back into `x`.
    pub fn to_simplicial_set(&self, x: &SimplicialSet) -> Result<(SimplicialSet, Vec<Vec<usize>>)> {
        self.check_closed(x)?;
        let mut new_id: Vec<Vec<usize>> = Vec::new();
        let mut back: Vec<Vec<usize>> = Vec::new();
        let mut out = SimplicialSet::new();
        for k in 0..self.mask.len() {
            new_id.push(vec![usize::MAX; x.count(k)]);
            back.push(Vec::new());
            for id in 0..x.count(k) {
                if !self.mask[k][id] {
                    continue;
                }
                let faces = x.faces[k][id]
                    .iter()
                    .map(|f| Simplex {
                        cell: CellId { dim: f.cell.dim, id: new_id[f.cell.dim][f.cell.id] },
                        deg: f.deg.clone(),
                    })
                    .collect();
                new_id[k][id] = out.add_cell(k, faces);
                back[k].push(id);
            }
        }
        if let Some(b) = x.basepoint() {
            if self.contains(CellId { dim: 0, id: b }) {
                out.set_basepoint(Some(new_id[0][b]));
            }
        }
        Ok((out, back))
    }
}

/// Built-in small models.
pub mod models {
    use super::*;

    /// `k` isolated points.
    pub fn points(k: usize) -> SimplicialSet {
        let mut x = SimplicialSet::new();
        for _ in 0..k {
            x.add_vertex();
        }
        x
    }

    /// The standard 1-simplex.
    pub fn interval() -> SimplicialSet {
        let mut x = points(2);
        x.add_cell(1, vec![vertex_face(1), vertex_face(0)]);
        x
    }

    /// One vertex and one nondegenerate edge; pointed at the vertex.
    pub fn minimal_circle() -> SimplicialSet {
        wedge_of_circles(1)
    }

    /// One vertex and `k` loops; pointed at the vertex.
    pub fn wedge_of_circles(k: usize) -> SimplicialSet {
        let mut x = points(1);
        for _ in 0..k {
            x.add_cell(1, vec![vertex_face(0), vertex_face(0)]);
        }
        x.set_basepoint(Some(0));
        x
    }

    /// A cycle of `n ≥ 2` vertices and `n` edges; edge `i` runs from `i` to `i+1 mod n`.
    pub fn polygon(n: usize) -> SimplicialSet {
        let mut x = points(n);
        for i in 0..n {
            x.add_cell(1, vec![vertex_face((i + 1) % n), vertex_face(i)]);
        }
        x
    }

    /// The path `0 - 1 - ⋯ - n` with `n` edges.
    pub fn path(n: usize) -> SimplicialSet {
        let mut x = points(n + 1);
        for i in 0..n {
            x.add_cell(1, vec![vertex_face(i + 1), vertex_face(i)]);
        }
        x
    }

    /// Six-vertex triangulation of the real projective plane.
    pub fn real_projective_plane() -> SimplicialSet {
        let triangles: [[usize; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ];
        let mut faces: Vec<Vec<usize>> = triangles.iter().map(|t| t.to_vec()).collect();
        faces.sort();
        simplicial_complex(6, &faces)
    }

    /// Ordered simplicial complex on `n` vertices generated by the given
    /// simplices (each a strictly increasing vertex list).
    pub fn simplicial_complex(n: usize, maximal: &[Vec<usize>]) -> SimplicialSet {
        use alloc::collections::BTreeSet;
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in maximal {
            let k = s.len();
            for mask in 1u32..(1 << k) {
                all.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
            }
        }
        for v in 0..n {
            all.insert(vec![v]);
        }
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in all {
            let d = s.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(Vec::new());
            }
            by_dim[d].push(s);
        }
        let mut x = SimplicialSet::new();
        for (d, simplices) in by_dim.iter().enumerate() {
            for s in simplices {
                let faces = if d == 0 {
                    Vec::new()
                } else {
                    (0..=d)
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            let id = by_dim[d - 1].binary_search(&f).expect("face present");
                            Simplex::nondegenerate(CellId { dim: d - 1, id })
                        })
                        .collect()
                };
                x.add_cell(d, faces);
            }
        }
        x
    }

    fn vertex_face(v: usize) -> Simplex {
        Simplex::nondegenerate(CellId { dim: 0, id: v })
    }
}

#[cfg(test)]
mod tests {
    use super::models::*;
    use super::*;

    #[test]
    fn models_satisfy_identities() {
        for x in [points(3), interval(), minimal_circle(), wedge_of_circles(3), polygon(5), real_projective_plane()] {
            x.verify().unwrap();
        }
        assert_eq!(real_projective_plane().counts(), vec![6, 15, 10]);
    }

    #[test]
    fn degenerate_faces_evaluate() {
        let c = minimal_circle();
        let e = Simplex::nondegenerate(CellId { dim: 1, id: 0 });
        // s_0 e is a 2-simplex with d_0 s_0 e = e, d_2 s_0 e = s_0 d_1 e
        let s0e = Simplex { cell: e.cell, deg: Op::codegeneracy(1, 0) };
        assert_eq!(c.face(&s0e, 0), e);
        assert_eq!(c.face(&s0e, 1), e);
        assert_eq!(c.face(&s0e, 2), Simplex::degenerate_vertex(0, 1));
    }

    #[test]
    fn subobject_generation_and_closure() {
        let x = polygon(4);
        let s = Subobject::generated_by(&x, [CellId { dim: 1, id: 2 }]);
        assert_eq!(s.counts(), vec![2, 1]);
        s.check_closed(&x).unwrap();
        let bad = Subobject::from_predicate(&x, |c| c.dim == 1);
        assert!(bad.check_closed(&x).is_err());
        let (sub, back) = s.to_simplicial_set(&x).unwrap();
        sub.verify().unwrap();
        assert_eq!(back[1], vec![2]);
    }
}
