//! Powers `M^Λ` of a finite simplicial set, their bad diagonals, and the coend
//! `M^[Λ] ⊗_{E_n} T_Λ` together with its filtration strata.
//!
//! Every object `Λ` contributes the piece `R_Λ = M^Λ × N(P(Λ))`. The smash
//! `M^[Λ] ∧ T_Λ` is `R_Λ` with `Δ^Λ M × N ∪ M^Λ × ∂N` collapsed, and a strict
//! fusion `f: Λ → Λ'` identifies `(f^*a', t)` in `R_Λ` with `(a', f_*t)` in
//! `R_Λ'`. The coend is the resulting quotient of the disjoint union.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::category::{automorphism_group, enumerate_en, CategoryTable};
use crate::error::{Error, Result};
use crate::fusion::bad_diagonals;
use crate::partition::{image_partition, refinement_poset, Partition, PosetTable, SetMap, DEFAULT_SUPPORT_CAP};
use crate::perm::Perm;
use crate::simplicial::homology::{homology, Coefficients, HomologyResult};
use crate::simplicial::nerve::{boundary_part, nerve, Nerve};
use crate::simplicial::product::{product_many, Product, DEFAULT_DIMENSION_CAP};
use crate::simplicial::quotient::{quotient, Gluing};
use crate::simplicial::sset::{CellId, Simplex, SimplicialSet, Subobject};

pub const DEFAULT_LAYER_N_CAP: usize = 2;
const GROUP_ELEMENT_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LayerCaps {
    pub support: usize,
    pub dimension: usize,
    pub n: usize,
}

impl Default for LayerCaps {
    fn default() -> Self {
        LayerCaps { support: DEFAULT_SUPPORT_CAP, dimension: DEFAULT_DIMENSION_CAP, n: DEFAULT_LAYER_N_CAP }
    }
}

/// The partition of coordinate positions by equality of the coordinates.
pub fn coincidences(coords: &[Simplex]) -> Partition {
    let labels: Vec<usize> =
        (0..coords.len()).map(|x| coords.iter().position(|c| *c == coords[x]).unwrap()).collect();
    Partition::from_labels(&labels)
}

/// Whether the tuple lies in `M^{c(Δ)}`: coordinates agree along every block of `Δ`.
pub fn in_subdiagonal(coords: &[Simplex], delta: &Partition) -> bool {
    delta.blocks().iter().all(|b| b.iter().all(|&x| coords[x] == coords[b[0]]))
}

/// `Δ^Λ M` membership as the union of the sub-diagonals of the bad `Δ`.
pub fn in_bad_diagonal(coords: &[Simplex], bad: &[Partition]) -> bool {
    bad.iter().any(|d| in_subdiagonal(coords, d))
}

pub fn in_fat_diagonal(coords: &[Simplex]) -> bool {
    !coincidences(coords).is_discrete()
}

/// `f^*a'`: the coordinate at `x` is `a'_{f(x)}`.
pub fn pull_back(f: &SetMap, coords: &[Simplex]) -> Vec<Simplex> {
    f.values().iter().map(|&y| coords[y].clone()).collect()
}

/// The `a'` with `f^*a' = a`, when `a` is constant on the fibres of a surjection `f`.
pub fn descend(f: &SetMap, coords: &[Simplex]) -> Option<Vec<Simplex>> {
    let mut out: Vec<Option<&Simplex>> = vec![None; f.target_size()];
    for (x, &y) in f.values().iter().enumerate() {
        match out[y] {
            None => out[y] = Some(&coords[x]),
            Some(c) if *c != coords[x] => return None,
            Some(_) => {}
        }
    }
    out.into_iter().map(|c| c.cloned()).collect()
}

pub(crate) fn power(m: &SimplicialSet, support: usize, caps: &LayerCaps) -> Result<Product> {
    if support > caps.support {
        return Err(Error::CapExceeded { what: "partition support", size: support, cap: caps.support });
    }
    let factors: Vec<&SimplicialSet> = vec![m; support];
    product_many(&factors, caps.dimension)
}

#[derive(Clone, Debug)]
pub struct PowerPair {
    pub lambda: Partition,
    pub power: Product,
    pub bad_diagonal: Subobject,
    /// `M^[Λ] = M^Λ / Δ^Λ M`.
    pub quotient: SimplicialSet,
}

pub fn power_pair(m: &SimplicialSet, lambda: &Partition, caps: &LayerCaps) -> Result<PowerPair> {
    let power = power(m, lambda.support(), caps)?;
    let bad = bad_diagonals(lambda, caps.support)?;
    let bad_diagonal = Subobject::from_predicate(&power.set, |c| in_bad_diagonal(power.coords(c), &bad));
    bad_diagonal.check_closed(&power.set)?;
    let quotient = quotient(&power.set, &bad_diagonal)?.set;
    Ok(PowerPair { lambda: lambda.clone(), power, bad_diagonal, quotient })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Collapse {
    Bad,
    Fat,
}

struct Piece {
    lambda: Partition,
    poset: PosetTable,
    nerve: Nerve,
    product: Product,
    collapse: Subobject,
}

impl Piece {
    fn new(m: &SimplicialSet, lambda: &Partition, caps: &LayerCaps, kind: Collapse) -> Result<Piece> {
        let s = lambda.support();
        if s > caps.support {
            return Err(Error::CapExceeded { what: "partition support", size: s, cap: caps.support });
        }
        let poset = refinement_poset(lambda, caps.support)?;
        let nerve = nerve(&poset);
        let boundary = boundary_part(&poset, &nerve);
        let mut factors: Vec<&SimplicialSet> = vec![m; s];
        factors.push(&nerve.set);
        let product = product_many(&factors, caps.dimension)?;
        let bad = match kind {
            Collapse::Bad => bad_diagonals(lambda, caps.support)?,
            Collapse::Fat => Vec::new(),
        };
        let collapse = Subobject::from_predicate(&product.set, |c| {
            let coords = product.coords(c);
            let (a, t) = coords.split_at(s);
            boundary.contains(t[0].cell)
                || match kind {
                    Collapse::Bad => in_bad_diagonal(a, &bad),
                    Collapse::Fat => in_fat_diagonal(a),
                }
        });
        collapse.check_closed(&product.set)?;
        Ok(Piece { lambda: lambda.clone(), poset, nerve, product, collapse })
    }

    /// Index map `P(Λ) → P(Λ')`, `Δ ↦ f(Δ)`.
    fn poset_map(&self, f: &SetMap, target: &Piece) -> Result<Vec<usize>> {
        self.poset
            .elements()
            .iter()
            .map(|d| {
                let img = image_partition(f, d)?;
                target.poset.index_of(&img).ok_or(Error::NotAMorphism)
            })
            .collect()
    }

    /// `f_*t` on a simplex of the nerve.
    fn push_forward(&self, phi: &[usize], target: &Piece, t: &Simplex) -> Result<Simplex> {
        let chain: Vec<usize> = self.nerve.chain(t.cell).iter().map(|&i| phi[i]).collect();
        if chain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(alloc::format!(
                "fusion onto {} does not act injectively on chains of P({})",
                target.lambda, self.lambda
            )));
        }
        let cell = target.nerve.cell_of(&chain).ok_or(Error::NotAMorphism)?;
        Ok(Simplex { cell, deg: t.deg.clone() })
    }
}

fn concatenate(pieces: &[Piece]) -> (SimplicialSet, Vec<Vec<usize>>) {
    let mut total = SimplicialSet::new();
    let mut offsets = Vec::with_capacity(pieces.len());
    for p in pieces {
        let top = p.product.set.dim().map_or(0, |d| d + 1).max(total.dim().map_or(0, |d| d + 1));
        offsets.push((0..top).map(|k| total.count(k)).collect());
        total = total.disjoint_union(&p.product.set);
    }
    (total, offsets)
}

fn shifted(offsets: &[usize], c: CellId) -> CellId {
    CellId { dim: c.dim, id: c.id + offsets.get(c.dim).copied().unwrap_or(0) }
}

/// One family of identifications made while gluing the coend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueRecord {
    pub from: Partition,
    pub to: Partition,
    pub morphisms: usize,
    /// Cells of `R_from` identified with a cell of `R_to`, summed over the morphisms.
    pub identified: usize,
}

#[derive(Clone, Debug)]
pub struct CoendAssembly {
    pub n: usize,
    /// Filtration stage: objects with at most this many components.
    pub stage: usize,
    pub objects: Vec<Partition>,
    pub total: SimplicialSet,
    /// Nondegenerate cells of each `R_Λ` before gluing.
    pub piece_counts: Vec<Vec<usize>>,
    /// Cells of each `R_Λ` sent to the basepoint.
    pub collapsed_counts: Vec<Vec<usize>>,
    pub log: Vec<GlueRecord>,
}

impl CoendAssembly {
    pub fn reduced_euler(&self) -> i64 {
        self.total.reduced_euler()
    }
}

pub fn coend(m: &SimplicialSet, n: usize, caps: &LayerCaps) -> Result<CoendAssembly> {
    if n > caps.n {
        return Err(Error::CapExceeded { what: "excess n", size: n, cap: caps.n });
    }
    let table = enumerate_en(n, caps.n)?;
    coend_stage(m, &table, n, caps)
}

/// The coend over the full subcategory of objects with at most `stage` components.
pub fn coend_stage(m: &SimplicialSet, table: &CategoryTable, stage: usize, caps: &LayerCaps) -> Result<CoendAssembly> {
    let keep: Vec<usize> = (0..table.len()).filter(|&o| table.stratum(o) <= stage).collect();
    let pieces = keep
        .iter()
        .map(|&o| Piece::new(m, &table.objects[o], caps, Collapse::Bad))
        .collect::<Result<Vec<_>>>()?;
    let (union, offsets) = concatenate(&pieces);
    let mut gluing = Gluing::new(&union);
    for (p, piece) in pieces.iter().enumerate() {
        for c in piece.collapse.cells() {
            gluing.collapse(shifted(&offsets[p], c));
        }
    }
    let mut log = Vec::new();
    for (a, &oa) in keep.iter().enumerate() {
        for (b, &ob) in keep.iter().enumerate() {
            let homs = table.hom(oa, ob);
            if homs.is_empty() {
                continue;
            }
            let (src, tgt) = (&pieces[a], &pieces[b]);
            let s = src.lambda.support();
            let mut identified = 0;
            for f in homs {
                let phi = src.poset_map(f, tgt)?;
                for c in src.product.set.all_cells() {
                    let coords = src.product.coords(c);
                    let Some(mut image) = descend(f, &coords[..s]) else { continue };
                    image.push(src.push_forward(&phi, tgt, &coords[s])?);
                    let target = tgt.product.cell_of(&image).ok_or_else(|| {
                        Error::Invalid(alloc::format!("glued tuple is degenerate in R_{}", tgt.lambda))
                    })?;
                    gluing.identify(shifted(&offsets[a], c), shifted(&offsets[b], target))?;
                    identified += 1;
                }
            }
            log.push(GlueRecord {
                from: src.lambda.clone(),
                to: tgt.lambda.clone(),
                morphisms: homs.len(),
                identified,
            });
        }
    }
    let glued = gluing.finish(true)?;
    Ok(CoendAssembly {
        n: table.n,
        stage,
        objects: pieces.iter().map(|p| p.lambda.clone()).collect(),
        total: glued.set,
        piece_counts: pieces.iter().map(|p| p.product.set.counts()).collect(),
        collapsed_counts: pieces.iter().map(|p| p.collapse.counts()).collect(),
        log,
    })
}

/// How the homology of a stratum is to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StratumModel {
    /// The action is free off the basepoint; the orbit set has the homotopy type of the quotient.
    Orbit,
    /// A fixed cell was found; only rational homology of the orbit set is meaningful
    /// (the invariants of the rational homology).
    RationalInvariants,
}

#[derive(Clone, Debug)]
pub struct Stratum {
    pub lambda: Partition,
    pub stage: usize,
    pub group_order: BigUint,
    pub model: StratumModel,
    /// A group element and a cell it fixes, off the basepoint.
    pub fixed_witness: Option<(Perm, CellId)>,
    pub set: SimplicialSet,
}

impl Stratum {
    pub fn reduced_euler(&self) -> i64 {
        self.set.reduced_euler()
    }
}

fn act(piece: &Piece, sigma: &Perm, c: CellId) -> Result<CellId> {
    let s = piece.lambda.support();
    let coords = piece.product.coords(c);
    let inverse = sigma.inverse();
    let mut image: Vec<Simplex> = (0..s).map(|x| coords[inverse.apply(x)].clone()).collect();
    let f = SetMap::new(s, sigma.0.clone())?;
    let phi = piece.poset_map(&f, piece)?;
    image.push(piece.push_forward(&phi, piece, &coords[s])?);
    piece.product.cell_of(&image).ok_or(Error::NonSimplicialAction { dim: c.dim, cell: c.id })
}

/// `(M^{n+i} / Δ^{n+i} M ∧ T_Λ) / Aut(Λ)` for an object `Λ` of stratum `i`.
pub fn stratum(m: &SimplicialSet, n: usize, i: usize, lambda: &Partition, caps: &LayerCaps) -> Result<Stratum> {
    if n > caps.n {
        return Err(Error::CapExceeded { what: "excess n", size: n, cap: caps.n });
    }
    if !lambda.is_irreducible() || lambda.excess() != n || lambda.num_blocks() != i {
        return Err(Error::Invalid(alloc::format!("{lambda} is not an object of stratum {i} of E_{n}")));
    }
    let piece = Piece::new(m, lambda, caps, Collapse::Fat)?;
    let group = automorphism_group(lambda);
    let elements = group
        .elements(GROUP_ELEMENT_CAP)
        .ok_or(Error::CapExceeded { what: "automorphism group order", size: GROUP_ELEMENT_CAP + 1, cap: GROUP_ELEMENT_CAP })?;
    let mut fixed_witness = None;
    'search: for g in elements.iter().filter(|g| !g.is_identity()) {
        for c in piece.product.set.all_cells() {
            if !piece.collapse.contains(c) && act(&piece, g, c)? == c {
                fixed_witness = Some((g.clone(), c));
                break 'search;
            }
        }
    }
    let mut gluing = Gluing::new(&piece.product.set);
    gluing.collapse_all(&piece.collapse);
    for g in &group.generators {
        for c in piece.product.set.all_cells() {
            gluing.identify(c, act(&piece, g, c)?)?;
        }
    }
    let set = gluing.finish(true)?.set;
    Ok(Stratum {
        lambda: lambda.clone(),
        stage: i,
        group_order: group.order,
        model: if fixed_witness.is_none() { StratumModel::Orbit } else { StratumModel::RationalInvariants },
        fixed_witness,
        set,
    })
}

#[derive(Clone, Debug)]
pub struct StratumReport {
    pub lambda: Partition,
    pub stage: usize,
    pub group_order: BigUint,
    pub model: StratumModel,
    pub counts: Vec<usize>,
    pub reduced_euler: i64,
    pub homology: HomologyResult,
}

/// `χ̃(coend_i) − χ̃(coend_{i−1})` against the strata of stage `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityRow {
    pub stage: usize,
    pub coend_difference: i64,
    pub strata_sum: i64,
}

impl AdditivityRow {
    pub fn holds(&self) -> bool {
        self.coend_difference == self.strata_sum
    }
}

#[derive(Clone, Debug)]
pub struct DerivativeReport {
    pub n: usize,
    pub coefficients: Coefficients,
    pub model_counts: Vec<usize>,
    pub coend_counts: Vec<usize>,
    pub coend_homology: HomologyResult,
    pub stage_euler: Vec<i64>,
    pub strata: Vec<StratumReport>,
    pub additivity: Vec<AdditivityRow>,
    /// Lowest and highest dimension of a cell off the basepoint, if any.
    pub cell_degrees: Option<(usize, usize)>,
    pub degree_support_ok: bool,
    /// Support sizes of the objects that contribute strata.
    pub contributing_supports: Vec<usize>,
    pub log: Vec<GlueRecord>,
}

impl DerivativeReport {
    pub fn additivity_holds(&self) -> bool {
        self.additivity.iter().all(AdditivityRow::holds)
    }

    /// Strata only come from supports `n+1 … 2n`.
    pub fn support_range_ok(&self) -> bool {
        self.contributing_supports.iter().all(|&s| s > self.n && s <= 2 * self.n)
    }
}

pub fn derivative_report(m: &SimplicialSet, n: usize, coeff: Coefficients, caps: &LayerCaps) -> Result<DerivativeReport> {
    if n > caps.n {
        return Err(Error::CapExceeded { what: "excess n", size: n, cap: caps.n });
    }
    let table = enumerate_en(n, caps.n)?;
    let mut stage_euler = vec![0i64];
    let mut full = None;
    for i in 1..=n {
        let c = coend_stage(m, &table, i, caps)?;
        stage_euler.push(c.reduced_euler());
        if i == n {
            full = Some(c);
        }
    }
    let full = match full {
        Some(c) => c,
        None => coend_stage(m, &table, 0, caps)?,
    };
    let mut strata = Vec::new();
    let mut additivity = Vec::new();
    for i in 1..=n {
        let mut sum = 0;
        for o in (0..table.len()).filter(|&o| table.stratum(o) == i) {
            let st = stratum(m, n, i, &table.objects[o], caps)?;
            let c = if st.model == StratumModel::Orbit { coeff } else { Coefficients::Rationals };
            let h = homology(&st.set, true, c)?;
            sum += st.reduced_euler();
            strata.push(StratumReport {
                lambda: st.lambda.clone(),
                stage: i,
                group_order: st.group_order.clone(),
                model: st.model,
                counts: st.set.counts(),
                reduced_euler: st.reduced_euler(),
                homology: h,
            });
        }
        additivity.push(AdditivityRow { stage: i, coend_difference: stage_euler[i] - stage_euler[i - 1], strata_sum: sum });
    }
    let coend_homology = homology(&full.total, true, coeff)?;
    let mut counts = full.total.counts();
    if let Some(v) = counts.first_mut() {
        *v -= 1;
    }
    let lo = counts.iter().position(|&c| c > 0);
    let hi = counts.iter().rposition(|&c| c > 0);
    let cell_degrees = lo.zip(hi);
    let degree_support_ok = coend_homology.support().iter().all(|&d| match cell_degrees {
        Some((lo, hi)) => d >= lo as isize && d <= hi as isize,
        None => false,
    });
    let contributing_supports: Vec<usize> = {
        let mut v: Vec<usize> = strata.iter().map(|s| s.lambda.support()).collect();
        v.dedup();
        v
    };
    Ok(DerivativeReport {
        n,
        coefficients: coeff,
        model_counts: m.counts(),
        coend_counts: full.total.counts(),
        coend_homology,
        stage_euler,
        strata,
        additivity,
        cell_degrees,
        degree_support_ok,
        contributing_supports,
        log: full.log,
    })
}

/// A strict fusion whose induced map does not carry one bad diagonal into the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityWitness {
    pub source: Partition,
    pub target: Partition,
    pub map: SetMap,
    pub cell: Vec<Simplex>,
}

/// For every listed `f: Λ → Λ'`, `f^*` sends `Δ^{Λ'} M` into `Δ^Λ M`.
pub fn bad_diagonal_functoriality(
    m: &SimplicialSet,
    table: &CategoryTable,
    caps: &LayerCaps,
) -> Result<Option<FunctorialityWitness>> {
    let mut powers: BTreeMap<usize, Product> = BTreeMap::new();
    for o in &table.objects {
        if !powers.contains_key(&o.support()) {
            powers.insert(o.support(), power(m, o.support(), caps)?);
        }
    }
    let bad: Vec<Vec<Partition>> =
        table.objects.iter().map(|o| bad_diagonals(o, caps.support)).collect::<Result<_>>()?;
    for a in 0..table.len() {
        for b in 0..table.len() {
            let target = &powers[&table.objects[b].support()];
            for f in table.hom(a, b) {
                for c in target.set.all_cells() {
                    let coords = target.coords(c);
                    if in_bad_diagonal(coords, &bad[b]) && !in_bad_diagonal(&pull_back(f, coords), &bad[a]) {
                        return Ok(Some(FunctorialityWitness {
                            source: table.objects[a].clone(),
                            target: table.objects[b].clone(),
                            map: f.clone(),
                            cell: coords.to_vec(),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::is_good;
    use crate::simplicial::sset::models;

    fn caps() -> LayerCaps {
        LayerCaps::default()
    }

    #[test]
    fn two_points_power_pair() {
        let pp = power_pair(&models::points(2), &Partition::indiscrete(2), &caps()).unwrap();
        assert_eq!(pp.power.set.counts(), vec![4]);
        assert_eq!(pp.bad_diagonal.counts(), vec![2]);
        assert_eq!(pp.quotient.counts(), vec![3]);
    }

    #[test]
    fn one_point_power_pair_is_a_point() {
        for lambda in [Partition::indiscrete(2), Partition::from_block_sizes(&[2, 2])] {
            let pp = power_pair(&models::points(1), &lambda, &caps()).unwrap();
            assert_eq!(pp.quotient.counts(), vec![1]);
        }
    }

    #[test]
    fn circle_squared_mod_diagonal() {
        let pp = power_pair(&models::minimal_circle(), &Partition::indiscrete(2), &caps()).unwrap();
        assert_eq!(pp.power.set.counts(), vec![1, 3, 2]);
        let h = homology(&pp.quotient, true, Coefficients::Integers).unwrap();
        assert_eq!(h.rank(1), 1);
        assert_eq!(h.rank(2), 1);
        assert_eq!(h.support(), vec![1, 2]);
    }

    #[test]
    fn bad_union_matches_kernel_criterion() {
        let m = models::points(3);
        for lambda in [Partition::indiscrete(3), Partition::from_block_sizes(&[2, 2])] {
            let pp = power_pair(&m, &lambda, &caps()).unwrap();
            for c in pp.power.set.all_cells() {
                let kernel = coincidences(pp.power.coords(c));
                assert_eq!(pp.bad_diagonal.contains(c), !is_good(&kernel, &lambda).unwrap());
            }
        }
    }

    #[test]
    fn coend_of_two_points_is_a_circle() {
        let c = coend(&models::points(2), 1, &caps()).unwrap();
        c.total.verify().unwrap();
        let h = homology(&c.total, true, Coefficients::Integers).unwrap();
        assert_eq!(h.support(), vec![1]);
        assert_eq!(h.rank(1), 1);
    }

    #[test]
    fn coend_of_three_points_has_three_circles() {
        let c = coend(&models::points(3), 1, &caps()).unwrap();
        let h = homology(&c.total, true, Coefficients::Integers).unwrap();
        assert_eq!(h.support(), vec![1]);
        assert_eq!(h.rank(1), 3);
    }

    #[test]
    fn one_point_gives_a_point() {
        for n in 1..=2 {
            let c = coend(&models::points(1), n, &caps()).unwrap();
            assert!(homology(&c.total, true, Coefficients::Integers).unwrap().is_acyclic());
        }
    }

    #[test]
    fn strata_of_two_points() {
        let m = models::points(2);
        let s = stratum(&m, 1, 1, &Partition::indiscrete(2), &caps()).unwrap();
        assert_eq!(s.model, StratumModel::Orbit);
        let h = homology(&s.set, true, Coefficients::Integers).unwrap();
        assert_eq!((h.support(), h.rank(1)), (vec![1], 1));
        let top = stratum(&m, 2, 2, &Partition::from_block_sizes(&[2, 2]), &caps()).unwrap();
        assert_eq!(top.group_order, BigUint::from(8u32));
        assert!(stratum(&m, 2, 1, &Partition::from_block_sizes(&[2, 2]), &caps()).is_err());
    }

    #[test]
    fn report_for_two_points() {
        for n in 1..=2 {
            let r = derivative_report(&models::points(2), n, Coefficients::Integers, &caps()).unwrap();
            assert!(r.additivity_holds(), "{:?}", r.additivity);
            assert!(r.degree_support_ok);
            assert!(r.support_range_ok());
        }
    }

    #[test]
    fn bad_diagonals_are_contravariant() {
        let table = enumerate_en(2, 5).unwrap();
        for m in [models::points(2), models::minimal_circle()] {
            assert_eq!(bad_diagonal_functoriality(&m, &table, &caps()).unwrap(), None);
        }
    }

    #[test]
    fn layer_caps_are_enforced() {
        assert!(coend(&models::points(2), 3, &caps()).is_err());
    }
}
