//! Reconstruction of the fat diagonal from lower strata.
//!
//! For an object `Λ` of stratum `i`, the arrows `f: Λ → Λ'` into lower strata
//! form a comma category. Gluing the powers `M^{Λ'}` along it and pushing out
//! with `Δ^Λ M` should give exactly the fat diagonal of `M^{n+i}`, embedded by
//! `(f, a') ↦ f^*a'`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::category::{enumerate_en, CategoryTable};
use crate::error::{Error, Result};
use crate::fusion::bad_diagonals;
use crate::layers::{in_bad_diagonal, in_fat_diagonal, power, pull_back, LayerCaps};
use crate::partition::{Partition, SetMap};
use crate::simplicial::product::Product;
use crate::simplicial::sset::{CellId, Simplex, SimplicialSet};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofibrancyCertificate {
    pub lambda: Partition,
    pub stage: usize,
    pub arrows: usize,
    pub comma_morphisms: usize,
    /// Identified elements always have the same image in `M^Λ`.
    pub well_defined: bool,
    /// Distinct classes have distinct images.
    pub injective: bool,
    pub image_counts: Vec<usize>,
    pub fat_diagonal_counts: Vec<usize>,
    /// A fat-diagonal cell outside the image.
    pub missing: Option<Vec<Simplex>>,
    /// An image cell outside the fat diagonal.
    pub extra: Option<Vec<Simplex>>,
}

impl CofibrancyCertificate {
    pub fn passed(&self) -> bool {
        self.well_defined && self.injective && self.missing.is_none() && self.extra.is_none()
    }
}

struct Flat {
    offsets: Vec<usize>,
    total: usize,
}

impl Flat {
    fn new(set: &SimplicialSet) -> Flat {
        let mut offsets = Vec::new();
        let mut total = 0;
        for k in 0..set.dim().map_or(0, |d| d + 1) {
            offsets.push(total);
            total += set.count(k);
        }
        Flat { offsets, total }
    }

    fn index(&self, c: CellId) -> usize {
        self.offsets[c.dim] + c.id
    }
}

pub fn verify_essentially_cofibrant(m: &SimplicialSet, n: usize, caps: &LayerCaps) -> Result<Vec<CofibrancyCertificate>> {
    if n > caps.n {
        return Err(Error::CapExceeded { what: "excess n", size: n, cap: caps.n });
    }
    let table = enumerate_en(n, caps.n)?;
    (0..table.len()).map(|o| certify(m, &table, o, caps)).collect()
}

fn certify(m: &SimplicialSet, table: &CategoryTable, object: usize, caps: &LayerCaps) -> Result<CofibrancyCertificate> {
    let lambda = &table.objects[object];
    let stage = table.stratum(object);
    let lower: Vec<usize> = (0..table.len()).filter(|&o| table.stratum(o) < stage).collect();
    let mut powers: BTreeMap<usize, Product> = BTreeMap::new();
    for &o in lower.iter().chain([object].iter()) {
        let s = table.objects[o].support();
        if !powers.contains_key(&s) {
            powers.insert(s, power(m, s, caps)?);
        }
    }
    let top = &powers[&lambda.support()];
    let top_flat = Flat::new(&top.set);

    // arrows and their element ranges
    let mut arrows: Vec<(usize, &SetMap)> = Vec::new();
    let mut arrow_index: BTreeMap<(usize, &SetMap), usize> = BTreeMap::new();
    for &o in &lower {
        for f in table.hom(object, o) {
            arrow_index.insert((o, f), arrows.len());
            arrows.push((o, f));
        }
    }
    let flats: BTreeMap<usize, Flat> = powers.iter().map(|(&s, p)| (s, Flat::new(&p.set))).collect();
    let mut base = Vec::with_capacity(arrows.len());
    let mut nodes = 0;
    for &(o, _) in &arrows {
        base.push(nodes);
        nodes += flats[&table.objects[o].support()].total;
    }
    let delta_base = nodes;
    nodes += top_flat.total;

    let mut uf = UnionFind::new(nodes);
    let mut image: Vec<Option<usize>> = alloc::vec![None; nodes];
    let mut well_defined = true;
    let bad_lambda = bad_diagonals(lambda, caps.support)?;
    for c in top.set.all_cells() {
        if in_bad_diagonal(top.coords(c), &bad_lambda) {
            image[delta_base + top_flat.index(c)] = Some(top_flat.index(c));
        }
    }
    let mut comma_morphisms = 0;
    for (a, &(o, f)) in arrows.iter().enumerate() {
        let source = &powers[&table.objects[o].support()];
        let flat = &flats[&table.objects[o].support()];
        let bad = bad_diagonals(&table.objects[o], caps.support)?;
        for c in source.set.all_cells() {
            let pulled = pull_back(f, source.coords(c));
            let cell = top.cell_of(&pulled).ok_or_else(|| Error::Invalid("pulled back tuple is degenerate".into()))?;
            let node = base[a] + flat.index(c);
            image[node] = Some(top_flat.index(cell));
            if in_bad_diagonal(source.coords(c), &bad) {
                if in_bad_diagonal(&pulled, &bad_lambda) {
                    uf.union(node, delta_base + top_flat.index(cell));
                } else {
                    well_defined = false;
                }
            }
        }
        // comma morphisms g: f → g∘f
        for &o2 in &lower {
            let target = &powers[&table.objects[o2].support()];
            let flat2 = &flats[&table.objects[o2].support()];
            for g in table.hom(o, o2) {
                let gf = f.then(g)?;
                let Some(&a2) = arrow_index.get(&(o2, &gf)) else {
                    return Err(Error::Invalid("composite arrow missing from the comma category".into()));
                };
                comma_morphisms += 1;
                for c in target.set.all_cells() {
                    let pulled = pull_back(g, target.coords(c));
                    let cell = source.cell_of(&pulled).ok_or_else(|| Error::Invalid("pulled back tuple is degenerate".into()))?;
                    uf.union(base[a2] + flat2.index(c), base[a] + flat.index(cell));
                }
            }
        }
    }

    // classes against images
    let mut class_image: BTreeMap<usize, usize> = BTreeMap::new();
    let mut image_class: BTreeMap<usize, usize> = BTreeMap::new();
    let mut injective = true;
    for (node, img) in image.iter().enumerate() {
        let Some(img) = *img else { continue };
        let class = uf.find(node);
        match class_image.get(&class) {
            Some(&prev) if prev != img => well_defined = false,
            Some(_) => {}
            None => {
                class_image.insert(class, img);
                if image_class.insert(img, class).is_some() {
                    injective = false;
                }
            }
        }
    }
    let mut image_counts = alloc::vec![0; top_flat.offsets.len()];
    let mut fat_counts = alloc::vec![0; top_flat.offsets.len()];
    let mut missing = None;
    let mut extra = None;
    for c in top.set.all_cells() {
        let hit = image_class.contains_key(&top_flat.index(c));
        let fat = in_fat_diagonal(top.coords(c));
        image_counts[c.dim] += hit as usize;
        fat_counts[c.dim] += fat as usize;
        if fat && !hit && missing.is_none() {
            missing = Some(top.coords(c).to_vec());
        }
        if hit && !fat && extra.is_none() {
            extra = Some(top.coords(c).to_vec());
        }
    }
    Ok(CofibrancyCertificate {
        lambda: lambda.clone(),
        stage,
        arrows: arrows.len(),
        comma_morphisms,
        well_defined,
        injective,
        image_counts,
        fat_diagonal_counts: fat_counts,
        missing,
        extra,
    })
}
