//! Named sweeps over the lemmas the calculus relies on. Each check runs an
//! exhaustive family of small cases against an independent criterion and
//! keeps the first counterexample.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::category::{
    brute_force_class_count, canonical_objects, enumerate_en, integer_partitions, verify_nice_filtration, CategoryTable,
};
use crate::cofibrant::verify_essentially_cofibrant;
use crate::error::Result;
use crate::fusion::{
    compose_all, decompose_elementary, determinant, goodness_via_graph, is_good, is_strict_fusion, strictness_via_h1,
    PartitionMorphism,
};
use crate::layers::{
    bad_diagonal_functoriality, coend, derivative_report, power_pair, stratum, LayerCaps, StratumModel,
};
use crate::partition::{image_partition, refinement_poset, Partition, SetMap};
use crate::simplicial::chain::{ChainComplex, ChainMode};
use crate::simplicial::cube::{cover_cube, total_cofiber_check};
use crate::simplicial::homology::{homology, Coefficients, HomologyGroup};
use crate::simplicial::nerve::{boundary_part, nerve, t_space, t_space_suspension_model};
use crate::simplicial::product::smash;
use crate::simplicial::snf::{mat_mul, smith_normal_form};
use crate::simplicial::sset::{models, CellId, Simplex, SimplicialSet, Subobject};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Quick,
    Exhaustive,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Quick => "quick",
            Level::Exhaustive => "exhaustive",
        }
    }

    fn support(self) -> usize {
        match self {
            Level::Quick => 4,
            Level::Exhaustive => 5,
        }
    }

    fn t_support(self) -> usize {
        match self {
            Level::Quick => 4,
            Level::Exhaustive => 6,
        }
    }

    fn table_n(self) -> usize {
        match self {
            Level::Quick => 3,
            Level::Exhaustive => 4,
        }
    }

    fn class_n(self) -> usize {
        match self {
            Level::Quick => 4,
            Level::Exhaustive => 5,
        }
    }
}

/// Deliberate faults for exercising the suite itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mutation {
    /// Flip the excess verdict on the first fusion examined.
    pub flip_strictness: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub level: Level,
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.outcomes.iter().filter(|o| !o.passed()).map(|o| o.name).collect()
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn case(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(why());
        }
    }
}

type Check = fn(Level, Mutation) -> Result<Tally>;

const CHECKS: &[(&str, Check)] = &[
    ("lattice_laws", lattice_laws),
    ("image_functorial", image_functorial),
    ("fusion_monotone", fusion_monotone),
    ("excess_nonincreasing", excess_nonincreasing),
    ("strictness_criteria_agree", strictness_criteria_agree),
    ("decomposition_sound", decomposition_sound),
    ("strict_factors_hereditary", strict_factors_hereditary),
    ("goodness_criteria_agree", goodness_criteria_agree),
    ("badness_hereditary", badness_hereditary),
    ("badness_preserved_by_strict_fusions", badness_preserved),
    ("refinements_bad", refinements_bad),
    ("class_counts", class_counts),
    ("morphisms_surjective_strict", morphisms_surjective_strict),
    ("composition_closure", composition_closure),
    ("nice_filtration", nice_filtration),
    ("boundary_functoriality", boundary_functoriality),
    ("t_space_homology", t_space_homology),
    ("alternative_t_model", alternative_t_model),
    ("kunneth", kunneth),
    ("chain_invariants", chain_invariants),
    ("smith_normal_form", smith_certificates),
    ("homotopy_pushout_cubes", homotopy_pushout_cubes),
    ("bad_diagonal_functoriality", bad_diagonal_check),
    ("fat_diagonal_reconstruction", fat_diagonal_reconstruction),
    ("euler_additivity", euler_additivity),
    ("strata_free", strata_free),
    ("layer_values", layer_values),
    ("basepoint_independence", basepoint_independence),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

pub fn run_check(name: &str, level: Level, mutation: Mutation) -> Option<CheckOutcome> {
    let &(name, check) = CHECKS.iter().find(|(n, _)| *n == name)?;
    Some(outcome(name, check(level, mutation)))
}

pub fn run_suite(level: Level, mutation: Mutation) -> SuiteReport {
    SuiteReport { level, outcomes: CHECKS.iter().map(|&(name, check)| outcome(name, check(level, mutation))).collect() }
}

fn outcome(name: &'static str, r: Result<Tally>) -> CheckOutcome {
    match r {
        Ok(t) => CheckOutcome { name, cases: t.cases, counterexample: t.counterexample },
        Err(e) => CheckOutcome { name, cases: 0, counterexample: Some(format!("error: {e}")) },
    }
}

/// Every map `[m] → [k]`, values in lexicographic order.
fn all_maps(m: usize, k: usize) -> Vec<SetMap> {
    if k == 0 {
        return if m == 0 { vec![SetMap::identity(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut v = vec![0usize; m];
    loop {
        out.push(SetMap::new(k, v.clone()).expect("values below k"));
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < k {
                break;
            }
            v[i] = 0;
        }
    }
}

fn surjections(m: usize, k: usize) -> Vec<SetMap> {
    all_maps(m, k).into_iter().filter(SetMap::is_surjective).collect()
}

fn show(f: &SetMap) -> String {
    format!("{:?}", f.values())
}

fn lattice_laws(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for m in 0..=level.support() {
        let all = Partition::all(m);
        for a in &all {
            for b in &all {
                let (j, mt) = (a.join(b)?, a.meet(b)?);
                t.case(
                    j == b.join(a)? && mt == b.meet(a)?,
                    || format!("join or meet not commutative on {a}, {b}"),
                );
                t.case(a.join(&a.meet(b)?)? == *a && a.meet(&a.join(b)?)? == *a, || format!("absorption fails on {a}, {b}"));
                t.case(j.refines(a) && j.refines(b), || format!("{j} does not refine {a} and {b}"));
                t.case(a.refines(&mt) && b.refines(&mt), || format!("{mt} is not coarser than {a} and {b}"));
                t.case(a.leq(b) == (j == *b), || format!("order and join disagree on {a}, {b}"));
                if m <= 4 {
                    for c in &all {
                        t.case(
                            a.join(&b.join(c)?)? == j.join(c)? && a.meet(&b.meet(c)?)? == mt.meet(c)?,
                            || format!("associativity fails on {a}, {b}, {c}"),
                        );
                    }
                }
            }
        }
    }
    Ok(t)
}

fn image_functorial(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let s = level.support() - 1;
    for m in 0..=s {
        for k in 0..=s {
            for f in all_maps(m, k) {
                for j in 0..=s {
                    for g in all_maps(k, j) {
                        let gf = f.then(&g)?;
                        for lambda in Partition::all(m) {
                            let lhs = image_partition(&gf, &lambda)?;
                            let rhs = image_partition(&g, &image_partition(&f, &lambda)?)?;
                            t.case(lhs == rhs, || format!("(g∘f)({lambda}) ≠ g(f({lambda})) for f={}, g={}", show(&f), show(&g)));
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

fn fusion_monotone(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let s = level.support().min(4);
    for m in 0..=s {
        let all = Partition::all(m);
        for k in 0..=s {
            for f in all_maps(m, k) {
                for a in &all {
                    let fa = image_partition(&f, a)?;
                    for b in all.iter().filter(|b| a.leq(b)) {
                        let fb = image_partition(&f, b)?;
                        t.case(fa.leq(&fb), || format!("{a} ≤ {b} but f({a}) = {fa} ≰ f({b}) = {fb}, f={}", show(&f)));
                    }
                }
            }
        }
    }
    Ok(t)
}

fn excess_nonincreasing(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let s = level.support();
    for m in 0..=s {
        let all = Partition::all(m);
        for a in &all {
            for b in all.iter().filter(|b| a.leq(b)) {
                t.case(b.excess() <= a.excess(), || format!("{a} ≤ {b} with e({b}) > e({a})"));
            }
            for k in 0..=s {
                for f in all_maps(m, k) {
                    let fa = image_partition(&f, a)?;
                    t.case(fa.excess() <= a.excess(), || format!("e(f({a})) > e({a}) for f={}", show(&f)));
                }
            }
        }
    }
    Ok(t)
}

/// Every fusion out of a partition of support `≤ s` into a support `≤ s`.
fn fusions(s: usize, mut visit: impl FnMut(&PartitionMorphism) -> Result<()>) -> Result<()> {
    for m in 0..=s {
        let all = Partition::all(m);
        for k in 0..=s {
            for f in all_maps(m, k) {
                for lambda in &all {
                    visit(&PartitionMorphism::fusion(lambda.clone(), f.clone())?)?;
                }
            }
        }
    }
    Ok(())
}

fn describe(m: &PartitionMorphism) -> String {
    format!("{} → {} via {}", m.source(), m.target(), show(m.map()))
}

fn strictness_criteria_agree(level: Level, mutation: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let mut flip = mutation.flip_strictness;
    fusions(level.support(), |m| {
        let mut by_excess = is_strict_fusion(m)?;
        if flip {
            by_excess = !by_excess;
            flip = false;
        }
        let by_h1 = strictness_via_h1(m)?;
        let mut by_steps = true;
        for step in decompose_elementary(m)? {
            by_steps &= is_strict_fusion(&step)?;
        }
        t.case(by_excess == by_h1 && by_h1 == by_steps, || {
            format!("{}: excess {by_excess}, H1 {by_h1}, decomposition {by_steps}", describe(m))
        });
        Ok(())
    })?;
    Ok(t)
}

fn decomposition_sound(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    fusions(level.support(), |m| {
        let steps = decompose_elementary(m)?;
        let composite = compose_all(m.source(), &steps)?;
        let glued = steps.iter().filter(|s| !s.map().is_injective()).count();
        let shape = steps.iter().enumerate().all(|(i, s)| s.map().is_elementary() || (i + 1 == steps.len() && s.map().is_injective()));
        t.case(
            composite.map() == m.map() && composite.target() == m.target(),
            || format!("decomposition of {} does not compose back", describe(m)),
        );
        t.case(shape && glued == m.source().support() - m.map().values().iter().collect::<alloc::collections::BTreeSet<_>>().len(), || {
            format!("decomposition of {} has the wrong shape", describe(m))
        });
        Ok(())
    })?;
    Ok(t)
}

fn strict_factors_hereditary(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let s = level.support() - 1;
    for m in 1..=s {
        let all = Partition::all(m);
        for k in 1..=m {
            for f in surjections(m, k) {
                for j in 1..=k {
                    for g in surjections(k, j) {
                        let gf = f.then(&g)?;
                        for lambda in &all {
                            let first = PartitionMorphism::fusion(lambda.clone(), f.clone())?;
                            let second = PartitionMorphism::fusion(first.target().clone(), g.clone())?;
                            let both = PartitionMorphism::fusion(lambda.clone(), gf.clone())?;
                            if is_strict_fusion(&both)? {
                                t.case(is_strict_fusion(&first)? && is_strict_fusion(&second)?, || {
                                    format!("g∘f strict on {lambda} but a factor is not, f={}, g={}", show(&f), show(&g))
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

fn goodness_criteria_agree(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for m in 0..=level.support() {
        let all = Partition::all(m);
        for lambda in &all {
            for delta in &all {
                let (a, b) = (is_good(delta, lambda)?, goodness_via_graph(delta, lambda)?);
                t.case(a == b, || format!("Δ={delta}, Λ={lambda}: excess says {a}, graph says {b}"));
            }
        }
    }
    Ok(t)
}

fn badness_hereditary(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for m in 0..=level.support() {
        let all = Partition::all(m);
        for lambda in &all {
            let bad: Vec<bool> = all.iter().map(|d| is_good(d, lambda).map(|g| !g)).collect::<Result<_>>()?;
            for delta in all.iter().zip(&bad).filter(|(_, &b)| b).map(|(d, _)| d) {
                for (coarser, &b) in all.iter().zip(&bad).filter(|(c, _)| c.leq(delta)) {
                    t.case(b, || format!("Δ={delta} bad rel {lambda} but coarser {coarser} is good"));
                }
            }
        }
    }
    Ok(t)
}

fn badness_preserved(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let s = level.support().min(4);
    fusions(s, |m| {
        if !is_strict_fusion(m)? {
            return Ok(());
        }
        for delta in Partition::all(m.source().support()) {
            if is_good(&delta, m.source())? {
                continue;
            }
            let image = image_partition(m.map(), &delta)?;
            t.case(!is_good(&image, m.target())?, || {
                format!("Δ={delta} bad rel {} but f(Δ)={image} good rel {}, f={}", m.source(), m.target(), show(m.map()))
            });
        }
        Ok(())
    })?;
    Ok(t)
}

fn refinements_bad(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for m in 0..=level.support() {
        for lambda in Partition::all(m) {
            for delta in lambda.refinements().into_iter().filter(|d| !d.is_discrete()) {
                t.case(!is_good(&delta, &lambda)?, || format!("non-discrete refinement {delta} of {lambda} is good"));
            }
        }
    }
    Ok(t)
}

fn class_counts(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=level.class_n() {
        let p = integer_partitions(n).len();
        let skeletal = canonical_objects(n).len();
        let brute = brute_force_class_count(n);
        t.case(p == skeletal && skeletal == brute, || format!("n={n}: p(n)={p}, objects {skeletal}, brute force {brute}"));
    }
    Ok(t)
}

fn tables(level: Level) -> Result<Vec<CategoryTable>> {
    (1..=level.table_n()).map(|n| enumerate_en(n, level.table_n())).collect()
}

fn morphisms_surjective_strict(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for table in tables(level)? {
        for a in 0..table.len() {
            for b in 0..table.len() {
                for f in table.hom(a, b) {
                    let (src, tgt) = (&table.objects[a], &table.objects[b]);
                    let ok = f.is_surjective() && image_partition(f, src)? == *tgt && src.excess() == tgt.excess();
                    t.case(ok, || format!("{src} → {tgt} via {} is not a surjective strict fusion", show(f)));
                }
            }
        }
    }
    Ok(t)
}

fn composition_closure(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for table in tables(level)? {
        let w = table.composition_witness();
        t.case(w.is_none(), || {
            let (i, j, k, f, g) = w.clone().unwrap();
            format!("E_{}: {} → {} → {} via {} then {} is not listed", table.n, table.objects[i], table.objects[j], table.objects[k], show(&f), show(&g))
        });
    }
    Ok(t)
}

fn nice_filtration(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for table in tables(level)? {
        let cert = verify_nice_filtration(&table);
        t.case(cert.passed(), || {
            let v = cert.violation.clone().unwrap();
            format!("E_{} stage {}: {} → {} via {}: {}", table.n, v.stage, v.from, v.to, show(&v.map), v.reason)
        });
    }
    Ok(t)
}

fn boundary_functoriality(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for table in tables(level)?.into_iter().filter(|tb| tb.n <= 3) {
        let posets = table.objects.iter().map(|o| refinement_poset(o, 9)).collect::<Result<Vec<_>>>()?;
        let nerves: Vec<_> = posets.iter().map(nerve).collect();
        let boundaries: Vec<Subobject> = posets.iter().zip(&nerves).map(|(p, n)| boundary_part(p, n)).collect();
        for a in 0..table.len() {
            for b in 0..table.len() {
                for f in table.hom(a, b) {
                    let phi = posets[a]
                        .elements()
                        .iter()
                        .map(|d| Ok(posets[b].index_of(&image_partition(f, d)?)))
                        .collect::<Result<Vec<_>>>()?;
                    for c in nerves[a].set.all_cells() {
                        let chain: Option<Vec<usize>> = nerves[a].chain(c).iter().map(|&i| phi[i]).collect();
                        let image = chain.filter(|ch| ch.windows(2).all(|w| w[0] < w[1])).and_then(|ch| nerves[b].cell_of(&ch));
                        let ok = match image {
                            Some(img) => !boundaries[a].contains(c) || boundaries[b].contains(img),
                            None => false,
                        };
                        t.case(ok, || {
                            format!("{} → {} via {}: chain {:?} leaves the boundary or degenerates", table.objects[a], table.objects[b], show(f), nerves[a].chain(c))
                        });
                    }
                }
            }
        }
    }
    Ok(t)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn t_space_homology(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for m in 0..=level.t_support() {
        for lambda in Partition::all(m) {
            let h = homology(&t_space(&lambda, 9)?, true, Coefficients::Integers)?;
            let rank: usize = lambda.blocks().iter().map(|b| factorial(b.len() - 1)).product();
            let e = lambda.excess() as isize;
            let ok = h.groups.iter().all(|g| {
                if g.degree == e {
                    g.rank == rank && g.torsion.is_empty()
                } else {
                    g.is_zero()
                }
            }) && h.rank(e) == rank;
            t.case(ok, || format!("T_{lambda}: expected rank {rank} in degree {e}, got {:?}", nonzero(&h.groups)));
        }
    }
    Ok(t)
}

fn nonzero(groups: &[HomologyGroup]) -> Vec<(isize, usize, Vec<BigInt>)> {
    groups.iter().filter(|g| !g.is_zero()).map(|g| (g.degree, g.rank, g.torsion.clone())).collect()
}

fn alternative_t_model(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for m in 1..=level.support() {
        for lambda in Partition::all(m).into_iter().filter(|l| !l.is_discrete()) {
            let a = homology(&t_space(&lambda, 9)?, true, Coefficients::Integers)?;
            let b = homology(&t_space_suspension_model(&lambda, 9)?, true, Coefficients::Integers)?;
            t.case(nonzero(&a.groups) == nonzero(&b.groups), || {
                format!("{lambda}: quotient model {:?}, suspension model {:?}", nonzero(&a.groups), nonzero(&b.groups))
            });
        }
    }
    Ok(t)
}

/// `Λ₁ ⊔ Λ₂` on the concatenated support.
fn juxtapose(a: &Partition, b: &Partition) -> Partition {
    let shift = a.blocks().len();
    let labels: Vec<usize> = a.labels().iter().copied().chain(b.labels().iter().map(|&l| l + shift)).collect();
    Partition::from_labels(&labels)
}

fn kunneth(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let s = level.support();
    for m1 in 1..s {
        for m2 in 1..=s - m1 {
            for a in Partition::all(m1) {
                for b in Partition::all(m2) {
                    let ta = homology(&t_space(&a, 9)?, true, Coefficients::Integers)?;
                    let tb = homology(&t_space(&b, 9)?, true, Coefficients::Integers)?;
                    let sm = homology(&smash(&t_space(&a, 9)?, &t_space(&b, 9)?)?, true, Coefficients::Integers)?;
                    let whole = homology(&t_space(&juxtapose(&a, &b), 9)?, true, Coefficients::Integers)?;
                    let e = (a.excess() + b.excess()) as isize;
                    let expected = ta.rank(a.excess() as isize) * tb.rank(b.excess() as isize);
                    t.case(sm.rank(e) == expected && nonzero(&sm.groups) == nonzero(&whole.groups), || {
                        format!("T_{a} ∧ T_{b}: {:?}, expected rank {expected} in degree {e}, T of the union {:?}", nonzero(&sm.groups), nonzero(&whole.groups))
                    });
                }
            }
        }
    }
    Ok(t)
}

fn chain_invariants(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let mut spaces: Vec<(String, SimplicialSet)> = Vec::new();
    for m in 1..=level.support() {
        for lambda in Partition::all(m) {
            spaces.push((format!("T_{lambda}"), t_space(&lambda, 9)?));
        }
    }
    spaces.push(("RP2".into(), models::real_projective_plane()));
    spaces.push(("coend of two points, n = 2".into(), coend(&models::points(2), 2, &LayerCaps::default())?.total));
    for (name, x) in &spaces {
        t.case(x.verify().is_ok(), || format!("{name} violates the simplicial identities"));
        for mode in [ChainMode::Unreduced, ChainMode::Pointed] {
            if mode == ChainMode::Pointed && !x.is_pointed() {
                continue;
            }
            let c = ChainComplex::from_simplicial(x, mode)?;
            t.case(c.check_square_zero().is_ok(), || format!("∂∂ ≠ 0 on {name}"));
        }
        let h = homology(x, false, Coefficients::Integers)?;
        t.case(h.euler_from_betti() == h.euler_from_chains, || format!("Euler characteristics disagree on {name}"));
    }
    Ok(t)
}

fn smith_certificates(level: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for m in 1..=level.support().min(4) {
        for lambda in Partition::all(m) {
            let c = ChainComplex::from_simplicial(&t_space(&lambda, 9)?, ChainMode::Pointed)?;
            for (k, b) in c.boundaries.iter().enumerate() {
                let dense: Vec<Vec<BigInt>> = b.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
                if dense.is_empty() || dense[0].is_empty() {
                    continue;
                }
                let snf = smith_normal_form(&dense);
                let product = mat_mul(&mat_mul(&snf.u, &dense), &snf.v);
                let diagonal: Vec<BigInt> = (0..dense.len().min(dense[0].len())).map(|i| snf.d[i][i].clone()).collect();
                let shape = snf.d.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
                let nonzero: Vec<&BigInt> = diagonal.iter().filter(|x| !x.is_zero()).collect();
                let divides = nonzero.windows(2).all(|w| (w[1] % w[0]).is_zero())
                    && diagonal.iter().skip(nonzero.len()).all(Zero::is_zero)
                    && nonzero.iter().all(|x| x.is_positive());
                let unimodular = determinant(snf.u.clone()).abs().is_one() && determinant(snf.v.clone()).abs().is_one();
                t.case(product == snf.d && shape && divides && unimodular, || {
                    format!("Smith form certificate fails on ∂ in degree {k} of T_{lambda}")
                });
            }
        }
    }
    Ok(t)
}

fn edges(x: &SimplicialSet, ids: &[usize]) -> Subobject {
    Subobject::generated_by(x, ids.iter().map(|&id| CellId { dim: 1, id }))
}

fn homotopy_pushout_cubes(_: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let interval = models::path(4);
    let hexagon = models::polygon(6);
    let covers = [
        ("interval, two arcs", cover_cube(interval.clone(), &[edges(&interval, &[0, 1, 2]), edges(&interval, &[2, 3])])),
        ("interval, three arcs", cover_cube(interval.clone(), &[edges(&interval, &[0, 1]), edges(&interval, &[1, 2]), edges(&interval, &[2, 3])])),
        ("circle, two arcs", cover_cube(hexagon.clone(), &[edges(&hexagon, &[0, 1, 2, 3]), edges(&hexagon, &[3, 4, 5, 0])])),
        ("circle, three arcs", cover_cube(hexagon.clone(), &[edges(&hexagon, &[0, 1, 2]), edges(&hexagon, &[2, 3, 4]), edges(&hexagon, &[4, 5, 0])])),
    ];
    for (name, cube) in &covers {
        let cert = total_cofiber_check(cube, Coefficients::Integers)?;
        t.case(cert.square_zero && cert.acyclic, || format!("{name}: total cofiber has homology in degrees {:?}", cert.homology.support()));
    }
    let square = models::polygon(4);
    let mut control = cover_cube(square.clone(), &[edges(&square, &[0, 1]), edges(&square, &[2, 3])]);
    control.corners[0] = Subobject::generated_by(&square, [CellId { dim: 0, id: 0 }]);
    let cert = total_cofiber_check(&control, Coefficients::Integers)?;
    t.case(!cert.acyclic, || "negative control cube has an acyclic total cofiber".into());
    Ok(t)
}

fn small_models() -> Vec<(&'static str, SimplicialSet)> {
    vec![("two points", models::points(2)), ("three points", models::points(3)), ("minimal circle", models::minimal_circle())]
}

fn bad_diagonal_check(_: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=2 {
        let table = enumerate_en(n, 2)?;
        for (name, m) in small_models() {
            let w = bad_diagonal_functoriality(&m, &table, &LayerCaps::default())?;
            t.case(w.is_none(), || {
                let w = w.clone().unwrap();
                format!("M = {name}, n = {n}: {} → {} via {} sends a bad cell {:?} outside", w.source, w.target, show(&w.map), w.cell)
            });
        }
    }
    Ok(t)
}

fn fat_diagonal_reconstruction(_: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=2 {
        for (name, m) in small_models() {
            for cert in verify_essentially_cofibrant(&m, n, &LayerCaps::default())? {
                t.case(cert.passed(), || format!("M = {name}, n = {n}, Λ = {}: {cert:?}", cert.lambda));
            }
        }
    }
    Ok(t)
}

fn euler_additivity(_: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let mut ms = small_models();
    ms.insert(0, ("one point", models::points(1)));
    for n in 1..=2 {
        for (name, m) in &ms {
            let r = derivative_report(m, n, Coefficients::Integers, &LayerCaps::default())?;
            t.case(r.additivity_holds(), || format!("M = {name}, n = {n}: {:?}", r.additivity));
            t.case(r.degree_support_ok && r.support_range_ok(), || format!("M = {name}, n = {n}: degree or support bounds violated"));
        }
    }
    Ok(t)
}

fn strata_free(_: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let ms = [
        ("two points", models::points(2)),
        ("three points", models::points(3)),
        ("interval", models::interval()),
        ("circle", models::minimal_circle()),
    ];
    for (name, m) in &ms {
        for n in 1..=2 {
            let table = enumerate_en(n, 2)?;
            for o in 0..table.len() {
                let s = stratum(m, n, table.stratum(o), &table.objects[o], &LayerCaps::default())?;
                t.case(s.model == StratumModel::Orbit, || format!("M = {name}: Aut({}) fixes {:?}", s.lambda, s.fixed_witness));
            }
        }
    }
    Ok(t)
}

fn layer_values(_: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let caps = LayerCaps::default();
    let z = Coefficients::Integers;
    for (k, rank) in [(2usize, 1usize), (3, 3)] {
        let m = models::points(k);
        let c = homology(&coend(&m, 1, &caps)?.total, true, z)?;
        let s = homology(&stratum(&m, 1, 1, &Partition::indiscrete(2), &caps)?.set, true, z)?;
        for (what, h) in [("coend", &c), ("stratum", &s)] {
            t.case(h.support() == vec![1] && h.rank(1) == rank && h.group(1).is_some_and(|g| g.torsion.is_empty()), || {
                format!("{k} points, n = 1, {what}: {:?}, expected rank {rank} in degree 1", nonzero(&h.groups))
            });
        }
    }
    for n in 1..=2 {
        let h = homology(&coend(&models::points(1), n, &caps)?.total, true, z)?;
        t.case(h.is_acyclic(), || format!("one point, n = {n}: coend is not contractible"));
    }
    let circle = power_pair(&models::minimal_circle(), &Partition::indiscrete(2), &caps)?;
    let h = homology(&circle.quotient, true, z)?;
    t.case(nonzero(&h.groups) == vec![(1, 1, vec![]), (2, 1, vec![])], || format!("circle power pair: {:?}", nonzero(&h.groups)));
    Ok(t)
}

/// The same simplicial set with the cells of each dimension listed in reverse.
fn reversed(x: &SimplicialSet) -> SimplicialSet {
    let top = x.dim().map_or(0, |d| d + 1);
    let flip = |c: CellId| CellId { dim: c.dim, id: x.count(c.dim) - 1 - c.id };
    let mut out = SimplicialSet::new();
    for k in 0..top {
        for id in (0..x.count(k)).rev() {
            let faces = x.faces_of(CellId { dim: k, id }).iter().map(|f| Simplex { cell: flip(f.cell), deg: f.deg.clone() }).collect();
            out.add_cell(k, faces);
        }
    }
    out.set_basepoint(x.basepoint().map(|b| x.count(0) - 1 - b));
    out
}

fn basepoint_independence(_: Level, _: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let caps = LayerCaps::default();
    for (name, m, n) in [("path", models::path(2), 1), ("three points", models::points(3), 2), ("two circles", models::wedge_of_circles(2), 1)] {
        let a = derivative_report(&m, n, Coefficients::Integers, &caps)?;
        let b = derivative_report(&reversed(&m), n, Coefficients::Integers, &caps)?;
        let same = a.coend_counts == b.coend_counts
            && a.coend_homology == b.coend_homology
            && a.stage_euler == b.stage_euler
            && a.strata.iter().zip(&b.strata).all(|(x, y)| x.homology == y.homology && x.counts == y.counts);
        t.case(same, || format!("M = {name}, n = {n}: report changes when cells are relabelled"));
    }
    Ok(t)
}
