use forestcalc_core::fusion::{
    compose_all, decompose_elementary, goodness_via_graph, is_good, is_strict_fusion, strictness_via_h1,
    PartitionMorphism,
};
use forestcalc_core::partition::image_partition;
use forestcalc_core::simplicial::cube::{cover_cube, total_cofiber_check};
use forestcalc_core::simplicial::nerve::t_space;
use forestcalc_core::simplicial::product::product;
use forestcalc_core::simplicial::quotient::quotient;
use forestcalc_core::simplicial::snf::{mat_mul, smith_normal_form};
use forestcalc_core::simplicial::{homology, models, CellId, ChainComplex, Coefficients, SimplicialSet, Subobject};
use forestcalc_core::simplicial::chain::ChainMode;
use forestcalc_core::{Partition, SetMap};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|m| prop::collection::vec(0..m.max(1), m)).prop_map(|l| Partition::from_labels(&l))
}

fn pair(max: usize) -> impl Strategy<Value = (Partition, Partition)> {
    (0..=max)
        .prop_flat_map(|m| (prop::collection::vec(0..m.max(1), m), prop::collection::vec(0..m.max(1), m)))
        .prop_map(|(a, b)| (Partition::from_labels(&a), Partition::from_labels(&b)))
}

fn triple(max: usize) -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (0..=max)
        .prop_flat_map(|m| {
            let v = || prop::collection::vec(0..m.max(1), m);
            (v(), v(), v())
        })
        .prop_map(|(a, b, c)| (Partition::from_labels(&a), Partition::from_labels(&b), Partition::from_labels(&c)))
}

/// A partition with a map out of its support into `[k]`.
fn fusion(max: usize) -> impl Strategy<Value = (Partition, SetMap)> {
    (1..=max, 1..=max)
        .prop_flat_map(|(m, k)| (prop::collection::vec(0..m, m), prop::collection::vec(0..k, m), Just(k)))
        .prop_map(|(l, v, k)| (Partition::from_labels(&l), SetMap::new(k, v).unwrap()))
}

/// Composable maps `[m] → [k] → [j]` with a partition of `[m]`.
fn composable(max: usize) -> impl Strategy<Value = (Partition, SetMap, SetMap)> {
    (1..=max, 1..=max, 1..=max)
        .prop_flat_map(|(m, k, j)| {
            (prop::collection::vec(0..m, m), prop::collection::vec(0..k, m), prop::collection::vec(0..j, k), Just((k, j)))
        })
        .prop_map(|(l, f, g, (k, j))| (Partition::from_labels(&l), SetMap::new(k, f).unwrap(), SetMap::new(j, g).unwrap()))
}

fn complex() -> impl Strategy<Value = SimplicialSet> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::btree_set(0..n, 1..=4), 1..6)))
        .prop_map(|(n, simplices)| {
            let maximal: Vec<Vec<usize>> = simplices.into_iter().map(|s| s.into_iter().collect()).collect();
            models::simplicial_complex(n, &maximal)
        })
}

fn subcomplex(x: &SimplicialSet, seeds: &[usize]) -> Subobject {
    let cells: Vec<CellId> = x.all_cells().collect();
    Subobject::generated_by(x, seeds.iter().map(|&s| cells[s % cells.len()]))
}

proptest! {
    #[test]
    fn lattice_laws((a, b, c) in triple(7)) {
        let (j, m) = (a.join(&b).unwrap(), a.meet(&b).unwrap());
        prop_assert_eq!(&j, &b.join(&a).unwrap());
        prop_assert_eq!(&m, &b.meet(&a).unwrap());
        prop_assert_eq!(a.join(&b.join(&c).unwrap()).unwrap(), j.join(&c).unwrap());
        prop_assert_eq!(a.meet(&b.meet(&c).unwrap()).unwrap(), m.meet(&c).unwrap());
        prop_assert_eq!(a.join(&m).unwrap(), a.clone());
        prop_assert_eq!(a.meet(&j).unwrap(), a.clone());
        prop_assert!(j.refines(&a) && j.refines(&b));
        prop_assert!(a.refines(&m) && b.refines(&m));
        prop_assert!(Partition::indiscrete(a.support()).leq(&a) && a.leq(&Partition::discrete(a.support())));
    }

    #[test]
    fn excess_drops_under_refinement((a, b) in pair(7)) {
        let finer = a.join(&b).unwrap();
        prop_assert!(finer.excess() <= a.excess());
    }

    #[test]
    fn image_is_functorial((l, f, g) in composable(6)) {
        let gf = f.then(&g).unwrap();
        let direct = image_partition(&gf, &l).unwrap();
        let stepwise = image_partition(&g, &image_partition(&f, &l).unwrap()).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn fusions_are_monotone_and_lower_excess(((l, f), labels) in fusion(6).prop_flat_map(|(l, f)| {
        let m = l.support();
        (Just((l, f)), prop::collection::vec(0..m, m))
    })) {
        let finer = l.join(&Partition::from_labels(&labels)).unwrap();
        let (fl, ff) = (image_partition(&f, &l).unwrap(), image_partition(&f, &finer).unwrap());
        prop_assert!(fl.leq(&ff));
        prop_assert!(fl.excess() <= l.excess());
    }

    #[test]
    fn strictness_criteria_agree((l, f) in fusion(7)) {
        let m = PartitionMorphism::fusion(l, f).unwrap();
        let by_excess = is_strict_fusion(&m).unwrap();
        prop_assert_eq!(by_excess, strictness_via_h1(&m).unwrap());
        let steps = decompose_elementary(&m).unwrap();
        let all_strict = steps.iter().all(|s| is_strict_fusion(s).unwrap());
        prop_assert_eq!(by_excess, all_strict);
        let back = compose_all(m.source(), &steps).unwrap();
        prop_assert_eq!(back.map(), m.map());
        prop_assert_eq!(back.target(), m.target());
    }

    #[test]
    fn strict_composites_have_strict_factors((l, f, g) in composable(6)) {
        let first = PartitionMorphism::fusion(l.clone(), f.clone()).unwrap();
        let second = PartitionMorphism::fusion(first.target().clone(), g.clone()).unwrap();
        let both = PartitionMorphism::fusion(l, f.then(&g).unwrap()).unwrap();
        if is_strict_fusion(&both).unwrap() {
            prop_assert!(is_strict_fusion(&first).unwrap() && is_strict_fusion(&second).unwrap());
        }
    }

    #[test]
    fn goodness_criteria_agree((l, d) in pair(7)) {
        prop_assert_eq!(is_good(&d, &l).unwrap(), goodness_via_graph(&d, &l).unwrap());
    }

    #[test]
    fn badness_is_hereditary((l, d, e) in triple(7)) {
        let coarser = d.meet(&e).unwrap();
        if !is_good(&d, &l).unwrap() {
            prop_assert!(!is_good(&coarser, &l).unwrap());
        }
    }

    #[test]
    fn strict_fusions_preserve_badness(((l, f), labels) in fusion(6).prop_flat_map(|(l, f)| {
        let m = l.support();
        (Just((l, f)), prop::collection::vec(0..m, m))
    })) {
        let m = PartitionMorphism::fusion(l.clone(), f.clone()).unwrap();
        let d = Partition::from_labels(&labels);
        if is_strict_fusion(&m).unwrap() && !is_good(&d, &l).unwrap() {
            prop_assert!(!is_good(&image_partition(&f, &d).unwrap(), m.target()).unwrap());
        }
    }

    #[test]
    fn nondiscrete_refinements_are_bad((l, d) in pair(7)) {
        let refinement = l.join(&d).unwrap();
        if !refinement.is_discrete() {
            prop_assert!(!is_good(&refinement, &l).unwrap());
        }
    }

    #[test]
    fn t_spaces_are_wedges_of_spheres(l in partition(5)) {
        let h = homology(&t_space(&l, 9).unwrap(), true, Coefficients::Integers).unwrap();
        let e = l.excess() as isize;
        prop_assert!(h.support().iter().all(|&d| d == e));
        prop_assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn chains_square_to_zero(x in complex()) {
        x.verify().unwrap();
        let c = ChainComplex::from_simplicial(&x, ChainMode::Unreduced).unwrap();
        prop_assert!(c.check_square_zero().is_ok());
        let h = homology(&x, false, Coefficients::Integers).unwrap();
        prop_assert_eq!(h.euler_from_betti(), h.euler_from_chains);
    }

    #[test]
    fn universal_coefficients(x in complex(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let z = homology(&x, false, Coefficients::Integers).unwrap();
        let q = homology(&x, false, Coefficients::Rationals).unwrap();
        let fp = homology(&x, false, Coefficients::Prime(p)).unwrap();
        let divisible = |d: isize| z.group(d).map_or(0, |g| g.torsion.iter().filter(|t| (*t % p).is_zero()).count());
        for d in 0..=x.dim().unwrap_or(0) as isize {
            prop_assert_eq!(q.rank(d), z.rank(d));
            prop_assert_eq!(fp.rank(d), z.rank(d) + divisible(d) + divisible(d - 1));
        }
    }

    #[test]
    fn euler_characteristic_is_multiplicative(x in complex(), y in complex()) {
        prop_assume!(x.dim().unwrap_or(0) + y.dim().unwrap_or(0) <= 4);
        let p = product(&x, &y).unwrap();
        p.set.verify().unwrap();
        let chi = |s: &SimplicialSet| s.reduced_euler() + 1;
        prop_assert_eq!(chi(&p.set), chi(&x) * chi(&y));
    }

    #[test]
    fn collapsing_subtracts_euler_characteristic(x in complex(), seeds in prop::collection::vec(0usize..64, 1..4)) {
        let a = subcomplex(&x, &seeds);
        let q = quotient(&x, &a).unwrap();
        q.set.verify().unwrap();
        let chi_a: i64 = a.counts().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        prop_assert_eq!(q.set.reduced_euler(), x.reduced_euler() + 1 - chi_a);
    }

    #[test]
    fn covers_by_subcomplexes_are_homotopy_pushouts(
        x in complex(),
        seeds in prop::collection::vec(prop::collection::vec(0usize..64, 1..4), 2..=3),
    ) {
        let pieces: Vec<Subobject> = seeds.iter().map(|s| subcomplex(&x, s)).collect();
        let mut union = Subobject::empty(&x);
        for p in &pieces {
            union = union.union(p);
        }
        let (ambient, _) = union.to_simplicial_set(&x).unwrap();
        let restricted: Vec<Subobject> = seeds.iter().map(|s| {
            let cells: Vec<CellId> = x.all_cells().collect();
            let chosen: Vec<CellId> = s.iter().map(|&i| cells[i % cells.len()]).collect();
            let (_, back) = union.to_simplicial_set(&x).unwrap();
            let local = |c: CellId| back[c.dim].iter().position(|&g| g == c.id).map(|id| CellId { dim: c.dim, id }).unwrap();
            Subobject::generated_by(&ambient, chosen.into_iter().map(local))
        }).collect();
        let cert = total_cofiber_check(&cover_cube(ambient, &restricted), Coefficients::Integers).unwrap();
        prop_assert!(cert.square_zero);
        prop_assert!(cert.acyclic);
    }

    #[test]
    fn smith_form_certificate(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 1..5), 1..5)) {
        let width = rows[0].len();
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| (0..width).map(|j| BigInt::from(*r.get(j).unwrap_or(&0))).collect()).collect();
        let s = smith_normal_form(&m);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d.clone());
        let det = |a: &Vec<Vec<BigInt>>| forestcalc_core::fusion::determinant(a.clone());
        prop_assert_eq!(det(&s.u).abs(), BigInt::from(1));
        prop_assert_eq!(det(&s.v).abs(), BigInt::from(1));
        let diag: Vec<BigInt> = (0..m.len().min(width)).map(|i| s.d[i][i].clone()).collect();
        for (i, row) in s.d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                prop_assert!(i == j || v.is_zero());
            }
        }
        let nonzero: Vec<&BigInt> = diag.iter().take_while(|d| !d.is_zero()).collect();
        prop_assert!(diag[nonzero.len()..].iter().all(|d| d.is_zero()));
        for w in nonzero.windows(2) {
            prop_assert!((w[1] % w[0]).is_zero());
        }
    }
}
