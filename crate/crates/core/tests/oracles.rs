use std::collections::BTreeSet;

use forestcalc_core::category::{automorphism_group, enumerate_en};
use forestcalc_core::layers::{coend, power_pair, LayerCaps};
use forestcalc_core::simplicial::nerve::t_space;
use forestcalc_core::simplicial::product::product;
use forestcalc_core::simplicial::quotient::quotient;
use forestcalc_core::simplicial::{homology, models, Coefficients, HomologyResult, Subobject};
use forestcalc_core::Partition;
use num_bigint::{BigInt, BigUint};

fn maps(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|v| (0..k).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    maps(n, n).into_iter().filter(|v| v.iter().collect::<BTreeSet<_>>().len() == n).collect()
}

/// Labels of the coarsest partition of `[k]` gluing `f(x)` and `f(y)` whenever `x ~ y`.
fn image_labels(labels: &[usize], f: &[usize], k: usize) -> Vec<usize> {
    let mut lab: Vec<usize> = (0..k).collect();
    loop {
        let mut changed = false;
        for x in 0..f.len() {
            for y in 0..f.len() {
                if labels[x] == labels[y] {
                    let (a, b) = (lab[f[x]], lab[f[y]]);
                    if a != b {
                        let (lo, hi) = (a.min(b), a.max(b));
                        lab.iter_mut().filter(|l| **l == hi).for_each(|l| *l = lo);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return lab;
        }
    }
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|x| (0..a.len()).all(|y| (a[x] == a[y]) == (b[x] == b[y])))
}

fn count_blocks(labels: &[usize]) -> usize {
    labels.iter().collect::<BTreeSet<_>>().len()
}

fn automorphisms(labels: &[usize]) -> Vec<Vec<usize>> {
    let k = labels.len();
    permutations(k)
        .into_iter()
        .filter(|s| (0..k).all(|x| (0..k).all(|y| (labels[x] == labels[y]) == (labels[s[x]] == labels[s[y]]))))
        .collect()
}

/// Surjections carrying the source partition onto the target with no loss of excess.
fn strict_maps(source: &[usize], target: &[usize]) -> Vec<Vec<usize>> {
    let (m, k) = (source.len(), target.len());
    let excess = m - count_blocks(source);
    maps(m, k)
        .into_iter()
        .filter(|f| count_blocks(f) == k)
        .filter(|f| {
            let image = image_labels(source, f, k);
            same_partition(&image, target) && k - count_blocks(&image) == excess
        })
        .collect()
}

fn partition_numbers(n: usize) -> Vec<usize> {
    let mut p = vec![0; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p
}

#[test]
fn objects_are_counted_by_partition_numbers() {
    let p = partition_numbers(5);
    for n in 1..=5 {
        assert_eq!(enumerate_en(n, 5).unwrap().len(), p[n], "n = {n}");
    }
}

#[test]
fn automorphism_orders_match_brute_force() {
    for n in 1..=3 {
        for lambda in enumerate_en(n, 5).unwrap().objects {
            let brute = automorphisms(lambda.labels()).len();
            let g = automorphism_group(&lambda);
            assert_eq!(g.order, BigUint::from(brute), "{lambda:?}");
            assert_eq!(g.elements(10_000).unwrap().len(), brute);
        }
    }
}

#[test]
fn hom_sets_match_brute_force() {
    for n in 1..=3 {
        let table = enumerate_en(n, 5).unwrap();
        for i in 0..table.len() {
            for j in 0..table.len() {
                let (s, t) = (table.objects[i].labels(), table.objects[j].labels());
                let brute = strict_maps(s, t);
                let got: BTreeSet<Vec<usize>> = table.hom(i, j).iter().map(|f| f.values().to_vec()).collect();
                assert_eq!(got, brute.iter().cloned().collect(), "{i} -> {j}");

                let aut = automorphisms(t);
                let orbits: BTreeSet<Vec<usize>> = brute
                    .iter()
                    .map(|f| aut.iter().map(|s| f.iter().map(|&x| s[x]).collect::<Vec<_>>()).min().unwrap())
                    .collect();
                assert_eq!(table.hom_classes(i, j), orbits.len(), "{i} -> {j}");
            }
        }
    }
}

#[test]
fn second_table_has_the_expected_sizes() {
    let table = enumerate_en(2, 5).unwrap();
    let (pair, triple) = (table.index_of(&Partition::from_block_sizes(&[2, 2])).unwrap(), table.index_of(&Partition::from_block_sizes(&[3])).unwrap());
    assert_eq!(table.hom(pair, triple).len(), 4 * 6);
    assert_eq!(table.hom_classes(pair, triple), 4);
    assert_eq!(table.hom(triple, pair).len(), 0);
    assert_eq!(automorphism_group(&table.objects[pair]).order, BigUint::from(8u32));
    assert_eq!(automorphism_group(&table.objects[triple]).order, BigUint::from(6u32));
}

fn mobius_to_top(lambda: &Partition) -> i64 {
    // interval above `lambda` in the refinement order, top element discrete
    let m = lambda.support();
    let finer: Vec<Vec<usize>> = maps(m, m)
        .into_iter()
        .filter(|l| (0..m).all(|x| (0..m).all(|y| l[x] != l[y] || lambda.labels()[x] == lambda.labels()[y])))
        .filter(|l| (0..m).all(|x| l[x] <= l[..x].iter().copied().max().map_or(0, |v| v + 1)))
        .collect();
    let leq = |a: &Vec<usize>, b: &Vec<usize>| (0..m).all(|x| (0..m).all(|y| b[x] != b[y] || a[x] == a[y]));
    let mut mu: Vec<Option<i64>> = vec![None; finer.len()];
    let bottom = finer.iter().position(|l| same_partition(l, lambda.labels())).unwrap();
    let mut order: Vec<usize> = (0..finer.len()).collect();
    order.sort_by_key(|&i| count_blocks(&finer[i]));
    for &i in &order {
        mu[i] = Some(if i == bottom {
            1
        } else {
            -order.iter().filter(|&&j| j != i && leq(&finer[j], &finer[i])).map(|&j| mu[j].unwrap()).sum::<i64>()
        });
    }
    let top = finer.iter().position(|l| count_blocks(l) == m).unwrap();
    mu[top].unwrap()
}

#[test]
fn t_space_euler_characteristic_is_the_mobius_function() {
    for m in 1..=5 {
        for lambda in Partition::all(m) {
            let t = t_space(&lambda, 9).unwrap();
            let mu = mobius_to_top(&lambda);
            assert_eq!(t.reduced_euler(), mu, "{lambda:?}");
            let h = homology(&t, true, Coefficients::Integers).unwrap();
            assert_eq!(h.rank(lambda.excess() as isize) as i64, mu.abs(), "{lambda:?}");
        }
    }
}

#[test]
fn indiscrete_mobius_values_are_factorials() {
    let mut factorial = 1i64;
    for m in 1..=5 {
        let sign = if (m - 1) % 2 == 0 { 1 } else { -1 };
        assert_eq!(mobius_to_top(&Partition::indiscrete(m)), sign * factorial);
        factorial *= m as i64;
    }
}

fn shape(h: &HomologyResult) -> Vec<(isize, usize, Vec<BigInt>)> {
    h.groups.iter().filter(|g| !g.is_zero()).map(|g| (g.degree, g.rank, g.torsion.clone())).collect()
}

#[test]
fn first_layer_of_points_is_a_wedge_of_circles() {
    for k in 2..=4 {
        let a = coend(&models::points(k), 1, &LayerCaps::default()).unwrap();
        let h = homology(&a.total, true, Coefficients::Integers).unwrap();
        assert_eq!(shape(&h), vec![(1, k * (k - 1) / 2, vec![])], "k = {k}");
    }
}

#[test]
fn circle_square_mod_diagonal_matches_a_finer_model() {
    let caps = LayerCaps::default();
    let coarse = power_pair(&models::minimal_circle(), &Partition::indiscrete(2), &caps).unwrap();
    let coarse = homology(&coarse.quotient, true, Coefficients::Integers).unwrap();

    let triangle = models::polygon(3);
    let square = product(&triangle, &triangle).unwrap();
    let diagonal = Subobject::from_predicate(&square.set, |c| {
        let t = square.coords(c);
        t[0] == t[1]
    });
    diagonal.check_closed(&square.set).unwrap();
    let fine = quotient(&square.set, &diagonal).unwrap();
    let fine = homology(&fine.set, true, Coefficients::Integers).unwrap();
    assert_eq!(shape(&coarse), shape(&fine));
}

#[test]
fn first_layer_of_the_circle_is_a_suspended_projective_plane() {
    let a = coend(&models::minimal_circle(), 1, &LayerCaps::default()).unwrap();
    let h = homology(&a.total, true, Coefficients::Integers).unwrap();
    let rp2 = homology(&models::real_projective_plane(), true, Coefficients::Integers).unwrap();
    let shifted: Vec<_> = shape(&rp2).into_iter().map(|(d, r, t)| (d + 1, r, t)).collect();
    assert_eq!(shape(&h), shifted);
}
