//! Acceptance criteria 1–11. Prints one line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use forestcalc_core::category::{automorphism_group, brute_force_class_count, enumerate_en, verify_nice_filtration};
use forestcalc_core::cofibrant::verify_essentially_cofibrant;
use forestcalc_core::layers::{coend, derivative_report, LayerCaps};
use forestcalc_core::simplicial::cube::{cover_cube, total_cofiber_check};
use forestcalc_core::simplicial::nerve::{t_space, t_space_suspension_model};
use forestcalc_core::simplicial::{homology, models, CellId, Coefficients, HomologyResult, SimplicialSet, Subobject};
use forestcalc_core::verify::{run_check, Level, Mutation};
use forestcalc_core::Partition;
use serde_json::Value;

type Verdict = Result<String, String>;

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_forestcalc"))
        .args(args)
        .arg("--no-cache")
        .output()
        .expect("run forestcalc");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, format!("took {t:.2?}, budget {budget:?}"))
}

fn shape(h: &HomologyResult) -> Vec<(isize, usize, Vec<String>)> {
    h.groups
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g.degree, g.rank, g.torsion.iter().map(|t| t.to_string()).collect()))
        .collect()
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let table = enumerate_en(2, 5).map_err(|e| e.to_string())?;
    ensure(table.len() == 2, format!("{} classes", table.len()))?;
    let pair = table.index_of(&Partition::from_block_sizes(&[2, 2])).ok_or("no (12)(34)")?;
    let triple = table.index_of(&Partition::from_block_sizes(&[3])).ok_or("no (123)")?;
    let orders: Vec<String> = [pair, triple].iter().map(|&o| automorphism_group(&table.objects[o]).order.to_string()).collect();
    ensure(orders == ["8", "6"], format!("automorphism orders {orders:?}"))?;
    let forward = table.hom_classes(pair, triple);
    ensure(forward == 4, format!("{forward} morphisms (12)(34) → (123)"))?;
    let reverse = table.hom(triple, pair).len();
    ensure(reverse == 0, format!("{reverse} reverse morphisms"))?;
    within(start, Duration::from_secs(1))?;

    let (code, stdout) = cli(&["enumerate", "--n", "2"]);
    let env: Value = serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
    let sizes: BTreeSet<u64> =
        env["payload"]["hom_set_sizes"].as_array().ok_or("no sizes")?.iter().filter_map(Value::as_u64).collect();
    ensure(code == 0 && sizes == BTreeSet::from([0, 4, 6, 8]), format!("cli sizes {sizes:?}, exit {code}"))?;
    Ok(format!("2 classes, |Aut| 8 and 6, 4 forward ({} raw), 0 reverse", table.hom(pair, triple).len()))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    // p(n) by the pentagonal-free recurrence over largest part
    let mut p = vec![vec![0usize; 6]; 6];
    for k in 0..6 {
        p[0][k] = 1;
    }
    for n in 1..6 {
        for k in 1..6 {
            p[n][k] = p[n][k - 1] + if n >= k { p[n - k][k] } else { 0 };
        }
    }
    let expected: Vec<usize> = (1..=5).map(|n| p[n][5]).collect();
    ensure(expected == [1, 2, 3, 5, 7], format!("oracle gave {expected:?}"))?;
    let mut skeletal = Vec::new();
    let mut brute = Vec::new();
    for n in 1..=5 {
        skeletal.push(enumerate_en(n, 5).map_err(|e| e.to_string())?.len());
        brute.push(brute_force_class_count(n));
    }
    ensure(skeletal == expected, format!("skeletal {skeletal:?}"))?;
    ensure(brute == expected, format!("full enumeration {brute:?}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("classes {skeletal:?} = p(n), full enumeration agrees"))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    for n in 2..=5 {
        let h = homology(&t_space(&Partition::indiscrete(n), 9).map_err(|e| e.to_string())?, true, Coefficients::Integers)
            .map_err(|e| e.to_string())?;
        let want = vec![(n as isize - 1, factorial(n - 1), vec![])];
        ensure(shape(&h) == want, format!("T_{n}: {:?}", shape(&h)))?;
    }
    let mut count = 0;
    for m in 1..=6 {
        for lambda in Partition::all(m) {
            let h = homology(&t_space(&lambda, 9).map_err(|e| e.to_string())?, true, Coefficients::Integers)
                .map_err(|e| e.to_string())?;
            let rank: usize = lambda.blocks().iter().map(|b| factorial(b.len() - 1)).product();
            let want = vec![(lambda.excess() as isize, rank, vec![])];
            ensure(shape(&h) == want, format!("{lambda}: {:?}", shape(&h)))?;
            count += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("T_2..T_5 and all {count} partitions of support ≤ 6"))
}

fn criterion_4() -> Verdict {
    let mut count = 0;
    for m in 1..=5 {
        for lambda in Partition::all(m).into_iter().filter(|l| !l.is_discrete()) {
            let q = homology(&t_space(&lambda, 9).map_err(|e| e.to_string())?, true, Coefficients::Integers)
                .map_err(|e| e.to_string())?;
            let s = homology(&t_space_suspension_model(&lambda, 9).map_err(|e| e.to_string())?, true, Coefficients::Integers)
                .map_err(|e| e.to_string())?;
            ensure(shape(&q) == shape(&s), format!("{lambda}: {:?} vs {:?}", shape(&q), shape(&s)))?;
            count += 1;
        }
    }
    Ok(format!("{count} non-discrete partitions of support ≤ 5"))
}

fn run_named(names: &[&str], level: Level) -> Result<u64, String> {
    let mut cases = 0;
    for name in names {
        let o = run_check(name, level, Mutation::default()).ok_or(format!("no check {name}"))?;
        if let Some(c) = o.counterexample {
            return Err(format!("{name}: {c}"));
        }
        cases += o.cases;
    }
    Ok(cases)
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let cases = run_named(&["strictness_criteria_agree", "decomposition_sound"], Level::Exhaustive)?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{cases} fusions between supports ≤ 5"))
}

fn criterion_6() -> Verdict {
    let agree = run_named(&["goodness_criteria_agree"], Level::Exhaustive)?;
    let hereditary = run_named(&["badness_hereditary", "badness_preserved_by_strict_fusions"], Level::Quick)?;
    Ok(format!("{agree} pairs on supports ≤ 5, {hereditary} hereditary cases on supports ≤ 4"))
}

fn criterion_7() -> Verdict {
    for n in 1..=4 {
        let table = enumerate_en(n, 5).map_err(|e| e.to_string())?;
        let cert = verify_nice_filtration(&table);
        ensure(cert.passed(), format!("E_{n}: {:?}", cert.violation))?;
    }
    Ok("E_1..E_4 nicely filtered".to_string())
}

fn criterion_8() -> Verdict {
    let caps = LayerCaps::default();
    let mut objects = 0;
    for (name, m) in [("2 points", models::points(2)), ("3 points", models::points(3)), ("circle", models::minimal_circle())] {
        for n in 1..=2 {
            for c in verify_essentially_cofibrant(&m, n, &caps).map_err(|e| e.to_string())? {
                ensure(c.passed(), format!("{name}, n = {n}, {}: {c:?}", c.lambda))?;
                ensure(c.image_counts == c.fat_diagonal_counts, format!("{name}, n = {n}: counts differ"))?;
                objects += 1;
            }
        }
    }
    Ok(format!("{objects} objects over 3 models, n ≤ 2"))
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let caps = LayerCaps::default();
    for (k, rank) in [(2usize, 1usize), (3, 3)] {
        // orbit oracle: ordered pairs of distinct points up to swapping
        let orbits: BTreeSet<(usize, usize)> =
            (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
        ensure(orbits.len() == rank, "orbit oracle")?;
        let r = derivative_report(&models::points(k), 1, Coefficients::Integers, &caps).map_err(|e| e.to_string())?;
        let want = vec![(1isize, rank, vec![])];
        ensure(shape(&r.coend_homology) == want, format!("{k} points coend: {:?}", shape(&r.coend_homology)))?;
        ensure(r.strata.len() == 1 && shape(&r.strata[0].homology) == want, format!("{k} points stratum differs"))?;
    }
    let (code, stdout) = cli(&["layer", "--m", "points:2", "--n", "1"]);
    let env: Value = serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
    let h = &env["payload"]["coend"]["homology"];
    ensure(code == 0 && *h == serde_json::json!([{ "degree": 1, "rank": 1, "torsion": [] }]), format!("cli: {h}"))?;
    let mut computed = 0;
    for (name, m) in [("2 points", models::points(2)), ("3 points", models::points(3)), ("circle", models::minimal_circle())] {
        for n in 1..=2 {
            let r = derivative_report(&m, n, Coefficients::Integers, &caps).map_err(|e| e.to_string())?;
            ensure(r.additivity_holds(), format!("{name}, n = {n}: {:?}", r.additivity))?;
            computed += 1;
        }
    }
    within(start, Duration::from_secs(300))?;
    let circle = coend(&models::minimal_circle(), 2, &caps).map_err(|e| e.to_string())?;
    let h = homology(&circle.total, true, Coefficients::Integers).map_err(|e| e.to_string())?;
    Ok(format!("2 points rank 1, 3 points rank 3, additivity on {computed} cases; circle n = 2: {:?}", shape(&h)))
}

fn edges(x: &SimplicialSet, ids: &[usize]) -> Subobject {
    Subobject::generated_by(x, ids.iter().map(|&id| CellId { dim: 1, id }))
}

fn criterion_10() -> Verdict {
    let interval = models::path(4);
    let square = cover_cube(interval.clone(), &[edges(&interval, &[0, 1, 2]), edges(&interval, &[2, 3])]);
    let circle = models::polygon(6);
    let three = cover_cube(circle.clone(), &[edges(&circle, &[0, 1, 2]), edges(&circle, &[2, 3, 4]), edges(&circle, &[4, 5, 0])]);
    for (name, cube) in [("interval square", &square), ("circle 3-cube", &three)] {
        let cert = total_cofiber_check(cube, Coefficients::Integers).map_err(|e| e.to_string())?;
        ensure(cert.square_zero && cert.acyclic, format!("{name} not acyclic: {:?}", shape(&cert.homology)))?;
    }
    let square4 = models::polygon(4);
    let mut wrong = cover_cube(square4.clone(), &[edges(&square4, &[0, 1]), edges(&square4, &[2, 3])]);
    wrong.corners[0] = Subobject::generated_by(&square4, [CellId { dim: 0, id: 0 }]);
    let cert = total_cofiber_check(&wrong, Coefficients::Integers).map_err(|e| e.to_string())?;
    ensure(!cert.acyclic && !cert.homology.support().is_empty(), "negative control is acyclic")?;

    // the same negative control through the command line
    let cube = r#"{"ambient":{"builtin":"polygon","k":4},"corners":[[[0,0]],[[1,0],[1,1]],[[1,2],[1,3]],[[1,0],[1,1],[1,2],[1,3]]]}"#;
    let (code, _) = cli(&["cube-check", "--cube", cube]);
    ensure(code == 1, format!("cli negative control exit {code}"))?;
    let cover = r#"{"ambient":{"builtin":"polygon","k":6},"cover":[[[1,0],[1,1],[1,2]],[[1,2],[1,3],[1,4]],[[1,4],[1,5],[1,0]]]}"#;
    let (code, _) = cli(&["cube-check", "--cube", cover]);
    ensure(code == 0, format!("cli circle cover exit {code}"))?;
    Ok(format!("covers acyclic; negative control has homology {:?}", shape(&cert.homology)))
}

fn criterion_11() -> Verdict {
    let start = Instant::now();
    let (c1, first) = cli(&["verify", "--quick"]);
    let quick = start.elapsed();
    let (c2, second) = cli(&["verify", "--quick"]);
    ensure(c1 == 0 && c2 == 0, format!("exit codes {c1}, {c2}"))?;
    ensure(first == second, "envelopes differ")?;
    ensure(quick < Duration::from_secs(30), format!("quick suite took {quick:.2?}"))?;
    Ok(format!("{} identical bytes, quick suite {quick:.2?}", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("E_2 table", criterion_1),
        ("class counts p(n)", criterion_2),
        ("T-space homology", criterion_3),
        ("quotient vs suspension model", criterion_4),
        ("strict-fusion triple agreement", criterion_5),
        ("goodness double criterion", criterion_6),
        ("nice filtration", criterion_7),
        ("fat-diagonal reconstruction", criterion_8),
        ("layer pipeline", criterion_9),
        ("cube checker", criterion_10),
        ("determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let t = start.elapsed();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({t:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({t:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
