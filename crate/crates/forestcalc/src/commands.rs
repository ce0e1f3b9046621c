//! The computations behind each subcommand. Every payload carries a
//! top-level `passed` flag.

use forestcalc_core::category::{brute_force_class_count, enumerate_en, verify_nice_filtration};
use forestcalc_core::fusion::{graph_verdict, is_good};
use forestcalc_core::layers::{coend, derivative_report, LayerCaps, StratumModel};
use forestcalc_core::simplicial::cube::{total_cofiber_check, SubobjectCube};
use forestcalc_core::simplicial::nerve::{t_space, t_space_suspension_model};
use forestcalc_core::simplicial::{homology, Coefficients};
use forestcalc_core::verify::{check_names, run_check, Level, Mutation};
use forestcalc_core::{Error, Partition};
use serde_json::{json, Value};

use crate::formats::{self, homology_json, model_json, named_partition_json, partition_json, InputError, Model, NamedPartition};

pub const LAYER_SCHEMA: &str = "forestcalc.layer/1";

/// Why a subcommand could not produce a payload.
#[derive(Debug)]
pub enum Failure {
    Invalid(InputError),
    Computation(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Invalid(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. }
            | Error::InvalidPartition { .. }
            | Error::InvalidMap { .. }
            | Error::SupportMismatch { .. }
            | Error::OutOfRange { .. }
            | Error::NotPrime(_) => Failure::Invalid(InputError::new("", e.to_string())),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

pub type Outcome = Result<Value, Failure>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub support: usize,
    pub dimension: usize,
    pub n: usize,
}

impl Caps {
    pub fn json(&self) -> Value {
        json!({ "support": self.support, "dimension": self.dimension, "n": self.n })
    }

    fn layer(&self) -> LayerCaps {
        LayerCaps { support: self.support, dimension: self.dimension, n: self.n }
    }
}

pub fn enumerate(n: usize, stratum: Option<usize>, full: bool, caps: &Caps) -> Outcome {
    if n == 0 {
        return Err(InputError::new("n", "n must be at least 1").into());
    }
    if let Some(i) = stratum {
        if i == 0 || i > n {
            return Err(InputError::new("stratum", format!("stratum must lie in 1..={n}")).into());
        }
    }
    let table = enumerate_en(n, caps.n)?;
    let keep: Vec<usize> = (0..table.len()).filter(|&o| stratum.map_or(true, |i| table.stratum(o) == i)).collect();
    let objects: Vec<Value> = keep
        .iter()
        .map(|&o| {
            let g = &table.automorphisms[o];
            json!({
                "index": o,
                "stratum": table.stratum(o),
                "partition": partition_json(&table.objects[o]),
                "block_sizes": table.objects[o].block_sizes(),
                "automorphism_order": formats::number(&g.order),
                "automorphism_generators": g.generators.iter().map(|p| p.one_line()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut homs = Vec::new();
    let mut sizes = Vec::new();
    for &i in &keep {
        for &j in &keep {
            let maps = table.hom(i, j);
            let classes = table.hom_classes(i, j);
            // endomorphisms are counted as the group, other hom-sets up to automorphisms of the target
            let size = if i == j { maps.len() } else { classes };
            sizes.push(size);
            homs.push(json!({
                "from": i,
                "to": j,
                "size": size,
                "morphisms": maps.len(),
                "classes": classes,
                "maps": maps.iter().map(|f| f.values()).collect::<Vec<_>>(),
            }));
        }
    }
    let nice = verify_nice_filtration(&table);
    let mut passed = nice.passed();
    let mut payload = json!({
        "n": n,
        "stratum": stratum,
        "object_count": keep.len(),
        "objects": objects,
        "hom_sets": homs,
        "hom_set_sizes": sizes,
        "nice_filtration": {
            "passed": nice.passed(),
            "violation": nice.violation.as_ref().map(|v| json!({
                "stage": v.stage,
                "from": partition_json(&v.from),
                "to": partition_json(&v.to),
                "map": v.map.values(),
                "reason": v.reason,
            })),
        },
    });
    if full {
        let brute = brute_force_class_count(n);
        passed &= brute == table.len();
        payload["full_enumeration"] = json!({ "classes": brute, "agrees": brute == table.len() });
    }
    payload["passed"] = json!(passed);
    Ok(payload)
}

pub fn goodness(lambda: &NamedPartition, delta: Option<&NamedPartition>, caps: &Caps) -> Outcome {
    let l = &lambda.partition;
    let deltas: Vec<Partition> = match delta {
        Some(d) => {
            if d.partition.support() != l.support() {
                return Err(InputError::new(
                    "delta",
                    format!("support {} differs from the support {} of lambda", d.partition.support(), l.support()),
                )
                .into());
            }
            vec![d.partition.clone()]
        }
        None => {
            if l.support() > caps.support {
                return Err(Error::CapExceeded { what: "partition support", size: l.support(), cap: caps.support }.into());
            }
            Partition::all(l.support())
        }
    };
    let mut rows = Vec::with_capacity(deltas.len());
    let mut agree_all = true;
    let mut bad = 0;
    for d in &deltas {
        let good = is_good(d, l)?;
        let g = graph_verdict(d, l)?;
        agree_all &= good == g.good();
        bad += !good as usize;
        rows.push(json!({
            "delta": partition_json(d),
            "good": good,
            "excess": l.excess(),
            "meet_components": l.meet(d)?.num_blocks(),
            "delta_components": d.num_blocks(),
            "graph": { "forest": g.forest, "components_match": g.components_match, "connected_tree": g.connected_tree, "good": g.good() },
            "agree": good == g.good(),
        }));
    }
    Ok(json!({
        "lambda": named_partition_json(lambda),
        "rows": rows,
        "bad_count": bad,
        "criteria_agree": agree_all,
        "passed": agree_all,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TModel {
    Quotient,
    Suspension,
}

impl TModel {
    pub fn name(self) -> &'static str {
        match self {
            TModel::Quotient => "quotient",
            TModel::Suspension => "suspension",
        }
    }
}

pub fn tspace(lambda: &NamedPartition, model: TModel, coeff: Coefficients, caps: &Caps) -> Outcome {
    let l = &lambda.partition;
    let t = match model {
        TModel::Quotient => t_space(l, caps.support)?,
        TModel::Suspension => {
            if l.is_discrete() {
                return Err(InputError::new("lambda", "the suspension model needs a non-discrete partition").into());
            }
            t_space_suspension_model(l, caps.support)?
        }
    };
    let h = homology(&t, true, coeff)?;
    let e = l.excess() as isize;
    let expected: u128 = l.blocks().iter().map(|b| (1..b.len() as u128).product::<u128>()).product();
    let wedge = h.support().iter().all(|&d| d == e)
        && h.groups.iter().all(|g| g.torsion.is_empty())
        && h.rank(e) as u128 == expected;
    Ok(json!({
        "lambda": named_partition_json(lambda),
        "model": model.name(),
        "coefficients": coeff.to_string(),
        "cells": t.counts(),
        "reduced_euler": t.reduced_euler(),
        "homology": homology_json(&h),
        "expected": { "degree": e, "rank": expected.to_string() },
        "passed": wedge,
    }))
}

pub fn layer(m: &Model, n: usize, coeff: Coefficients, emit_cells: bool, caps: &Caps) -> Outcome {
    if n == 0 {
        return Err(InputError::new("n", "n must be at least 1").into());
    }
    let lc = caps.layer();
    let r = derivative_report(&m.set, n, coeff, &lc)?;
    let strata: Vec<Value> = r
        .strata
        .iter()
        .map(|s| {
            let (model, coefficients) = match s.model {
                StratumModel::Orbit => ("orbit", coeff.to_string()),
                StratumModel::RationalInvariants => ("rational, invariants model", "Q".to_string()),
            };
            json!({
                "lambda": partition_json(&s.lambda),
                "stage": s.stage,
                "group_order": formats::number(&s.group_order),
                "model": model,
                "coefficients": coefficients,
                "cells": s.counts,
                "reduced_euler": s.reduced_euler,
                "homology": homology_json(&s.homology),
            })
        })
        .collect();
    let additivity: Vec<Value> = r
        .additivity
        .iter()
        .map(|a| json!({ "stage": a.stage, "coend_difference": a.coend_difference, "strata_sum": a.strata_sum, "holds": a.holds() }))
        .collect();
    let log: Vec<Value> = r
        .log
        .iter()
        .map(|g| json!({ "from": partition_json(&g.from), "to": partition_json(&g.to), "morphisms": g.morphisms, "identified": g.identified }))
        .collect();
    let passed = r.additivity_holds() && r.support_range_ok() && r.degree_support_ok;
    let mut payload = json!({
        "schema": LAYER_SCHEMA,
        "model": { "input": m.name, "cells": r.model_counts },
        "n": n,
        "coefficients": coeff.to_string(),
        "coend": {
            "cells": r.coend_counts,
            "homology": homology_json(&r.coend_homology),
            "cell_degrees": r.cell_degrees.map(|(lo, hi)| json!([lo, hi])),
            "homology_within_cell_degrees": r.degree_support_ok,
        },
        "stage_reduced_euler": r.stage_euler,
        "strata": strata,
        "contributing_supports": r.contributing_supports,
        "supports_within_range": r.support_range_ok(),
        "additivity": additivity,
        "additivity_holds": r.additivity_holds(),
        "gluing": log,
        "notes": [
            "the coend of pairs is computed as the smash model, each piece being M^Λ / Δ^Λ M ∧ T_Λ; equality of reduced homology with the pair model is assumed",
            "GL(Λ) and the adjoint sphere twist are not modelled; the homology above is the non-equivariant input to that packaging",
            "strata labelled 'rational, invariants model' have a fixed cell off the basepoint and report rational homology of the orbit set",
        ],
        "passed": passed,
    });
    if emit_cells {
        let total = coend(&m.set, n, &lc)?.total;
        payload["coend_cells"] = model_json(&total);
    }
    Ok(payload)
}

pub fn cube_check(cube: &SubobjectCube, coeff: Coefficients) -> Outcome {
    let cert = total_cofiber_check(cube, coeff)?;
    Ok(json!({
        "dim": cert.dim,
        "ambient_cells": cube.ambient.counts(),
        "corner_cells": cube.corners.iter().map(|c| c.counts()).collect::<Vec<_>>(),
        "coefficients": coeff.to_string(),
        "total_cofiber_ranks": cert.total_ranks,
        "square_zero": cert.square_zero,
        "homology": homology_json(&cert.homology),
        "acyclic": cert.acyclic,
        "passed": cert.acyclic,
    }))
}

pub fn verify(level: Level, only: &[String], mutation: Mutation) -> Outcome {
    let known = check_names();
    for name in only {
        if !known.contains(&name.as_str()) {
            return Err(InputError::new("check", format!("unknown check {name:?}")).into());
        }
    }
    let names: Vec<&str> = if only.is_empty() { known } else { only.iter().map(String::as_str).collect() };
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for name in names {
        let outcome = run_check(name, level, mutation).expect("known check");
        if !outcome.passed() {
            failed.push(name);
        }
        rows.push(json!({
            "name": outcome.name,
            "cases": outcome.cases,
            "passed": outcome.passed(),
            "counterexample": outcome.counterexample,
        }));
    }
    Ok(json!({
        "level": level.name(),
        "mutation": { "flip_strictness": mutation.flip_strictness },
        "checks": rows,
        "failed": failed,
        "passed": failed.is_empty(),
    }))
}

/// A short human rendering of a payload.
pub fn render_text(subcommand: &str, p: &Value) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    let flag = |v: &Value| if v.as_bool() == Some(true) { "pass" } else { "FAIL" };
    match subcommand {
        "enumerate" => {
            line(format!("E_{}: {} objects", p["n"], p["object_count"]));
            for o in p["objects"].as_array().into_iter().flatten() {
                line(format!(
                    "  #{} stratum {} sizes {} |Aut| = {}",
                    o["index"], o["stratum"], o["block_sizes"], o["automorphism_order"]
                ));
            }
            for h in p["hom_sets"].as_array().into_iter().flatten() {
                line(format!("  #{} -> #{}: {} maps, {} classes", h["from"], h["to"], h["morphisms"], h["classes"]));
            }
            line(format!("nice filtration: {}", flag(&p["nice_filtration"]["passed"])));
        }
        "goodness" => {
            for r in p["rows"].as_array().into_iter().flatten() {
                let d = &r["delta"]["blocks"];
                line(format!("  {d}: {}", if r["good"].as_bool() == Some(true) { "good" } else { "bad" }));
            }
            line(format!("criteria agree: {}", flag(&p["criteria_agree"])));
        }
        "tspace" | "cube-check" => {
            for g in p["homology"].as_array().into_iter().flatten() {
                line(format!("  H{}: rank {} torsion {}", g["degree"], g["rank"], g["torsion"]));
            }
            if p["homology"].as_array().map_or(true, |a| a.is_empty()) {
                line("  acyclic".to_string());
            }
        }
        "layer" => {
            line(format!("coend cells {}", p["coend"]["cells"]));
            for g in p["coend"]["homology"].as_array().into_iter().flatten() {
                line(format!("  H{}: rank {} torsion {}", g["degree"], g["rank"], g["torsion"]));
            }
            for s in p["strata"].as_array().into_iter().flatten() {
                line(format!("  stratum {} {}: {}", s["stage"], s["lambda"]["blocks"], s["homology"]));
            }
            line(format!("additivity: {}", flag(&p["additivity_holds"])));
        }
        "verify" => {
            for c in p["checks"].as_array().into_iter().flatten() {
                let mut s = format!("  {:<40} {} ({} cases)", c["name"].as_str().unwrap_or(""), flag(&c["passed"]), c["cases"]);
                if let Some(x) = c["counterexample"].as_str() {
                    s.push_str(&format!(": {x}"));
                }
                line(s);
            }
        }
        _ => {}
    }
    line(format!("{subcommand}: {}", flag(&p["passed"])));
    out
}
