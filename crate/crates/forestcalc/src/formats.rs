//! JSON formats for partitions, simplicial sets, cubes and homology.

use std::collections::BTreeMap;
use std::fmt;

use forestcalc_core::simplicial::cube::{cover_cube, SubobjectCube};
use forestcalc_core::simplicial::op::Op;
use forestcalc_core::simplicial::{models, CellId, Coefficients, HomologyResult, Simplex, SimplicialSet, Subobject};
use forestcalc_core::Partition;
use serde::Deserialize;
use serde_json::{json, Value};

/// A rejected input, with the field that caused it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { field: field.into(), message: message.into() }
    }

    fn within(self, outer: &str) -> Self {
        let field = if self.field.is_empty() { outer.to_string() } else { format!("{outer}.{}", self.field) };
        InputError { field, ..self }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

pub type InputResult<T> = Result<T, InputError>;

fn parse_json<'a, T: Deserialize<'a>>(field: &str, text: &'a str) -> InputResult<T> {
    serde_json::from_str(text)
        .map_err(|e| InputError::new(field, format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Reads an argument that is either inline JSON or a path to a JSON file.
pub fn inline_or_file(field: &str, arg: &str) -> InputResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| InputError::new(field, format!("cannot read {arg}: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Support {
    Size(usize),
    Names(Vec<String>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Element {
    Index(usize),
    Name(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionJson {
    support: Support,
    blocks: Vec<Vec<Element>>,
}

/// A partition together with the names of its support points, if any were given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPartition {
    pub partition: Partition,
    pub names: Option<Vec<String>>,
}

pub fn parse_partition(field: &str, text: &str) -> InputResult<NamedPartition> {
    let raw: PartitionJson = parse_json(field, text)?;
    let (m, names) = match raw.support {
        Support::Size(m) => (m, None),
        Support::Names(names) => {
            let mut seen = BTreeMap::new();
            for (i, n) in names.iter().enumerate() {
                if seen.insert(n.clone(), i).is_some() {
                    return Err(InputError::new(format!("{field}.support[{i}]"), format!("duplicate name {n:?}")));
                }
            }
            (names.len(), Some(names))
        }
    };
    let mut blocks = Vec::with_capacity(raw.blocks.len());
    for (b, block) in raw.blocks.iter().enumerate() {
        let mut out = Vec::with_capacity(block.len());
        for (j, e) in block.iter().enumerate() {
            let at = || format!("{field}.blocks[{b}][{j}]");
            let x = match (e, &names) {
                (Element::Index(x), _) => *x,
                (Element::Name(s), Some(names)) => names
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| InputError::new(at(), format!("{s:?} is not a support name")))?,
                (Element::Name(s), None) => {
                    return Err(InputError::new(at(), format!("named element {s:?} needs a named support")))
                }
            };
            if x >= m {
                return Err(InputError::new(at(), format!("element {x} outside support of size {m}")));
            }
            out.push(x);
        }
        blocks.push(out);
    }
    let partition = Partition::new(m, blocks).map_err(|e| InputError::new(format!("{field}.blocks"), e.to_string()))?;
    Ok(NamedPartition { partition, names })
}

pub fn partition_json(p: &Partition) -> Value {
    json!({ "support": p.support(), "blocks": p.blocks() })
}

pub fn named_partition_json(p: &NamedPartition) -> Value {
    let mut v = partition_json(&p.partition);
    if let Some(names) = &p.names {
        v["names"] = json!(names);
    }
    v
}

pub fn parse_coefficients(text: &str) -> InputResult<Coefficients> {
    let field = "coeff";
    match text {
        "Z" => Ok(Coefficients::Integers),
        "Q" => Ok(Coefficients::Rationals),
        _ => {
            let digits = text
                .strip_prefix('F')
                .ok_or_else(|| InputError::new(field, format!("{text:?} is not one of Z, Q, F<p>")))?;
            let p: u64 =
                digits.parse().map_err(|_| InputError::new(field, format!("{text:?} is not one of Z, Q, F<p>")))?;
            if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                return Err(InputError::new(field, format!("{p} is not a prime")));
            }
            Ok(Coefficients::Prime(p))
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FaceJson {
    Cell(usize),
    Degenerate { dim: usize, cell: usize, degeneracy: Vec<usize> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    builtin: Option<String>,
    k: Option<usize>,
    vertices: Option<usize>,
    simplices: Option<Vec<Vec<usize>>>,
    cells: Option<Vec<Vec<Vec<FaceJson>>>>,
    basepoint: Option<usize>,
}

/// A simplicial set with the name it was given on the command line.
#[derive(Debug, Clone)]
pub struct Model {
    pub name: Value,
    pub set: SimplicialSet,
}

pub const BUILTINS: &[&str] = &["points", "interval", "circle", "wedge", "polygon", "path", "rp2"];

pub fn builtin(name: &str, k: Option<usize>) -> InputResult<SimplicialSet> {
    let need = |min: usize| -> InputResult<usize> {
        let k = k.ok_or_else(|| InputError::new("k", format!("model {name} needs a size k")))?;
        if k < min {
            return Err(InputError::new("k", format!("model {name} needs k ≥ {min}, got {k}")));
        }
        Ok(k)
    };
    let forbid = || -> InputResult<()> {
        match k {
            Some(_) => Err(InputError::new("k", format!("model {name} takes no size"))),
            None => Ok(()),
        }
    };
    match name {
        "points" => Ok(models::points(need(1)?)),
        "interval" => forbid().map(|_| models::interval()),
        "circle" => forbid().map(|_| models::minimal_circle()),
        "wedge" => Ok(models::wedge_of_circles(need(1)?)),
        "polygon" => Ok(models::polygon(need(2)?)),
        "path" => Ok(models::path(need(1)?)),
        "rp2" => forbid().map(|_| models::real_projective_plane()),
        _ => Err(InputError::new("builtin", format!("unknown model {name:?}; expected one of {}", BUILTINS.join(", ")))),
    }
}

/// `circle`, `points:3`, inline JSON or a path to a JSON file.
pub fn parse_model_arg(field: &str, arg: &str) -> InputResult<Model> {
    let (head, tail) = match arg.split_once(':') {
        Some((h, t)) => (h, Some(t)),
        None => (arg, None),
    };
    if BUILTINS.contains(&head) {
        let k = match tail {
            Some(t) => Some(t.parse().map_err(|_| InputError::new(field, format!("bad size {t:?} in {arg:?}")))?),
            None => None,
        };
        let set = builtin(head, k).map_err(|e| e.within(field))?;
        let name = match k {
            Some(k) => json!({ "builtin": head, "k": k }),
            None => json!({ "builtin": head }),
        };
        return Ok(Model { name, set });
    }
    let text = inline_or_file(field, arg)?;
    let value: Value = parse_json(field, &text)?;
    let set = parse_model_value(&value).map_err(|e| e.within(field))?;
    Ok(Model { name: value, set })
}

pub fn parse_model_value(value: &Value) -> InputResult<SimplicialSet> {
    let raw: ModelJson = serde_json::from_value(value.clone()).map_err(|e| InputError::new("", e.to_string()))?;
    let set = match (&raw.builtin, &raw.simplices, &raw.cells) {
        (Some(name), None, None) => {
            if raw.vertices.is_some() || raw.basepoint.is_some() {
                return Err(InputError::new("builtin", "a builtin model takes only k"));
            }
            return builtin(name, raw.k);
        }
        (None, Some(simplices), None) => {
            let n = raw.vertices.ok_or_else(|| InputError::new("vertices", "missing vertex count"))?;
            for (i, s) in simplices.iter().enumerate() {
                if s.is_empty() || s.len() > 8 {
                    return Err(InputError::new(format!("simplices[{i}]"), "a simplex has 1 to 8 vertices"));
                }
                if s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(InputError::new(format!("simplices[{i}]"), "vertices must be strictly increasing"));
                }
                if let Some(&v) = s.iter().find(|&&v| v >= n) {
                    return Err(InputError::new(format!("simplices[{i}]"), format!("vertex {v} outside 0..{n}")));
                }
            }
            models::simplicial_complex(n, simplices)
        }
        (None, None, Some(cells)) => {
            let n = raw.vertices.ok_or_else(|| InputError::new("vertices", "missing vertex count"))?;
            build_cells(n, cells)?
        }
        (None, None, None) => return Err(InputError::new("", "expected one of builtin, simplices, cells")),
        _ => return Err(InputError::new("", "builtin, simplices and cells are mutually exclusive")),
    };
    if raw.k.is_some() {
        return Err(InputError::new("k", "k only applies to builtin models"));
    }
    let mut set = set;
    if let Some(b) = raw.basepoint {
        if b >= set.count(0) {
            return Err(InputError::new("basepoint", format!("vertex {b} does not exist")));
        }
        set.set_basepoint(Some(b));
    }
    Ok(set)
}

fn build_cells(vertices: usize, cells: &[Vec<Vec<FaceJson>>]) -> InputResult<SimplicialSet> {
    let mut x = models::points(vertices);
    for (i, level) in cells.iter().enumerate() {
        let k = i + 1;
        for (id, faces) in level.iter().enumerate() {
            let at = |j: usize| format!("cells[{i}][{id}][{j}]");
            if faces.len() != k + 1 {
                return Err(InputError::new(
                    format!("cells[{i}][{id}]"),
                    format!("a {k}-cell has {} faces, got {}", k + 1, faces.len()),
                ));
            }
            let mut out = Vec::with_capacity(k + 1);
            for (j, f) in faces.iter().enumerate() {
                let s = match f {
                    FaceJson::Cell(c) => {
                        if *c >= x.count(k - 1) {
                            return Err(InputError::new(at(j), format!("no {}-cell {c}", k - 1)));
                        }
                        Simplex::nondegenerate(CellId { dim: k - 1, id: *c })
                    }
                    FaceJson::Degenerate { dim, cell, degeneracy } => {
                        if *dim >= k - 1 || *cell >= x.count(*dim) {
                            return Err(InputError::new(at(j), format!("no {dim}-cell {cell} below dimension {}", k - 1)));
                        }
                        let surjective = degeneracy.len() == k
                            && degeneracy.first() == Some(&0)
                            && degeneracy.last() == Some(dim)
                            && degeneracy.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
                        if !surjective {
                            return Err(InputError::new(
                                at(j),
                                format!("degeneracy must be a monotone surjection [{}] → [{dim}]", k - 1),
                            ));
                        }
                        let values = degeneracy.iter().map(|&v| v as u8).collect();
                        Simplex { cell: CellId { dim: *dim, id: *cell }, deg: Op::new(values, *dim) }
                    }
                };
                out.push(s);
            }
            x.add_cell(k, out);
        }
    }
    x.verify().map_err(|e| InputError::new("cells", e.to_string()))?;
    Ok(x)
}

/// The `cells` form of a simplicial set; round-trips through [`parse_model_value`].
pub fn model_json(x: &SimplicialSet) -> Value {
    let cells: Vec<Value> = (1..=x.dim().unwrap_or(0))
        .map(|k| {
            Value::Array(
                x.cells(k)
                    .map(|c| {
                        Value::Array(
                            x.faces_of(c)
                                .iter()
                                .map(|s| {
                                    if s.is_degenerate() {
                                        json!({ "dim": s.cell.dim, "cell": s.cell.id, "degeneracy": s.deg.values() })
                                    } else {
                                        json!(s.cell.id)
                                    }
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let mut v = json!({ "vertices": x.count(0), "cells": cells });
    if let Some(b) = x.basepoint() {
        v["basepoint"] = json!(b);
    }
    v
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeJson {
    ambient: Value,
    cover: Option<Vec<Vec<(usize, usize)>>>,
    corners: Option<Vec<Vec<(usize, usize)>>>,
}

fn generated(x: &SimplicialSet, field: &str, cells: &[(usize, usize)]) -> InputResult<Subobject> {
    for (j, &(dim, id)) in cells.iter().enumerate() {
        if id >= x.count(dim) {
            return Err(InputError::new(format!("{field}[{j}]"), format!("no {dim}-cell {id}")));
        }
    }
    Ok(Subobject::generated_by(x, cells.iter().map(|&(dim, id)| CellId { dim, id })))
}

/// A cube of subobjects: either a cover `{"ambient", "cover": [...]}` or
/// explicit corners `{"ambient", "corners": [...]}` indexed by bitmask.
/// Each piece is listed by generating cells `[dim, id]`.
pub fn parse_cube(field: &str, text: &str) -> InputResult<SubobjectCube> {
    let raw: CubeJson = parse_json(field, text)?;
    let ambient = parse_model_value(&raw.ambient).map_err(|e| e.within(&format!("{field}.ambient")))?;
    match (raw.cover, raw.corners) {
        (Some(cover), None) => {
            if cover.is_empty() || cover.len() > 4 {
                return Err(InputError::new(format!("{field}.cover"), "a cover has 1 to 4 pieces"));
            }
            let pieces = cover
                .iter()
                .enumerate()
                .map(|(i, c)| generated(&ambient, &format!("{field}.cover[{i}]"), c))
                .collect::<InputResult<Vec<_>>>()?;
            Ok(cover_cube(ambient, &pieces))
        }
        (None, Some(corners)) => {
            let dim = corners.len().trailing_zeros() as usize;
            if corners.len() != 1 << dim || dim == 0 || dim > 4 {
                return Err(InputError::new(format!("{field}.corners"), "expected 2, 4, 8 or 16 corners"));
            }
            let corners = corners
                .iter()
                .enumerate()
                .map(|(i, c)| generated(&ambient, &format!("{field}.corners[{i}]"), c))
                .collect::<InputResult<Vec<_>>>()?;
            let cube = SubobjectCube { ambient, dim, corners };
            cube.validate().map_err(|e| InputError::new(format!("{field}.corners"), e.to_string()))?;
            Ok(cube)
        }
        _ => Err(InputError::new(field, "expected exactly one of cover, corners")),
    }
}

fn big(v: &impl ToString) -> Value {
    let s = v.to_string();
    match s.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(s),
    }
}

pub fn number(v: &impl ToString) -> Value {
    big(v)
}

/// Nonzero groups as `{"degree", "rank", "torsion"}` rows.
pub fn homology_json(h: &HomologyResult) -> Value {
    Value::Array(
        h.groups
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| json!({ "degree": g.degree, "rank": g.rank, "torsion": g.torsion.iter().map(big).collect::<Vec<_>>() }))
            .collect(),
    )
}

/// `ℤ^2 ⊕ ℤ/2` style rendering of one group.
pub fn group_text(rank: usize, torsion: &[impl ToString], coeff: Coefficients) -> String {
    let ring = match coeff {
        Coefficients::Integers => "Z".to_string(),
        Coefficients::Rationals => "Q".to_string(),
        Coefficients::Prime(p) => format!("F{p}"),
    };
    let mut parts = Vec::new();
    if rank == 1 {
        parts.push(ring.clone());
    } else if rank > 1 {
        parts.push(format!("{ring}^{rank}"));
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{}", t.to_string())));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn homology_text(h: &HomologyResult, coeff: Coefficients) -> String {
    let rows: Vec<String> = h
        .groups
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| format!("H{} = {}", g.degree, group_text(g.rank, &g.torsion, coeff)))
        .collect();
    if rows.is_empty() {
        "acyclic".to_string()
    } else {
        rows.join(", ")
    }
}
