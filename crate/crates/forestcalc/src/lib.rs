//! Command line front end for `forestcalc-core`: JSON formats, run
//! configuration, result envelopes and an on-disk result cache.

pub mod commands;
pub mod formats;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use forestcalc_core::category::DEFAULT_N_CAP;
use forestcalc_core::layers::DEFAULT_LAYER_N_CAP;
use forestcalc_core::partition::DEFAULT_SUPPORT_CAP;
use forestcalc_core::simplicial::cube::SubobjectCube;
use forestcalc_core::simplicial::product::DEFAULT_DIMENSION_CAP;
use forestcalc_core::simplicial::Coefficients;
use forestcalc_core::verify::{Level, Mutation};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use commands::{Caps, Failure, TModel};
use formats::{InputError, Model, NamedPartition};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CACHE_ENV: &str = "FORESTCALC_CACHE";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Debug)]
pub enum Command {
    Enumerate { n: usize, stratum: Option<usize>, full: bool },
    Goodness { lambda: NamedPartition, delta: Option<NamedPartition> },
    TSpace { lambda: NamedPartition, model: TModel },
    Layer { m: Model, n: usize, emit_cells: bool },
    CubeCheck { cube: Box<SubobjectCube>, input: Value },
    Verify { level: Level, checks: Vec<String>, mutation: Mutation },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Enumerate { .. } => "enumerate",
            Command::Goodness { .. } => "goodness",
            Command::TSpace { .. } => "tspace",
            Command::Layer { .. } => "layer",
            Command::CubeCheck { .. } => "cube-check",
            Command::Verify { .. } => "verify",
        }
    }

    fn inputs(&self) -> Value {
        match self {
            Command::Enumerate { n, stratum, full } => json!({ "n": n, "stratum": stratum, "full": full }),
            Command::Goodness { lambda, delta } => json!({
                "lambda": formats::named_partition_json(lambda),
                "delta": delta.as_ref().map(formats::named_partition_json),
            }),
            Command::TSpace { lambda, model } => {
                json!({ "lambda": formats::named_partition_json(lambda), "model": model.name() })
            }
            Command::Layer { m, n, emit_cells } => json!({ "m": m.name, "n": n, "emit_cells": emit_cells }),
            Command::CubeCheck { input, .. } => json!({ "cube": input }),
            Command::Verify { level, checks, mutation } => json!({
                "level": level.name(),
                "checks": checks,
                "flip_strictness": mutation.flip_strictness,
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub caps: Caps,
    pub coeff: Option<Coefficients>,
    /// `None` disables the cache.
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub timing: bool,
}

/// Caps as given on the command line; unset fields take per-subcommand defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct CapArgs {
    pub support: Option<usize>,
    pub dimension: Option<usize>,
    pub n: Option<usize>,
}

impl CapArgs {
    pub fn resolve(&self, command: &Command) -> Result<Caps, InputError> {
        let n_default = match command {
            Command::Layer { .. } => DEFAULT_LAYER_N_CAP,
            _ => DEFAULT_N_CAP,
        };
        let caps = Caps {
            support: self.support.unwrap_or(DEFAULT_SUPPORT_CAP),
            dimension: self.dimension.unwrap_or(DEFAULT_DIMENSION_CAP),
            n: self.n.unwrap_or(n_default),
        };
        for (field, v) in [("support-cap", caps.support), ("dim-cap", caps.dimension), ("n-cap", caps.n)] {
            if v == 0 {
                return Err(InputError::new(field, "caps must be positive"));
            }
        }
        Ok(caps)
    }
}

/// `--cache-dir`, else `$FORESTCALC_CACHE`, else the user cache directory.
pub fn default_cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    if flag.is_some() {
        return flag;
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(dir).join("forestcalc"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("forestcalc"))
}

impl RunConfig {
    /// Everything that determines the payload.
    pub fn echo(&self) -> Value {
        json!({
            "subcommand": self.command.name(),
            "inputs": self.command.inputs(),
            "caps": self.caps.json(),
            "coefficients": self.coeff.map(|c| c.to_string()),
            "deterministic": true,
        })
    }

    pub fn cache_key(&self) -> String {
        let key = json!({ "version": VERSION, "config": self.echo() });
        hex::encode(Sha256::digest(key.to_string().as_bytes()))
    }
}

#[derive(Clone, Debug)]
pub struct ResultEnvelope {
    pub subcommand: &'static str,
    pub config: Value,
    pub payload: Value,
    pub digest: String,
    pub wall_time_ms: Option<u128>,
}

impl ResultEnvelope {
    pub fn passed(&self) -> bool {
        self.payload["passed"].as_bool() == Some(true)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "tool": "forestcalc",
            "version": VERSION,
            "config": self.config,
            "payload": self.payload,
            "digest": self.digest,
            "status": if self.passed() { "pass" } else { "fail" },
        });
        if let Some(ms) = self.wall_time_ms {
            v["wall_time_ms"] = json!(ms as u64);
        }
        v
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("forestcalc {} {}  digest {}\n", VERSION, self.subcommand, self.digest);
                s.push_str(&commands::render_text(self.subcommand, &self.payload));
                if let Some(ms) = self.wall_time_ms {
                    s.push_str(&format!("wall time {ms} ms\n"));
                }
                s
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// SHA-256 of the compact serialization; object keys are always sorted.
pub fn digest(payload: &Value) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(payload.to_string().as_bytes())))
}

fn compute(config: &RunConfig) -> Result<Value, Failure> {
    let caps = &config.caps;
    let coeff = config.coeff.unwrap_or(Coefficients::Integers);
    match &config.command {
        Command::Enumerate { n, stratum, full } => commands::enumerate(*n, *stratum, *full, caps),
        Command::Goodness { lambda, delta } => commands::goodness(lambda, delta.as_ref(), caps),
        Command::TSpace { lambda, model } => commands::tspace(lambda, *model, coeff, caps),
        Command::Layer { m, n, emit_cells } => commands::layer(m, *n, coeff, *emit_cells, caps),
        Command::CubeCheck { cube, .. } => commands::cube_check(cube, coeff),
        Command::Verify { level, checks, mutation } => commands::verify(*level, checks, *mutation),
    }
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

fn cache_load(dir: &Path, key: &str) -> Option<Value> {
    let text = std::fs::read_to_string(cache_path(dir, key)).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    (v.get("version")? == VERSION && v.get("digest")? == &Value::String(digest(v.get("payload")?)))
        .then(|| v["payload"].clone())
}

fn cache_store(dir: &Path, key: &str, payload: &Value) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let entry = json!({ "version": VERSION, "payload": payload, "digest": digest(payload) });
    write_atomically(&cache_path(dir, key), entry.to_string().as_bytes())
}

/// Writes through a sibling temporary file so readers never see partial output.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

/// Whether the payload came from the cache.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
}

pub fn run(config: &RunConfig) -> Result<(ResultEnvelope, CacheStatus), Failure> {
    let start = Instant::now();
    let key = config.cache_key();
    let cached = config.cache_dir.as_deref().and_then(|d| cache_load(d, &key));
    let (payload, status) = match (cached, &config.cache_dir) {
        (Some(p), _) => (p, CacheStatus::Hit),
        (None, Some(dir)) => {
            let p = compute(config)?;
            if let Err(e) = cache_store(dir, &key, &p) {
                eprintln!("warning: cannot write cache entry in {}: {e}", dir.display());
            }
            (p, CacheStatus::Miss)
        }
        (None, None) => (compute(config)?, CacheStatus::Disabled),
    };
    let envelope = ResultEnvelope {
        subcommand: config.command.name(),
        config: config.echo(),
        digest: digest(&payload),
        payload,
        wall_time_ms: config.timing.then(|| start.elapsed().as_millis()),
    };
    Ok((envelope, status))
}
