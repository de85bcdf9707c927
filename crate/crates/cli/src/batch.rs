use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use tensq_core::metagrp::enumerate_tuples;
use tensq_core::validate;

use crate::cache::Cache;
use crate::record::{compute_record, error_record, is_mismatch, ComputeOptions, TOOL_VERSION};
use crate::CliError;

/// Batch manifest (TOML). Every key is optional.
///
/// ```toml
/// max_order = 45
/// include_s0 = false
/// oracle = true
/// certify = false
/// tuples = [[3, 2, 2, 0], [9, 3, 4, 3]]
/// ```
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub max_order: Option<u64>,
    #[serde(default)]
    pub include_s0: bool,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub certify: bool,
    #[serde(default)]
    pub tuples: Vec<[i64; 4]>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))
    }
}

pub struct Summary {
    pub rows: usize,
    pub mismatches: usize,
    pub errors: usize,
    pub cache_hits: usize,
}

/// Explicit tuples first in manifest order, then the enumerated range;
/// repeats are dropped.
fn tuples(manifest: &Manifest) -> Vec<[i64; 4]> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let ranged = manifest
        .max_order
        .map(|mo| enumerate_tuples(mo, manifest.include_s0))
        .unwrap_or_default()
        .into_iter()
        .map(|p| {
            let (m, n, r, s) = p.tuple();
            [m as i64, n as i64, r as i64, s as i64]
        });
    for t in manifest.tuples.iter().copied().chain(ranged) {
        if seen.insert(t) {
            out.push(t);
        }
    }
    out
}

fn run_one(t: [i64; 4], opts: &ComputeOptions, cache: Option<&Cache>) -> (String, bool) {
    let [m, n, r, s] = t;
    let params = json!({ "m": m, "n": n, "r": r, "s": s });
    let key = Cache::key(&json!({ "options": opts.key(), "params": params, "tool": TOOL_VERSION }));
    if let Some(line) = cache.and_then(|c| c.get(&key)) {
        return (line, true);
    }
    let record = validate(m, n, r, s).and_then(|p| compute_record(&p, opts));
    match record {
        Ok(rec) => {
            let line = rec.to_string();
            if let Some(c) = cache {
                // a failed cache write only costs a recomputation later
                let _ = c.put(&key, &line);
            }
            (line, false)
        }
        Err(e) => (error_record(params, &e).to_string(), false),
    }
}

/// Runs every tuple in parallel and writes JSON lines in input order.
pub fn run(
    manifest: &Manifest,
    opts: &ComputeOptions,
    cache: Option<&Cache>,
    out: &mut dyn std::io::Write,
) -> Result<Summary, CliError> {
    let list = tuples(manifest);
    let results: Vec<(String, bool)> = list.par_iter().map(|&t| run_one(t, opts, cache)).collect();
    let mut summary = Summary {
        rows: results.len(),
        mismatches: 0,
        errors: 0,
        cache_hits: 0,
    };
    for (line, hit) in &results {
        let v: Value = serde_json::from_str(line).expect("records are valid JSON");
        summary.errors += usize::from(v.get("error").is_some());
        summary.mismatches += usize::from(is_mismatch(&v));
        summary.cache_hits += usize::from(*hit);
        writeln!(out, "{line}").map_err(|e| CliError::io(Path::new("<output>"), e))?;
    }
    Ok(summary)
}
