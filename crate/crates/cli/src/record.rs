//! Run records: one self-describing JSON object per parameter tuple.
//!
//! Objects are built as `serde_json::Value`, whose maps are ordered by key,
//! so serialization is deterministic apart from the `timings_ms` field.

use std::time::Instant;

use serde_json::{json, Value};
use tensq_core::abgrp::AbelianStructure;
use tensq_core::fpgrp::{certify_nu_order, Enumeration};
use tensq_core::metagrp::derived_invariants;
use tensq_core::oracle::{build_tensor_oracle_with, exterior_oracle, schur_order_oracle, OracleOptions};
use tensq_core::presentations::{exterior_and_schur, TensorDescriptor};
use tensq_core::{GroupParams, Result};

pub const SCHEMA_VERSION: u64 = 1;
pub const TOOL_VERSION: &str = concat!("tensq ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComputeOptions {
    pub oracle: bool,
    pub certify: bool,
    pub max_cosets: usize,
    pub oracle_bound: u64,
}

impl ComputeOptions {
    /// The option fields that affect the record, for cache keys.
    pub fn key(&self) -> Value {
        json!({
            "certify": self.certify,
            "max_cosets": self.max_cosets,
            "oracle": self.oracle,
            "oracle_bound": self.oracle_bound,
        })
    }
}

pub fn factors(a: &AbelianStructure) -> Value {
    json!(a.invariant_factors())
}

pub fn params_json(p: &GroupParams) -> Value {
    let (m, n, r, s) = p.tuple();
    json!({ "m": m, "n": n, "r": r, "s": s })
}

fn ms(since: Instant) -> f64 {
    (since.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

pub fn compute_record(p: &GroupParams, opts: &ComputeOptions) -> Result<Value> {
    let t0 = Instant::now();
    let report = exterior_and_schur(p)?;
    let d = derived_invariants(p);
    let desc = TensorDescriptor::new(p);
    let closed_ms = ms(t0);

    let mut timings = json!({ "closed_form": closed_ms });
    let oracle = if opts.oracle {
        let t = Instant::now();
        let model = build_tensor_oracle_with(
            p,
            &OracleOptions {
                max_group_order: Some(opts.oracle_bound),
                relabel: None,
            },
        )?;
        let exterior = exterior_oracle(&model);
        let schur = schur_order_oracle(&model)?;
        let tensor = model.structure();
        let delta = tensor.order().unwrap() / exterior.order().unwrap();
        let matches = *tensor == report.tensor
            && exterior == report.exterior
            && Some(schur) == report.schur.order()
            && delta == report.delta_order;
        timings["oracle"] = json!(ms(t));
        json!({
            "delta_order": delta,
            "exterior": factors(&exterior),
            "match": matches,
            "relation_rows": model.relations().len(),
            "schur_order": schur,
            "tensor": factors(tensor),
        })
    } else {
        Value::Null
    };

    let nu = if opts.certify {
        let t = Instant::now();
        let cert = certify_nu_order(p, opts.max_cosets);
        timings["nu"] = json!(ms(t));
        let order = match cert.enumeration {
            Enumeration::Closed { order, .. } => json!(order),
            Enumeration::Overflow { .. } => Value::Null,
        };
        json!({
            "cosets_used": cert.enumeration.cosets_used(),
            "max_cosets": opts.max_cosets,
            "order": order,
            "predicted": cert.predicted,
            "verdict": cert.verdict.to_string(),
        })
    } else {
        Value::Null
    };

    Ok(json!({
        "closed_form": {
            "delta_order": report.delta_order,
            "descriptor": {
                "e_rn": desc.e_rn,
                "e_u": desc.e_u,
                "e_v": desc.e_v,
                "e_w": desc.e_w,
                "e_z": desc.e_z,
                "n": desc.n,
                "s": desc.s,
            },
            "exterior": factors(&report.exterior),
            "nu_order_predicted": report.nu_order_predicted,
            "schur": factors(&report.schur),
            "tensor": factors(&report.tensor),
        },
        "invariants": {
            "center_order": d.center_order,
            "k": d.k,
            "l": d.l,
            "o_a": d.o_a,
            "o_b": d.o_b,
            "oprime_a": d.oprime_a,
            "oprime_b": d.oprime_b,
            "order": d.order_g,
            "t_derived": d.t_derived,
        },
        "nu_certification": nu,
        "oracle": oracle,
        "params": params_json(p),
        "schema_version": SCHEMA_VERSION,
        "timings_ms": timings,
        "tool_version": TOOL_VERSION,
    }))
}

/// Record for a tuple whose computation failed; batch keeps going.
pub fn error_record(params: Value, err: &tensq_core::Error) -> Value {
    json!({
        "error": { "kind": error_kind(err), "message": err.to_string() },
        "params": params,
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
    })
}

pub fn error_kind(err: &tensq_core::Error) -> &'static str {
    use tensq_core::Error::*;
    match err {
        Validation(_) => "validation",
        OutOfScope(_) => "out_of_scope",
        Usage(_) => "usage",
        Domain(_) => "domain",
        Resource(_) => "resource",
        FormulaInconsistency(_) => "formula_inconsistency",
        Overflow(_) => "overflow",
        Syntax { .. } => "syntax",
    }
}

/// True when an oracle was run and disagreed, or a certification failed.
pub fn is_mismatch(record: &Value) -> bool {
    record["oracle"]["match"] == json!(false) || record["nu_certification"]["verdict"] == json!("FAIL")
}
