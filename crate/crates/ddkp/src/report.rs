//! Human and JSON renderings of verification reports.
//!
//! The JSON form carries every oracle parameter, including the seed, so a
//! verdict can be reproduced from the document alone. Timing is left out of
//! it so identical runs produce identical bytes.

use std::fmt::Write;

use ddkp_core::oracle::{OracleVerdict, SampleSites, Witness, ZeroTestConfig};
use ddkp_core::symmetry::{Check, Outcome, SymbolicVerdict, VerificationReport};
use serde_json::{json, Value};

pub fn parameters_json(p: &ZeroTestConfig) -> Value {
    let sites = match &p.n_samples {
        SampleSites::Span => json!("span"),
        SampleSites::Explicit(v) => json!(v),
    };
    json!({
        "seed": p.seed,
        "trials": p.trials,
        "support_width": p.support_width,
        "xdeg_max": p.xdeg_max,
        "coefficient_range": p.coefficient_range,
        "n_samples": sites,
        "x_samples": p.x_samples.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

fn witness_json(w: &Witness) -> Value {
    let sites: serde_json::Map<String, Value> = w
        .state
        .sites()
        .iter()
        .map(|(n, p)| {
            let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            (n.to_string(), json!(coeffs))
        })
        .collect();
    json!({
        "trial": w.trial,
        "site": w.site,
        "x": w.x.to_string(),
        "value": w.value.to_string(),
        "state": { "base_point": w.state.base_point(), "sites": sites },
    })
}

pub fn verdict_name(v: &OracleVerdict) -> &'static str {
    match v {
        OracleVerdict::ExactZero => "exact-zero",
        OracleVerdict::ZeroModNConstant { .. } => "zero-mod-n-constant",
        OracleVerdict::Nonzero { .. } => "nonzero",
    }
}

pub fn verdict_json(v: &OracleVerdict) -> Value {
    match v.witness() {
        None => json!({ "verdict": verdict_name(v) }),
        Some(w) => json!({ "verdict": verdict_name(v), "witness": witness_json(w) }),
    }
}

pub fn check_json(c: &Check) -> Value {
    match &c.outcome {
        Outcome::Identity {
            symbolic,
            oracle,
            syntactic_only,
        } => {
            let symbolic = match symbolic {
                SymbolicVerdict::SyntacticZero => json!({ "kind": "syntactic-zero" }),
                SymbolicVerdict::NonzeroNormalForm { terms } => {
                    json!({ "kind": "nonzero-normal-form", "terms": terms })
                }
            };
            json!({
                "label": c.label,
                "passed": c.passed(),
                "kind": "identity",
                "symbolic": symbolic,
                "oracle": oracle.as_ref().map(verdict_json),
                "syntactic_only": syntactic_only,
            })
        }
        Outcome::Condition { holds, detail } => json!({
            "label": c.label,
            "passed": c.passed(),
            "kind": "condition",
            "holds": holds,
            "detail": detail,
        }),
    }
}

pub fn report_json(r: &VerificationReport) -> Value {
    json!({
        "label": r.label,
        "passed": r.passed(),
        "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
        "notes": r.notes,
        "parameters": parameters_json(&r.parameters),
    })
}

fn describe_witness(out: &mut String, w: &Witness) {
    writeln!(
        out,
        "      witness: trial {} site n={} x={} value={}",
        w.trial, w.site, w.x, w.value
    )
    .expect("string write");
    let sites: Vec<String> = w
        .state
        .sites()
        .iter()
        .map(|(n, p)| {
            let c: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            format!("{n}:[{}]", c.join(","))
        })
        .collect();
    writeln!(
        out,
        "      state: base point {}, sites {}",
        w.state.base_point(),
        sites.join(" ")
    )
    .expect("string write");
}

pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let status = if r.passed() { "VERIFIED" } else { "FAILED" };
    writeln!(out, "{}: {status}", r.label).expect("string write");
    for c in &r.checks {
        let mark = if c.passed() { "ok  " } else { "FAIL" };
        let detail = match &c.outcome {
            Outcome::Identity {
                symbolic: SymbolicVerdict::SyntacticZero,
                ..
            } => "syntactic zero".to_string(),
            Outcome::Identity {
                symbolic: SymbolicVerdict::NonzeroNormalForm { terms },
                oracle,
                syntactic_only,
            } => match oracle {
                _ if *syntactic_only => format!("{terms} residual terms (syntactic zero required)"),
                Some(v) => format!("{terms} residual terms, oracle {}", verdict_name(v)),
                None => format!("{terms} residual terms"),
            },
            Outcome::Condition { detail, .. } => detail.clone(),
        };
        writeln!(out, "  [{mark}] {}: {detail}", c.label).expect("string write");
        if let Some(w) = c.oracle().and_then(OracleVerdict::witness) {
            describe_witness(&mut out, w);
        }
    }
    for n in &r.notes {
        writeln!(out, "  note: {n}").expect("string write");
    }
    let p = &r.parameters;
    writeln!(
        out,
        "  oracle: seed={} trials={} width={} xdeg={} range={}",
        p.seed, p.trials, p.support_width, p.xdeg_max, p.coefficient_range
    )
    .expect("string write");
    if let Some(t) = r.elapsed {
        writeln!(out, "  elapsed: {:.3}s", t.as_secs_f64()).expect("string write");
    }
    out
}
