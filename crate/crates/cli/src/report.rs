use std::collections::BTreeMap;
use std::path::Path;

use operadlab::identities::Certificate;
use operadlab::models::{SpanElement, Verdict};
use operadlab::operad::PowerSeries;
use operadlab::{format_rational, Rational};
use serde::Serialize;
use serde_json::{json, Value};

/// Machine-readable result of one invocation. `serde_json` keeps object keys
/// sorted, so serialization is deterministic.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub duration_ms: u64,
}

impl Report {
    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        std::fs::write(path, text)
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn series(s: &PowerSeries) -> Value {
    json!({
        "coefficients": s.coeffs().iter().map(rational).collect::<Vec<_>>(),
        "text": s.to_string(),
    })
}

pub fn element(e: &SpanElement) -> Value {
    let map: BTreeMap<String, Value> = e.terms().iter().map(|(i, c)| (i.to_string(), rational(c))).collect();
    json!(map)
}

pub fn verdict(v: &Verdict) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "axiom": w.axiom,
            "indices": w.indices,
            "lhs": element(&w.lhs),
            "rhs": element(&w.rhs),
        })
    });
    json!({ "passed": v.passed, "witness": witness, "text": v.to_string() })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "target": c.target.name(),
        "target_perm": c.target_perm,
        "terms": c.combination.iter().map(|t| json!({
            "coeff": rational(&t.coeff),
            "generator": t.generator.name(),
            "perm": t.perm,
        })).collect::<Vec<_>>(),
        "text": c.to_string(),
    })
}
