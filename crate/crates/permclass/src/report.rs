//! JSON forms of the audit and remainder reports.

use permclass_core::injection::RemainderSet;
use permclass_core::verify::{Audit, DifferenceRow, RemovepointReport};
use permclass_core::Permutation;
use serde_json::{json, Value};

fn perms(list: &[Permutation]) -> Vec<String> {
    list.iter().map(Permutation::to_string).collect()
}

pub fn removepoint_json(r: &RemovepointReport) -> Value {
    json!({
        "n": r.n,
        "k_max": r.k_max,
        "violations": perms(&r.violations),
        "boundary_neither": perms(&r.boundary_neither),
    })
}

pub fn audit_json(audit: &Audit) -> Value {
    let checks: Vec<Value> = audit
        .checks
        .iter()
        .map(|(name, t)| {
            json!({
                "name": name,
                "checked": t.checked,
                "violations": t.violation_count,
                "offenders": perms(&t.violations),
            })
        })
        .collect();
    let examples: serde_json::Map<String, Value> = audit
        .examples
        .iter()
        .map(|(name, p)| (name.to_string(), Value::String(p.to_string())))
        .collect();
    json!({ "checks": checks, "examples": examples })
}

pub fn difference_row_json(row: &DifferenceRow) -> Value {
    let (a, b, c, d) = row.classes;
    let (pa, pb, pc, pd) = row.predicted_classes;
    json!({
        "n": row.n,
        "k": row.k,
        "remainder": row.remainder,
        "predicted": row.predicted,
        "classes": { "a": a, "b": b, "c": c, "d": d },
        "predicted_classes": { "a": pa, "b": pb, "c": pc, "d": pd },
        "images_injective": row.images_injective,
        "census_ok": row.census_ok,
        "class_d_built": row.class_d_built,
        "class_d_match": row.class_d_match,
        "ok": row.is_clean(),
    })
}

/// `{"n", "k", "classes": {"a", "b", "d"}}`; `"c"` appears only if nonempty.
pub fn remainder_json(set: &RemainderSet) -> Value {
    let split = set.classify();
    let mut classes = serde_json::Map::new();
    classes.insert("a".into(), json!(perms(&split.a)));
    classes.insert("b".into(), json!(perms(&split.b)));
    if !split.c.is_empty() {
        classes.insert("c".into(), json!(perms(&split.c)));
    }
    classes.insert("d".into(), json!(perms(&split.d)));
    json!({ "n": set.n, "k": set.k, "in_regime": set.in_regime, "classes": classes })
}
