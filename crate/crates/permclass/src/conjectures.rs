//! Empirical scans over a count table, reported next to previously
//! tabulated values. Nothing here asserts an unproven statement; the
//! reports only say what agrees and what is missing.

use num_bigint::BigInt;
use permclass_core::enumerator::{
    check_monotonicity, mahonian_violations, second_difference_start, shape_checks,
    third_difference, CountTable, MonotonicityReport, ShapeReport,
};
use permclass_core::series;
use serde_json::{json, Value};

/// Tabulated `b_r` for `r = 0..=9` (the limit of `b_{r,n}` for `n ≥ 10 + r`).
pub const REFERENCE_B: [u64; 10] = [4, 8, 14, 28, 52, 88, 150, 244, 390, 612];

/// Tabulated starting values of the second difference at `n = 10 + r`.
pub const REFERENCE_SECOND_START: [u64; 8] = [12, 24, 41, 120, 274, 553, 1098, 2055];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BRow {
    pub r: usize,
    /// `(n, b_{r,n})` for every `n` the table supports.
    pub empirical: Vec<(usize, BigInt)>,
    pub reference: Option<u64>,
    /// `[x^r]` of the conjectured generating function, expanded literally.
    pub formula: BigInt,
    pub second_start: Option<BigInt>,
    pub second_reference: Option<u64>,
}

impl BRow {
    /// Empirical values from `n = 10 + r` on.
    pub fn stable_values(&self) -> impl Iterator<Item = &(usize, BigInt)> {
        self.empirical.iter().filter(move |(n, _)| *n >= 10 + self.r)
    }

    /// `Some(true)` if every stable value equals the reference, `None` if
    /// there is nothing to compare.
    pub fn matches_reference(&self) -> Option<bool> {
        let reference = BigInt::from(self.reference?);
        let mut values = self.stable_values().peekable();
        values.peek()?;
        Some(values.all(|(_, b)| *b == reference))
    }
}

pub fn b_series(table: &CountTable, max_r: usize) -> Vec<BRow> {
    let max_n = table.rows().last().copied().unwrap_or(0);
    let formula = series::b_formula_series(max_r);
    (0..=max_r)
        .map(|r| {
            let empirical = (0..=max_n.saturating_sub(3))
                .filter_map(|n| third_difference(table, r, n).ok().map(|d| (n, d.b_value)))
                .collect();
            BRow {
                r,
                empirical,
                reference: REFERENCE_B.get(r).copied(),
                formula: formula.coeffs()[r].clone(),
                second_start: second_difference_start(table, r).ok(),
                second_reference: REFERENCE_SECOND_START.get(r).copied(),
            }
        })
        .collect()
}

fn opt_str<T: ToString>(v: &Option<T>) -> Value {
    v.as_ref().map_or(Value::Null, |x| Value::String(x.to_string()))
}

pub fn b_series_json(rows: &[BRow]) -> Value {
    let rows_json: Vec<Value> = rows
        .iter()
        .map(|row| {
            let empirical: Vec<Value> = row
                .empirical
                .iter()
                .map(|(n, b)| json!({ "n": n, "b": b.to_string() }))
                .collect();
            json!({
                "r": row.r,
                "empirical": empirical,
                "reference": row.reference,
                "formula": row.formula.to_string(),
                "matches_reference": row.matches_reference(),
                "second_difference_start": opt_str(&row.second_start),
                "second_difference_reference": row.second_reference,
            })
        })
        .collect();
    let compared: Vec<bool> = rows.iter().filter_map(BRow::matches_reference).collect();
    let verdict = if compared.is_empty() {
        "insufficient data"
    } else if compared.iter().all(|&m| m) {
        "computed values agree with the reference where available"
    } else {
        "computed values differ from the reference"
    };
    json!({ "which": "b-series", "verdict": verdict, "rows": rows_json })
}

pub struct ShapeRow {
    pub n: usize,
    pub report: ShapeReport,
}

/// Shape checks for every complete row of the table.
pub fn shapes(table: &CountTable) -> Vec<ShapeRow> {
    table
        .rows()
        .into_iter()
        .filter_map(|n| {
            let row = table.full_row(n)?;
            Some(ShapeRow { n, report: shape_checks(&row, n).ok()? })
        })
        .collect()
}

pub fn shapes_json(rows: &[ShapeRow]) -> Value {
    let list: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "unimodal": r.report.unimodal,
                "log_concave": r.report.log_concave,
                "tail_log_concave": r.report.tail_log_concave,
                "argmax": r.report.argmax_positions,
                "first_log_concavity_failure": r.report.first_log_concavity_failure,
            })
        })
        .collect();
    let verdict = if rows.is_empty() {
        "insufficient data"
    } else if rows.iter().all(|r| r.report.unimodal) {
        "all complete rows unimodal"
    } else {
        "some complete row is not unimodal"
    };
    json!({ "which": "unimodal", "verdict": verdict, "rows": list })
}

pub fn monotone_json(report: &MonotonicityReport) -> Value {
    let mismatches: Vec<Value> = report
        .closed_mismatches
        .iter()
        .map(|m| json!({ "n": m.n, "k": m.k, "found": m.found.to_string(), "expected": m.expected.to_string() }))
        .collect();
    let decreases: Vec<Value> = report.decreases.iter().map(|(n, k)| json!({ "n": n, "k": k })).collect();
    let verdict = if report.compared == 0 {
        "insufficient data"
    } else if report.decreases.is_empty() {
        "no decreasing column"
    } else {
        "some column decreases"
    };
    json!({
        "which": "monotone",
        "verdict": verdict,
        "compared": report.compared,
        "compared_in_regime": report.compared_in_regime,
        "decreases": decreases,
        "closed_form_mismatches": mismatches,
    })
}

pub fn monotone(table: &CountTable) -> MonotonicityReport {
    check_monotonicity(table)
}

/// Cells exceeding the Mahonian numbers; a nonempty result means the table
/// is corrupt.
pub fn sanity(table: &CountTable) -> Vec<(usize, usize)> {
    mahonian_violations(table)
}
