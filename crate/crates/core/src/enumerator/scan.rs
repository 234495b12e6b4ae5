use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::table::CountTable;
use crate::series;

/// Number of permutations of length `n` with exactly `k` inversions.
pub fn mahonian(n: usize, k: usize) -> BigUint {
    mahonian_row(n).get(k).cloned().unwrap_or_default()
}

/// `M(n, k)` for `k = 0..=C(n,2)`, as the coefficients of `∏ (1 + q + … + q^{i−1})`.
pub fn mahonian_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::from(1u32)];
    for i in 2..=n {
        let mut next = vec![BigUint::zero(); row.len() + i - 1];
        // Sliding window of width i over the previous row.
        let mut window = BigUint::zero();
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                window += &row[k];
            }
            if k >= i {
                window -= &row[k - i];
            }
            *slot = window.clone();
        }
        row = next;
    }
    row
}

/// One cell where the table disagrees with an expectation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMismatch {
    pub n: usize,
    pub k: usize,
    pub found: BigInt,
    pub expected: BigInt,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonotonicityReport {
    /// `(n, k)` with `av_{n+1}^k < av_n^k`.
    pub decreases: Vec<(usize, usize)>,
    /// In-regime cells where `av_{n+1}^k − av_n^k ≠ [x^k]R_n`.
    pub closed_mismatches: Vec<CellMismatch>,
    /// Number of consecutive-row pairs compared.
    pub compared: usize,
    /// Of those, how many were inside the closed-form regime.
    pub compared_in_regime: usize,
}

impl MonotonicityReport {
    pub fn is_clean(&self) -> bool {
        self.decreases.is_empty() && self.closed_mismatches.is_empty()
    }
}

/// Compares every stored `av_n^k` with `av_{n+1}^k`. The closed-form check
/// only applies to 1324 tables.
pub fn check_monotonicity(table: &CountTable) -> MonotonicityReport {
    let mut report = MonotonicityReport::default();
    let is_1324 = table.pattern().entries() == [1, 3, 2, 4];
    for (n, k, lower) in table.iter() {
        let Some(upper) = table.get(n + 1, k) else { continue };
        report.compared += 1;
        if upper < lower {
            report.decreases.push((n, k));
        }
        if is_1324 && series::closed_form_valid(n, k) {
            report.compared_in_regime += 1;
            let found = BigInt::from(upper.clone()) - BigInt::from(lower.clone());
            let expected = series::diff_closed(n, k).value;
            if found != expected {
                report.closed_mismatches.push(CellMismatch { n, k, found, expected });
            }
        }
    }
    report
}

/// Table cells a scan needed but did not find.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingEntries(pub Vec<(usize, usize)>);

impl fmt::Display for MissingEntries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("missing table entries:")?;
        for (n, k) in &self.0 {
            write!(f, " ({n},{k})")?;
        }
        Ok(())
    }
}

impl core::error::Error for MissingEntries {}

/// `b_{r,n}` together with the table cells it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceReport {
    pub r: usize,
    pub n: usize,
    pub b_value: BigInt,
    /// `((n', k), av_{n'}^k)` in the order they enter the alternating sum.
    pub components: Vec<((usize, usize), BigUint)>,
}

impl DifferenceReport {
    /// Recomputes `b` from [`Self::components`].
    pub fn recompute(&self) -> BigInt {
        let c: Vec<BigInt> = self.components.iter().map(|(_, v)| BigInt::from(v.clone())).collect();
        (&c[0] - &c[1]) - (&c[2] - &c[3]) - ((&c[4] - &c[5]) - (&c[6] - &c[7]))
    }
}

fn cells(table: &CountTable, wanted: &[(usize, usize)]) -> Result<Vec<((usize, usize), BigUint)>, MissingEntries> {
    let missing: Vec<_> = wanted.iter().copied().filter(|&(n, k)| table.get(n, k).is_none()).collect();
    if !missing.is_empty() {
        return Err(MissingEntries(missing));
    }
    Ok(wanted.iter().map(|&(n, k)| ((n, k), table.get(n, k).unwrap().clone())).collect())
}

fn checked_k(base: usize, minus: usize, n: usize) -> Result<usize, MissingEntries> {
    base.checked_sub(minus).ok_or_else(|| MissingEntries(vec![(n, 0)]))
}

/// The repeated column difference `b_{r,n}`: with `K = 2n + r`,
/// `(av_{n+3}^{K−3} − av_{n+2}^{K−3}) − (av_{n+2}^{K−4} − av_{n+1}^{K−4})
///  − ((av_{n+2}^{K−5} − av_{n+1}^{K−5}) − (av_{n+1}^{K−6} − av_n^{K−6}))`.
pub fn third_difference(table: &CountTable, r: usize, n: usize) -> Result<DifferenceReport, MissingEntries> {
    let big = 2 * n + r;
    let k = |m: usize| checked_k(big, m, n);
    let wanted = [
        (n + 3, k(3)?),
        (n + 2, k(3)?),
        (n + 2, k(4)?),
        (n + 1, k(4)?),
        (n + 2, k(5)?),
        (n + 1, k(5)?),
        (n + 1, k(6)?),
        (n, k(6)?),
    ];
    let components = cells(table, &wanted)?;
    let mut report = DifferenceReport { r, n, b_value: BigInt::zero(), components };
    report.b_value = report.recompute();
    Ok(report)
}

/// `(av_{n+2}^{K−5} − av_{n+1}^{K−5}) − (av_{n+1}^{K−6} − av_n^{K−6})` at
/// `n = 10 + r`, `K = 2n + r`.
pub fn second_difference_start(table: &CountTable, r: usize) -> Result<BigInt, MissingEntries> {
    let n = 10 + r;
    let big = 2 * n + r;
    let wanted = [(n + 2, big - 5), (n + 1, big - 5), (n + 1, big - 6), (n, big - 6)];
    let c: Vec<BigInt> = cells(table, &wanted)?.into_iter().map(|(_, v)| BigInt::from(v)).collect();
    Ok((&c[0] - &c[1]) - (&c[2] - &c[3]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub unimodal: bool,
    pub log_concave: bool,
    /// Log-concavity of the row with its first `n − 1` entries removed.
    pub tail_log_concave: bool,
    /// Every `k` attaining the row maximum.
    pub argmax_positions: Vec<usize>,
    /// First interior `k` with `a_k² < a_{k−1} a_{k+1}`, if any.
    pub first_log_concavity_failure: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncompleteRow {
    pub n: usize,
    pub expected: usize,
    pub found: usize,
}

impl fmt::Display for IncompleteRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {} has {} entries, expected {}", self.n, self.found, self.expected)
    }
}

impl core::error::Error for IncompleteRow {}

fn is_unimodal(row: &[BigUint]) -> bool {
    let mut falling = false;
    for w in row.windows(2) {
        if w[1] > w[0] {
            if falling {
                return false;
            }
        } else if w[1] < w[0] {
            falling = true;
        }
    }
    true
}

fn log_concavity_failure(row: &[BigUint]) -> Option<usize> {
    row.windows(3).position(|w| &w[1] * &w[1] < &w[0] * &w[2]).map(|i| i + 1)
}

/// Unimodality, log-concavity and peak positions of a full row
/// `a_0..a_{C(n,2)}`.
pub fn shape_checks(row: &[BigUint], n: usize) -> Result<ShapeReport, IncompleteRow> {
    let expected = n * n.saturating_sub(1) / 2 + 1;
    if row.len() != expected {
        return Err(IncompleteRow { n, expected, found: row.len() });
    }
    let first_failure = log_concavity_failure(row);
    let tail = &row[n.saturating_sub(1).min(row.len())..];
    let max = row.iter().max().cloned().unwrap_or_default();
    Ok(ShapeReport {
        unimodal: is_unimodal(row),
        log_concave: first_failure.is_none(),
        tail_log_concave: log_concavity_failure(tail).is_none(),
        argmax_positions: row.iter().enumerate().filter(|(_, v)| **v == max).map(|(k, _)| k).collect(),
        first_log_concavity_failure: first_failure,
    })
}

/// Cells where `av_n^k` exceeds `M(n, k)`.
pub fn mahonian_violations(table: &CountTable) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut cached: Option<(usize, Vec<BigUint>)> = None;
    for (n, k, count) in table.iter() {
        if cached.as_ref().map(|(m, _)| *m) != Some(n) {
            cached = Some((n, mahonian_row(n)));
        }
        let row = &cached.as_ref().unwrap().1;
        if row.get(k).is_none_or(|m| count > m) {
            out.push((n, k));
        }
    }
    out
}
