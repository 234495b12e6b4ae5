//! Plain-text tables, optionally shaded by regime.

use std::fmt::Write as _;

use num_bigint::BigInt;
use permclass_core::enumerator::CountTable;
use permclass_core::series;

const BLUE: &str = "\x1b[44m";
const RED: &str = "\x1b[41m";
const RESET: &str = "\x1b[0m";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shade {
    None,
    /// `k ≤ n − 2`: the column has stabilised.
    Constant,
    /// `n − 2 < k ≤ 2n − 7`: given by the closed form.
    Theorem,
}

pub fn shade(n: usize, k: usize) -> Shade {
    if series::in_constant_regime(n, k) {
        Shade::Constant
    } else if series::in_theorem_regime(n, k) {
        Shade::Theorem
    } else {
        Shade::None
    }
}

fn paint(cell: &str, width: usize, s: Shade, color: bool) -> String {
    let padded = format!("{cell:>width$}");
    match (color, s) {
        (true, Shade::Constant) => format!("{BLUE}{padded}{RESET}"),
        (true, Shade::Theorem) => format!("{RED}{padded}{RESET}"),
        _ => padded,
    }
}

/// Rows `n`, columns `k`. Shading only applies to 1324 tables.
pub fn table_text(table: &CountTable, color: bool) -> String {
    let cells: Vec<(usize, Vec<(usize, String)>)> = table
        .rows()
        .into_iter()
        .map(|n| (n, table.row_entries(n).into_iter().map(|(k, c)| (k, c.to_string())).collect()))
        .collect();
    grid(&cells, table.pattern().entries() == [1, 3, 2, 4] && color)
}

/// `av_n^k`, reading cells past `C(n, 2)` as zero.
pub fn cell(table: &CountTable, n: usize, k: usize) -> Option<BigInt> {
    match table.get(n, k) {
        Some(c) => Some(BigInt::from(c.clone())),
        None if k > n * n.saturating_sub(1) / 2 => Some(BigInt::from(0)),
        None => None,
    }
}

/// Column differences `av_{n+1}^k − av_n^k` wherever both cells are known.
pub fn differences(table: &CountTable) -> Vec<(usize, Vec<(usize, BigInt)>)> {
    table
        .rows()
        .into_iter()
        .filter_map(|n| {
            let row: Vec<(usize, BigInt)> = table
                .row_entries(n + 1)
                .into_iter()
                .filter_map(|(k, upper)| Some((k, BigInt::from(upper.clone()) - cell(table, n, k)?)))
                .collect();
            (!row.is_empty()).then_some((n, row))
        })
        .collect()
}

pub fn differences_text(diffs: &[(usize, Vec<(usize, BigInt)>)], color: bool) -> String {
    let cells: Vec<(usize, Vec<(usize, String)>)> = diffs
        .iter()
        .map(|(n, row)| (*n, row.iter().map(|(k, d)| (*k, d.to_string())).collect()))
        .collect();
    grid(&cells, color)
}

fn grid(cells: &[(usize, Vec<(usize, String)>)], color: bool) -> String {
    let max_k = cells.iter().flat_map(|(_, r)| r.iter().map(|(k, _)| *k)).max();
    let Some(max_k) = max_k else { return String::new() };
    let width = cells
        .iter()
        .flat_map(|(_, r)| r.iter().map(|(_, s)| s.len()))
        .chain([max_k.to_string().len()])
        .max()
        .unwrap_or(1);
    let label = cells.iter().map(|(n, _)| n.to_string().len()).max().unwrap_or(1).max(3);
    let mut out = String::new();
    let _ = write!(out, "{:>label$}", "n\\k");
    for k in 0..=max_k {
        let _ = write!(out, " {k:>width$}");
    }
    out.push('\n');
    for (n, row) in cells {
        let _ = write!(out, "{n:>label$}");
        let mut next = 0;
        for (k, s) in row {
            for _ in next..*k {
                let _ = write!(out, " {:>width$}", "");
            }
            out.push(' ');
            out.push_str(&paint(s, width, shade(*n, *k), color));
            next = k + 1;
        }
        out.push('\n');
    }
    out
}
