//! Ground-truth enumeration of `Av_n^k(τ)`, count tables, and scans over them.

mod scan;
mod search;
mod table;

pub use scan::{
    check_monotonicity, mahonian, mahonian_row, mahonian_violations, second_difference_start,
    shape_checks, third_difference, CellMismatch, DifferenceReport, IncompleteRow, MissingEntries,
    MonotonicityReport, ShapeReport,
};
pub use search::{
    all_permutations, enumerate_avoiders, next_permutation, AvoiderSearch, BruteSearch, Collect,
    Driver, InversionCounts, PrefixShard, Search, Sequential, Tally, MAX_SEARCH_LEN,
};
pub use table::{build_table, closed_k_max, count_by_inversions, Budget, CountTable, EnumError, Engine};
