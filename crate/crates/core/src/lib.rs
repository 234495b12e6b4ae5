//! Exact enumeration and structure of 1324-avoiding permutations with few
//! inversions.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; exhaustive searches are split into shards and
//! handed to a [`Driver`](enumerator::Driver), so a caller with threads can
//! run them in parallel without the results depending on scheduling.
//!
//! - [`perm`]: permutations, inversions, containment, direct sums.
//! - [`structure`]: decomposability, almost-decomposability, plot regions.
//! - [`injection`]: the maps `g`, `f`, `h` and the remainder sets.
//! - [`series`]: exact truncated power series and the closed forms.
//! - [`enumerator`]: brute and pruned enumeration, count tables, scans.
//! - [`verify`]: exhaustive structural audits built from the above.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod enumerator;
pub mod injection;
pub mod perm;
pub mod series;
pub mod structure;
pub mod verify;

pub use enumerator::{CountTable, Driver, Engine, Sequential};
pub use perm::{direct_sum, InversionTable, PermError, Permutation};
pub use series::TruncatedSeries;
pub use structure::{BoundaryDeletion, StructureClass};
