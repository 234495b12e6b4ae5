//! IO, threads and the command line for `permclass-core`.
//!
//! - [`parallel`]: a rayon-backed [`Driver`](permclass_core::Driver).
//! - [`cache`]: the CSV table format and JSON export.
//! - [`cli`]: the `permclass` command.

pub mod cache;
pub mod cli;
pub mod conjectures;
pub mod parallel;
pub mod render;
pub mod report;

pub use parallel::Parallel;
