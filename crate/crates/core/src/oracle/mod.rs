//! Reference implementations for cross-checking the fast paths.
//!
//! Everything here is intentionally slow and obvious: power-set enumeration,
//! a cell-grid tiler with no heuristics, and a seeded random generator of
//! guillotine dissections used as known-solvable instances. Nothing in this
//! module depends on the filter or solver internals.

mod guillotine;
mod naive;
mod subset;

pub use guillotine::{random_guillotine, GenerationFailed, GuillotineInstance};
pub use naive::{naive_tiler, OracleOutcome};
pub use subset::subset_sum_all;
