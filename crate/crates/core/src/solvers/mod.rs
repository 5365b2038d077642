//! Clique, independence and chromatic number: exact branch-and-bound
//! solvers plus the cell-based constructions that bound each quantity on a
//! `G(n, r, p)` instance.
//!
//! Budgets count search-node expansions, never wall-clock time. Every
//! witness is checked by the functions in [`verify`] before it is returned.

mod bitset;
pub mod clique;
pub mod coloring;
pub mod independence;
pub mod verify;

pub use clique::{clique_block_scan, clique_lower_dense_cell, max_clique_exact, CliqueMethod, CliqueResult};
pub use coloring::{
    chromatic_exact, chromatic_sandwich, dsatur, palette_coloring, ChromaticBounds, ColoringKind, ColoringResult,
};
pub use independence::{
    alpha_lower_cells, alpha_upper_cellsum, greedy_independent_set, mis_exact, BudgetPolicy, IndependenceKind,
    IndependenceResult,
};

/// Default node-expansion budget for a single exact search.
pub const DEFAULT_BUDGET: u64 = 2_000_000;
