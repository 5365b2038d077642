//! Intersection random graphs `G(n, r, p) = G(n, r) ∩ G(n, p)` on the unit torus.
//!
//! The crate samples instances, computes their structural properties with
//! exact solvers and cell-based constructions, and runs Monte Carlo sweeps
//! around the connectivity, Hamiltonicity, clique, independence, chromatic
//! and diameter thresholds of the model.
//!
//! Every constructive result (clique, independent set, colouring, Hamilton
//! cycle) comes with a witness that is checked by an independent verifier
//! before it is returned.
//!
//! Parallel loops go through [`par`]; building without the default
//! `parallel` feature swaps rayon for plain sequential iteration with
//! identical results.

pub mod error;
pub mod experiments;
pub mod generator;
pub mod geometry;
pub mod graph;
pub mod hamilton;
pub mod io;
pub mod oracle;
pub mod par;
pub mod rng;
pub mod solvers;

pub use error::{Error, Result};
pub use generator::{generate, Channel, GnrpInstance, ModelParams};
pub use geometry::{build_grid, torus_distance, CellGrid, GridMode, TorusPoint};
pub use graph::Graph;
