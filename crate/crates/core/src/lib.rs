//! Certificate-carrying proof that the promise-based pseudo-telepathy
//! game with 4-bit answers has no classical winning strategy, together with an
//! exact harness for the game itself.
//!
//! Winning classically is equivalent to colouring `G_16` (16-bit words, joined
//! at Hamming distance 8) with 16 colours. The [`bounds`] and [`pipeline`]
//! modules bound its independence number by certificate, the [`game`] module
//! evaluates classical strategies, and [`quantum`] simulates the entangled
//! strategy with exact integer amplitudes.

pub mod bounds;
pub mod coloring;
pub mod error;
pub mod game;
pub mod graph;
pub mod hamming;
pub mod pipeline;
pub mod quantum;
pub mod symmetry;
pub mod tables;

pub use error::{Error, Result};
pub use graph::{build_level_graph, survivor_subgraph, BitGraph, BitSet, LevelGraph};
pub use hamming::{complement, distance, enumerate_level, GameSize, Word};
pub use pipeline::{
    check_certificate, chi_lower, run_pipeline, validate_reduction, Certificate, CheckReport,
};
