//! Exact synthesis of minimal tile sets that self-assemble a coloured
//! rectangular pattern in the abstract Tile Assembly Model at temperature 2.
//!
//! The pieces:
//!
//! * [`pattern`] holds coloured grids and their generators;
//! * [`partition`] and [`mgta`] describe candidate tile sets as partitions of
//!   the grid and assign them the most general glues;
//! * [`sim`] grows assemblies and verifies tile sets;
//! * [`search`] is the branch-and-bound solver;
//! * [`oracle`] brute-forces tiny instances for testing.

pub mod cli;
pub mod mgta;
pub mod oracle;
pub mod partition;
pub mod pattern;
pub mod rng;
pub mod search;
pub mod sim;
pub mod tiles;
pub mod union_find;
