//! Nonrepetitive list colorings of trees of bounded pathwidth.
//!
//! The crate builds every constructive step needed to go from a tree and an
//! arbitrary list assignment to a verified nonrepetitive coloring:
//!
//! - [`graph`]: trees, paths and plane arborescences.
//! - [`decomposition`]: path decompositions, exact tree pathwidth and
//!   bounded-height path-partitions with their faithful-embedding vocabulary
//!   (levels, bases, ascending paths).
//! - [`repetition`]: repetitions, near repetitions, bad-path predicates and
//!   brute-force oracles.
//! - [`subsets`]: lexicographic ranking of fixed-size subsets.
//! - [`solver`]: the randomized sublist-thinning algorithm on plane
//!   arborescences and its per-level application to path-partitions.
//! - [`logs`]: the compact execution log of a solver run, its counting audits
//!   and the decoder that recovers the random input from a log.
//! - [`greedy`]: guard-avoiding greedy coloring and the end-to-end pipeline.
//! - [`pw2`]: the pathwidth-2 family whose Thue choice number is unbounded.
//! - [`game`]: the random append-and-erase process for square-free words.

pub mod decomposition;
pub mod error;
pub mod game;
pub mod gen;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod logs;
pub mod pw2;
pub mod repetition;
pub mod solver;
pub mod subsets;

pub use error::{Error, Result};

/// A color. Lists and colorings use positive integers.
pub type Color = u32;

/// Vertex identifier, dense in `0..n`.
pub type Vertex = usize;
