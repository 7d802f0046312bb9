//! Building sets, nested and extended nested complexes, and their face numbers.
//!
//! The library implements, at desk scale, the combinatorics of building sets
//! and their (extended) nested complexes: construction and validation,
//! polytopal realizations via stellar subdivision, f/h/γ-vector formulas with
//! brute-force enumeration oracles, the forest/partial-permutation bijections
//! with descent statistics, constructive isomorphisms between the complexes,
//! and the partial weak Bruhat order with shelling verification.
//!
//! Everything is exact integer arithmetic; ground sets are `1..=n` with `n`
//! capped (default 16) so the exponential enumerations fail explicitly
//! rather than silently.

pub mod building;
pub mod complex;
pub mod counting;
pub mod geom;
pub mod iso;
pub mod orders;
pub mod perms;
pub mod poly;
pub mod verify;

pub use building::{BuildingSet, DirectedGraph, Subset};
pub use complex::SimplicialComplex;
pub use poly::IntPolynomial;

/// Default cap on ground-set size. Overridable per call site and via the
/// CLI `NESTO_MAX_N` environment variable.
pub const DEFAULT_MAX_N: usize = 16;
