//! Proper (a:b)-fractional colorings of n-uniform hypergraphs.
//!
//! The crate bundles randomized solvers, exhaustive and LP-based exact
//! checks, a random construction of non-colorable hypergraphs, and
//! calculators for the associated edge-count bounds.

pub mod alon;
pub mod bounds;
pub mod coloring;
pub mod combinatorics;
pub mod construction;
pub mod error;
pub mod exact;
pub mod hypergraph;
pub mod lp;
pub mod theorem1;

pub use error::{Error, Result};
