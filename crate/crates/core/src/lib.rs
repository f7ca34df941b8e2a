//! Exact enumeration and verification for biased graphs on `[n]`.
//!
//! The crate builds the cycle catalog of `K_n`, the overlap graph of cycles,
//! bias-set validation and exact counting, the container iteration, the
//! compression map with its inverse, group-labelling machinery backed by
//! integer lattices, diamond rings, and rigorous bounds arithmetic.

pub mod bias;
pub mod bounds;
pub mod cache;
pub mod compression;
pub mod containers;
pub mod cycles;
pub mod error;
pub mod interval;
pub mod labelling;
pub mod overlap;
pub mod rings;

pub use bias::{BiasSet, SimpleGraph};
pub use cycles::{canonical_cycle, enumerate_cycles, hamilton_ids, Cycle, CycleCatalog, CycleId, EdgeId};
pub use error::{Error, Result};
pub use interval::Interval;
pub use overlap::{BuildMethod, OverlapGraph, OverlapStats};
