//! Exact construction and analysis of Cox configurations.
//!
//! A Cox configuration has the even-cardinality subsets of `{1, …, n}` as
//! points, the odd-cardinality subsets as blocks, and incidence when one
//! subset covers the other. This crate builds these structures and their
//! relatives (combinatorial Grassmannians, clique structures, Levi graphs),
//! decides the chain-geometry axioms by enumeration, computes the
//! collineation/correlation group two independent ways, and produces
//! certified realizations by circles on the inversive plane using exact
//! rational arithmetic throughout.
//!
//! Everything is deterministic: fixed seeds give bit-identical realizations,
//! and all searches run in a fixed order.
//!
//! All types are immutable after construction and safe to share across
//! threads; operations are pure functions.

#![forbid(unsafe_code)]

pub mod axioms;
pub mod builders;
pub mod export;
pub mod graph;
pub mod incidence;
pub mod iso;
pub mod perm;
pub mod realization;
pub mod subset;
pub mod symmetry;

pub use incidence::{signature, ConfigSignature, IncidenceStructure, Label};
pub use perm::Perm;
pub use subset::FiniteSubset;
