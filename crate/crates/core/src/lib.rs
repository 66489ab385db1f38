//! Self-indexed graphs and comtes.
//!
//! A self-indexed graph is a directed multigraph whose arrows are labeled by
//! its own vertices; a comte adds a conserved integral flow. Link diagrams
//! give comtes, and the library computes their moves and invariants: group
//! and quandle presentations, Alexander polynomials, linking numbers, quandle
//! colorings and cocycle state sums, and the cubical homology of r-graphs.

pub mod alexander;
pub mod census;
pub mod cli;
pub mod error;
pub mod finite_type;
pub mod graph;
pub mod homology;
pub mod invariants;
pub mod link;
pub mod moves;
pub mod quandle;
pub mod sample;
pub mod suite;

pub use error::{DecodeError, Error, GraphError};
pub use graph::{
    classify, components, contract, validate, Arrow, CanonicalKey, Comte, GraphClass, GraphHomomorphism,
    SelfIndexedGraph, ValidationReport,
};
