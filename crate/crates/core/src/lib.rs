//! Computations in the topos of finite directed multigraphs.
//!
//! The crate builds, and verifies by enumeration, the standard structure of
//! this category: finite limits and colimits computed pointwise on nodes and
//! arcs, exponential objects, the two-node five-arc subobject classifier
//! with its internal conjunction and negation, the four Lawvere-Tierney
//! topologies with their closure and density operators, separated objects
//! and sheaves, and the slice category of arc-labelled graphs whose
//! separated objects are the labelled transition systems.
//!
//! Graphs here are directed, and may have parallel arcs and self-loops. All
//! values are immutable after construction and all operations are pure, so
//! everything is safe to share across threads.

pub mod classifier;
pub mod corpus;
pub mod error;
pub mod exponential;
pub mod graph;
pub mod hom;
pub mod limits;
pub mod slice;
pub mod topology;

pub use error::{Error, Result};
pub use graph::{
    are_isomorphic, representable_arc, representable_node, ArcId, FiniteGraph, GraphMorphism,
    NodeId, Subobject,
};
pub use hom::{enumerate_homs, enumerate_homs_capped, generators_check, hom_count, DEFAULT_HOM_CAP};
