//! Burling trees, the oriented graphs derived from them, and the structural
//! machinery built on top: k-sequential decompositions, nobility, star-cutset
//! decomposition, hole analysis, non-membership obstructions and an exact
//! recognizer that emits checkable certificates.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! search and the command-line tool live in the `burling` crate.
//!
//! ```
//! use burling_core::generators::figure_square_c4;
//! use burling_core::tree::derive;
//!
//! let d = figure_square_c4();
//! let g = derive(&d).unwrap();
//! assert_eq!(g.arc_count(), 4);
//! ```
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod generators;
pub mod graph;
pub mod holes;
pub mod orient;
pub mod recognition;
pub mod sequential;
pub mod structure;
pub mod transform;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, OrientedGraph, OrientedGraphBuilder, VertexId};
pub use holes::Hole;
pub use tree::{ArcClass, BurlingTree, Derivation};
