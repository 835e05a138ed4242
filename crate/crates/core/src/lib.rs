//! Orientations of weighted planar graphs whose directed cycle diameter is
//! within a constant factor of the optimum.
//!
//! The pipeline: serving cycles through a root ([`family`]), removal of
//! crossings ([`uncross`]), orientation by generation and containment level
//! ([`orient`]), and bound checking ([`verify`]).

pub mod cost;
pub mod error;
pub mod graph;
pub mod io;
pub mod path;
pub mod family;
pub mod figures;
pub mod generate;
pub mod shortest;
pub mod tree;
pub mod uncross;
pub mod orient;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeId, NodeId, WeightedGraph};
