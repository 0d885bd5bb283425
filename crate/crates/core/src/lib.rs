//! Inversion distance and inversion diameter of graph orientations.

pub mod certificates;
pub mod cli;
pub mod constructive;
pub mod error;
pub mod f2;
pub mod graph;
pub mod generators;
pub mod io;
pub mod reductions;
pub mod solver;

pub use error::{Error, Result};
pub use f2::{AffineSpace, F2Matrix, F2Vector};
pub use graph::{EdgeLabeling, Graph, InversionSequence, Orientation, Realisation, VertexSet};
