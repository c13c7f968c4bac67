//! Symmetric edge graphs, Kronecker double covers of line graphs, and the
//! exact spectral and Ihara-zeta machinery used to compare them.

pub mod canon;
pub mod charpoly;
pub mod constructions;
pub mod crown;
pub mod error;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod spectral;
pub mod theorems;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{Family, Graph, Predicates};
pub use matrix::IntMatrix;
pub use poly::IntPoly;
