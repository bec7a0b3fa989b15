//! Recognition of unifoliate r-partite hypergraphs, the sphere-based
//! construction of dense F-free hypergraphs with large chromatic number, and
//! the fiber-bundle colour-or-embed machinery, at desk scale.

pub mod error;
pub mod fixtures;
pub mod bundle;
pub mod construct;
pub mod hypercore;
pub mod recognize;
pub mod spheregeo;

pub use error::{Budget, Error, Result};
pub use hypercore::{Coloring, Cycle, Hypergraph};
