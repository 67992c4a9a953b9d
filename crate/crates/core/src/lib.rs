//! Right-angled Artin groups acting on their extension graphs.
//!
//! * [`graph`]: finite simplicial graphs, complements, stars, domination,
//!   connectivity and text formats.
//! * [`words`]: the word problem in `A(Γ)` with canonical normal forms.
//! * [`extension`]: conjugate vertices, adjacency and finite balls of `Γ^e`.
//! * [`certificates`]: star-edges, loxodromicity, and upper-bound
//!   certificates for asymptotic translation length.
//! * [`families`]: the named example graphs.
//! * [`atlas`]: exhaustive enumeration and sweeps.

pub mod atlas;
pub mod certificates;
pub mod error;
pub mod extension;
pub mod families;
pub mod graph;
pub mod words;

pub use error::{Error, Result};
pub use graph::{Distance, Edge, Graph, VertexSet};
pub use words::{GroupElement, Letter, Raag};
