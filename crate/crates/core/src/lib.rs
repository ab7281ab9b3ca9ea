//! Whitney complexes of graphs, their soft and strong barycentric
//! refinements, and the machinery to study them: manifold recognition,
//! Kirchhoff spectra with densities of states, tree and forest counts, and
//! colorings of dual graphs and refinements.

pub mod canon;
pub mod chromatic;
pub mod complex;
pub mod error;
pub mod generators;
pub mod graph;
pub mod json;
pub mod recognize;
pub mod refine;
pub mod spectral;

pub use complex::{whitney, FVector, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use graph::Graph;
pub use recognize::{classify, is_contractible, Decision, ManifoldKind, ManifoldReport};
pub use refine::{barycentric, soft_barycentric, RefinedGraph};
