//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graphs must share a vertex set (host-graph embedding is not supported)")]
    VertexSetMismatch,
    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(usize, usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("complex is empty")]
    EmptyComplex,
    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<usize>),
    #[error("expected a simplex of dimension {expected}, got dimension {got}")]
    WrongSimplexDimension { expected: usize, got: usize },
    #[error("matrix of dimension {n} exceeds the dense eigensolver cap {cap}; use spectral_count")]
    DenseCapExceeded { n: usize, cap: usize },
    #[error("symmetric factorization broke down at shift {0}")]
    FactorizationBreakdown(f64),
    #[error("histograms use different bin edges")]
    BinMismatch,
    #[error("link of simplex {0:?} is not cyclic: not a manifold at that simplex")]
    NotManifoldAt(Vec<usize>),
    #[error("coloring does not assign a color to every vertex")]
    PartialColoring,
    #[error("coloring is not proper at edge ({0}, {1})")]
    ImproperColoring(usize, usize),
    #[error("coloring precondition failed: {0}")]
    ColoringPrecondition(String),
    #[error("no suitable 3-coloring found within budget; offending subgraph on vertices {0:?}")]
    AcyclicColoringFailure(Vec<usize>),
    #[error("face-color propagation conflict between faces {0:?} and {1:?}")]
    PropagationConflict(Vec<usize>, Vec<usize>),
    #[error("{0}")]
    Precondition(String),
}
