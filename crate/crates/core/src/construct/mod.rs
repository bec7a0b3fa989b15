//! The layered sphere construction: the bit-string cover of `[r]`, the
//! geometric hypergraph `H′` on `ell`-tuples of sphere points, the
//! blowup / sparsen / short-cycle deletion pipeline giving `H₀`, and the full
//! hypergraph `G` on `A ∪ C_1 ∪ ... ∪ C_{r-1} ∪ D`.

mod cover;
mod geometric;
mod layered;
mod pipeline;

pub use cover::{bipartite_cover, ell_for, BipartiteCover};
pub use geometric::{
    build_h_prime, in_v0, ordering_satisfies, restrict_v0, GeometricHypergraph, GeometricVertex,
    MAX_TUPLES,
};
pub use layered::{
    build_g, construct_g, verify_construction, verify_construction_with, AIndependence, Check,
    Construction, ConstructionParams, ConstructionReport, EdgeTypeCounts, GOptions, Layer,
    LayerStats, LayeredFile, LayeredHypergraph, Mode, Preconditions, REPORT_ALPHA_NODES,
};
pub use pipeline::{
    blowup, build_h0, delete_short_cycles, derive_seed, sparsen, BlowupMap, Deletion,
    PipelineOptions, PipelineStats, H0,
};
