//! Uniform hypergraphs, their cycles, and exact small-instance invariants.

mod cycles;
mod hypergraph;
mod solve;

pub(crate) use cycles::delete_short_cycles;
pub use cycles::{enumerate_cycles, is_hyperforest, is_hypertree, Cycle, NamedCycle};
pub use hypergraph::{Hypergraph, HypergraphFile};
pub use solve::{
    chromatic_number, greedy_color, greedy_color_names, independence_number, ChromaticOutcome,
    Coloring, IndependenceOutcome,
};
