//! Subhypergraph search, degeneracy certificates, hypergraph bundles, and
//! the colour-or-embed dichotomy for strong unifoliate hypergraphs.

mod degeneracy;
mod embed;
mod fiber;
mod pipeline;

pub use degeneracy::{degeneracy_color, find_guard, is_d_degenerate, peel, DegeneracyCertificate, Peeling};
pub use embed::{contains_copy, embed_linear_hyperforest, Embedding};
pub use fiber::{contains_complete_partite, dim_at_least, section, t_bundle, FiberBundle, KSpec};
pub use pipeline::{
    color_or_embed, BundleColoring, ColorOrEmbed, ColorOrEmbedOptions, Outcome, DEFAULT_PART_SIZE_CAP,
};
