use serde::{Deserialize, Serialize};

use super::geometric::{build_h_prime, restrict_v0, GeometricVertex};
use crate::error::{Budget, Error, Result};
use crate::hypercore::{self, Hypergraph};
use crate::spheregeo::{sample_points, SphereSample};

/// Origin of every vertex of a blown-up hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupMap {
    pub factor: usize,
    /// `origin[v]` is the pre-blowup vertex that `v` copies.
    pub origin: Vec<usize>,
}

impl BlowupMap {
    /// Vertices copying `v`.
    pub fn class(&self, v: usize) -> std::ops::Range<usize> {
        v * self.factor..(v + 1) * self.factor
    }
}

/// Replaces each vertex by `b` copies named `name#k`, and each edge by all
/// `b^r` choices of copies.
pub fn blowup(h: &Hypergraph, b: usize) -> Result<(Hypergraph, BlowupMap)> {
    if b == 0 {
        return Err(Error::InvalidArgument("blowup factor must be at least 1".into()));
    }
    let mut names = Vec::with_capacity(h.num_vertices() * b);
    let mut origin = Vec::with_capacity(h.num_vertices() * b);
    for (v, name) in h.names().iter().enumerate() {
        for k in 0..b {
            names.push(format!("{name}#{k}"));
            origin.push(v);
        }
    }
    let r = h.r();
    let mut edges = Vec::with_capacity(h.num_edges() * b.pow(r as u32));
    for e in h.edges() {
        let mut choice = vec![0usize; r];
        loop {
            edges.push(e.iter().zip(&choice).map(|(&v, &k)| v * b + k).collect());
            // odometer over copy choices
            let mut i = r;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < b {
                    break;
                }
                choice[i] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    let g = Hypergraph::from_indices(r, names, edges)?;
    Ok((g, BlowupMap { factor: b, origin }))
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(state: u64, bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(state, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable sub-seed for a named stage, so stages draw independent randomness
/// from one user seed.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    splitmix(fnv1a(fnv1a(FNV_OFFSET, &seed.to_le_bytes()), label.as_bytes()))
}

/// Uniform draw in `[0, 1)` attached to an edge, from its sorted vertex names.
fn edge_draw(seed: u64, names: &[&str]) -> f64 {
    let mut h = fnv1a(FNV_OFFSET, &seed.to_le_bytes());
    for name in names {
        h = fnv1a(h, name.as_bytes());
        h = fnv1a(h, &[0]);
    }
    (splitmix(h) >> 11) as f64 / (1u64 << 53) as f64
}

/// Keeps each edge independently with probability `p`. The coin for an edge
/// depends only on `seed` and the edge's vertex names.
pub fn sparsen(h: &Hypergraph, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("probability {p} is outside [0, 1]")));
    }
    Ok(h.filter_edges(|id| {
        let mut names = h.edge_names(id);
        names.sort_unstable();
        edge_draw(seed, &names) < p
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deletion {
    pub graph: Hypergraph,
    pub deleted: Vec<Vec<String>>,
}

/// Deletes one edge from every cycle whose edges span at most `max_span`
/// vertices: the last edge of the first such cycle in canonical order, until
/// none is left.
pub fn delete_short_cycles(h: &Hypergraph, max_span: usize, budget: &mut Budget) -> Result<Deletion> {
    if max_span < 2 {
        return Err(Error::InvalidArgument(format!(
            "cycle span bound must be at least 2, got {max_span}"
        )));
    }
    let mut ids = Vec::new();
    let alive = hypercore::delete_short_cycles(h, max_span, budget, &mut ids).map_err(|e| match e {
        Error::BudgetExhausted { limit, .. } => Error::BudgetExhausted {
            stage: format!("short-cycle deletion ({} edges deleted so far)", ids.len()),
            limit,
        },
        other => other,
    })?;
    Ok(Deletion {
        graph: h.filter_edges(|id| alive[id]),
        deleted: ids
            .iter()
            .map(|&id| h.edge_names(id).into_iter().map(String::from).collect())
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub points: usize,
    pub d: usize,
    pub theta: f64,
    pub blowup: usize,
    pub sparsen_p: f64,
    /// Cycles spanning at most this many vertices are destroyed.
    pub cycle_span: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub tuples: usize,
    pub h_prime_edges: usize,
    pub blowup_edges: usize,
    pub sparsened_edges: usize,
    pub deleted_edges: usize,
    pub v0_tuples: usize,
    /// `|V′₀| / |P|^ell`, against the reference `2^(-ell²)`.
    pub v0_ratio: f64,
    pub v0_reference: f64,
    pub h0_vertices: usize,
    pub h0_edges: usize,
}

/// Output of the `H₀` pipeline.
#[derive(Debug, Clone)]
pub struct H0 {
    pub graph: Hypergraph,
    /// Tuple of the `H′` vertex each `H₀` vertex copies.
    pub geometry: Vec<GeometricVertex>,
    pub sample: SphereSample,
    pub ell: usize,
    pub stats: PipelineStats,
}

/// `H′ → blowup → sparsen → delete short cycles → restrict to V₀`.
pub fn build_h0(r: usize, opts: &PipelineOptions, budget: &mut Budget) -> Result<H0> {
    let sample = sample_points(opts.points, opts.d, derive_seed(opts.seed, "points"))?;
    let hp = build_h_prime(&sample, r, opts.theta, budget)?;
    let (hb, map) = blowup(&hp.graph, opts.blowup)?;
    let hs = sparsen(&hb, opts.sparsen_p, derive_seed(opts.seed, "sparsen"))?;
    let del = delete_short_cycles(&hs, opts.cycle_span, budget)?;
    let geometry: Vec<GeometricVertex> = map
        .origin
        .iter()
        .map(|&o| hp.geometry[o].clone())
        .collect();
    let (graph, kept) = restrict_v0(&del.graph, &geometry, &sample)?;
    let geometry: Vec<GeometricVertex> = kept.iter().map(|&v| geometry[v].clone()).collect();
    let ell = hp.cover.ell;
    let v0_tuples = kept.len() / opts.blowup;
    let stats = PipelineStats {
        tuples: hp.graph.num_vertices(),
        h_prime_edges: hp.graph.num_edges(),
        blowup_edges: hb.num_edges(),
        sparsened_edges: hs.num_edges(),
        deleted_edges: del.deleted.len(),
        v0_tuples,
        v0_ratio: v0_tuples as f64 / hp.graph.num_vertices() as f64,
        v0_reference: 0.5f64.powi((ell * ell) as i32),
        h0_vertices: graph.num_vertices(),
        h0_edges: graph.num_edges(),
    };
    Ok(H0 {
        graph,
        geometry,
        sample,
        ell,
        stats,
    })
}
