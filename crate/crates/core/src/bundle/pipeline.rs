use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::degeneracy::{degeneracy_color, is_d_degenerate};
use super::embed::{contains_copy, Embedding};
use super::fiber::{dim_at_least, section, t_bundle, FiberBundle, KSpec};
use crate::error::{Budget, Error, Result};
use crate::hypercore::{chromatic_number, greedy_color, ChromaticOutcome, Coloring, Hypergraph};
use crate::recognize::{check_strong_witness, shadow, v1_neighborhood, PartitionWitness};

/// Default clamp on the part size of `K`.
pub const DEFAULT_PART_SIZE_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColorOrEmbedOptions {
    pub part_size_cap: usize,
    pub budget: u64,
}

impl Default for ColorOrEmbedOptions {
    fn default() -> Self {
        ColorOrEmbedOptions {
            part_size_cap: DEFAULT_PART_SIZE_CAP,
            budget: Budget::DEFAULT_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleColoring {
    pub coloring: Coloring,
    pub colors: usize,
    /// Colours used on the base `B`; `None` when `H` was coloured directly.
    pub base_colors: Option<usize>,
    pub base_exact: bool,
    /// `(|V(T)| + 1) · base_colors`.
    pub bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Outcome {
    Embedding(Embedding),
    Coloring(BundleColoring),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColorOrEmbed {
    pub outcome: Outcome,
    /// Part size used for `K`, after clamping.
    pub part_size: usize,
    /// `(rm)^m`, saturating.
    pub part_size_unclamped: u64,
    /// Number of components of `G[V_1]`.
    pub t: usize,
    /// Base edges of the dim witness, if one was found.
    pub matching: Option<Vec<Vec<usize>>>,
    pub notes: Vec<String>,
}

/// Either finds a copy of the strong unifoliate `G` in `H` through a large
/// dim witness of the `G[V_1]`-bundle, or colours `H` from a colouring of the
/// bundle base and degeneracy colourings of its colour classes.
pub fn color_or_embed(
    h: &Hypergraph,
    g: &Hypergraph,
    w: &PartitionWitness,
    opts: &ColorOrEmbedOptions,
) -> Result<ColorOrEmbed> {
    if let Some(v) = check_strong_witness(g, w)? {
        return Err(Error::InvalidWitness(format!(
            "witness is not strong: {} and {} are linked",
            g.name(v.x),
            g.name(v.y)
        )));
    }
    if g.r() != h.r() {
        return Err(Error::InvalidArgument(format!(
            "G is {}-uniform but H is {}-uniform",
            g.r(),
            h.r()
        )));
    }
    let r = g.r();
    let m = g.num_vertices();
    let unclamped = (r as u64 * m as u64).saturating_pow(m as u32);
    let mut notes = Vec::new();

    let v1 = w.v1().to_vec();
    if v1.is_empty() {
        // every edge would need a V_1 vertex, so G is edgeless
        let mut out = ColorOrEmbed {
            outcome: Outcome::Coloring(color_directly(h, opts.budget)),
            part_size: 0,
            part_size_unclamped: unclamped,
            t: 0,
            matching: None,
            notes,
        };
        if m <= h.num_vertices() {
            out.outcome = Outcome::Embedding(Embedding {
                injection: (0..m).collect(),
            });
        } else {
            out.notes.push("H has fewer vertices than G".into());
        }
        return Ok(out);
    }

    let forest = g.induced_indices(&v1);
    let trees = w.tree_components().to_vec();
    let sh = shadow(g, w)?;
    let to_f = &sh.to_f;
    let widest = sh
        .components
        .iter()
        .flat_map(|c| {
            (1..r).map(move |p| c.iter().filter(|&&s| w.part_of(to_f[s]) == p).count())
        })
        .max()
        .unwrap_or(0);
    let part_size = (widest.max(opts.part_size_cap) as u64).min(unclamped).max(1) as usize;
    if (part_size as u64) < unclamped {
        notes.push(format!("part size clamped from (rm)^m = {unclamped} to {part_size}"));
    }
    let spec = KSpec {
        parts: r - 1,
        part_size,
    };

    let mut budget = Budget::new(opts.budget);
    let bundle = t_bundle(h, &forest, &mut budget)?;
    let mut out = ColorOrEmbed {
        outcome: Outcome::Coloring(BundleColoring {
            coloring: Coloring { colors: Vec::new() },
            colors: 0,
            base_colors: None,
            base_exact: false,
            bound: None,
        }),
        part_size,
        part_size_unclamped: unclamped,
        t: trees.len(),
        matching: None,
        notes,
    };

    match dim_at_least(&bundle, spec, trees.len(), &mut budget) {
        Ok(Some(matching)) => {
            out.matching = Some(
                matching
                    .iter()
                    .map(|&id| bundle.base.edge(id).to_vec())
                    .collect(),
            );
            match assemble(h, g, w, &forest, &bundle, &matching, &mut budget) {
                Ok(Some(emb)) if emb.verify(g, h) => {
                    out.outcome = Outcome::Embedding(emb);
                    return Ok(out);
                }
                Ok(Some(_)) => out.notes.push("assembled map failed verification".into()),
                Ok(None) => out
                    .notes
                    .push("dim witness found but shadow components did not fit on unused vertices".into()),
                Err(Error::BudgetExhausted { stage, .. }) => {
                    out.notes.push(format!("embedding abandoned: budget exhausted in {stage}"))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(None) => {}
        Err(Error::BudgetExhausted { stage, .. }) => {
            out.notes.push(format!("dim search abandoned: budget exhausted in {stage}"));
        }
        Err(e) => return Err(e),
    }

    out.outcome = Outcome::Coloring(if forest.num_vertices() == 1 {
        // every vertex is a base edge, so B has no proper colouring
        out.notes.push("|V(T)| = 1: H coloured directly".into());
        color_directly(h, opts.budget)
    } else {
        color_through_base(h, &bundle, forest.num_vertices(), opts.budget)?
    });
    Ok(out)
}

/// Places each tree of `G[V_1]` inside its matching edge and each shadow
/// component inside the section of its representatives.
fn assemble(
    h: &Hypergraph,
    g: &Hypergraph,
    w: &PartitionWitness,
    forest: &Hypergraph,
    bundle: &FiberBundle,
    matching: &[usize],
    budget: &mut Budget,
) -> Result<Option<Embedding>> {
    let v1 = w.v1();
    let mut image = vec![usize::MAX; g.num_vertices()];
    let mut used = vec![false; h.num_vertices()];
    for (tree, &id) in w.tree_components().iter().zip(matching) {
        let cell = bundle.base.edge(id);
        let Some(copy) = contains_copy(&h.induced_indices(cell), forest, budget)? else {
            return Ok(None);
        };
        for &x in tree {
            let local = v1.binary_search(&x).expect("tree vertices lie in V_1");
            let v = cell[copy.injection[local]];
            image[x] = v;
            used[v] = true;
        }
    }

    let sh = shadow(g, w)?;
    for (c, comp) in sh.components.iter().enumerate() {
        let reps: Vec<usize> = v1_neighborhood(g, w, &sh, c)?
            .into_iter()
            .map(|x| image[x])
            .collect();
        let s = section(bundle, &reps)?;
        let free: Vec<usize> = (0..h.num_vertices()).filter(|&v| !used[v]).collect();
        let host = s.induced_indices(&free);
        let piece = sh.graph.induced_indices(comp);
        let Some(emb) = contains_copy(&host, &piece, budget)? else {
            return Ok(None);
        };
        for (i, &sv) in comp.iter().enumerate() {
            let v = free[emb.injection[i]];
            image[sh.to_f[sv]] = v;
            used[v] = true;
        }
    }

    // vertices outside V_1 on no edge
    let mut spare = (0..h.num_vertices()).filter(|&v| !used[v]);
    for slot in image.iter_mut().filter(|s| **s == usize::MAX) {
        match spare.next() {
            Some(v) => *slot = v,
            None => return Ok(None),
        }
    }
    Ok(Some(Embedding { injection: image }))
}

fn color_directly(h: &Hypergraph, nodes: u64) -> BundleColoring {
    let (coloring, exact) = solve_coloring(h, nodes);
    BundleColoring {
        colors: coloring.num_colors(),
        coloring,
        base_colors: None,
        base_exact: exact,
        bound: None,
    }
}

/// Exact colouring within `nodes`, otherwise the best found or a greedy one.
fn solve_coloring(h: &Hypergraph, nodes: u64) -> (Coloring, bool) {
    let limit = h.num_vertices().max(1);
    match chromatic_number(h, limit, &mut Budget::new(nodes)) {
        ChromaticOutcome::Exact { coloring, .. } => (coloring, true),
        ChromaticOutcome::BudgetExhausted { coloring, .. } => (coloring, false),
        ChromaticOutcome::ExceedsLimit { .. } => {
            let order: Vec<usize> = (0..h.num_vertices()).collect();
            (greedy_color(h, &order).expect("identity order"), false)
        }
    }
}

fn color_through_base(
    h: &Hypergraph,
    bundle: &FiberBundle,
    d: usize,
    nodes: u64,
) -> Result<BundleColoring> {
    let (base_coloring, base_exact) = solve_coloring(&bundle.base, nodes);
    let base_colors = base_coloring.num_colors();
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in base_coloring.colors.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    let mut colors = vec![0usize; h.num_vertices()];
    for (&b, class) in &classes {
        let sub = h.induced_indices(class);
        let cert = is_d_degenerate(&sub, d).ok_or_else(|| {
            Error::Infeasible(format!(
                "colour class {b} of the base is not {d}-degenerate"
            ))
        })?;
        let inner = degeneracy_color(&sub, &cert)?;
        for (i, &v) in class.iter().enumerate() {
            colors[v] = (b - 1) * (d + 1) + inner.colors[i];
        }
    }
    // renumber to 1..k in order of first use
    let mut seen = BTreeMap::new();
    for c in colors.iter_mut() {
        let next = seen.len() + 1;
        *c = *seen.entry(*c).or_insert(next);
    }
    let coloring = Coloring { colors };
    let bound = (d + 1) * base_colors;
    let used = coloring.num_colors();
    debug_assert!(coloring.is_proper(h));
    if used > bound {
        return Err(Error::Infeasible(format!(
            "combined colouring used {used} > {bound} colours"
        )));
    }
    Ok(BundleColoring {
        coloring,
        colors: used,
        base_colors: Some(base_colors),
        base_exact,
        bound: Some(bound),
    })
}
