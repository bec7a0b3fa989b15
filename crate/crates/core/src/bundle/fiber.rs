use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::embed::contains_copy;
use crate::error::{Budget, Error, Result};
use crate::fixtures::subsets;
use crate::hypercore::Hypergraph;

/// A base hypergraph `B` with, over each base vertex `b`, a family `γ(b)` of
/// `fiber_rank`-subsets of the fiber vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberBundle {
    pub base: Hypergraph,
    pub fiber_vertices: Vec<String>,
    pub fiber_rank: usize,
    /// `fibers[b]`: sorted index sets into `fiber_vertices`.
    pub fibers: Vec<BTreeSet<Vec<usize>>>,
}

impl FiberBundle {
    pub fn new(
        base: Hypergraph,
        fiber_vertices: Vec<String>,
        fiber_rank: usize,
        fibers: Vec<BTreeSet<Vec<usize>>>,
    ) -> Result<Self> {
        if fibers.len() != base.num_vertices() {
            return Err(Error::DimensionMismatch(fibers.len(), base.num_vertices()));
        }
        if fiber_rank == 0 {
            return Err(Error::ZeroUniformity);
        }
        for set in fibers.iter().flatten() {
            let sorted = set.windows(2).all(|w| w[0] < w[1]);
            if set.len() != fiber_rank || !sorted || set.iter().any(|&v| v >= fiber_vertices.len()) {
                return Err(Error::InvalidArgument(format!(
                    "fiber set {set:?} is not a sorted {fiber_rank}-set of fiber vertices"
                )));
            }
        }
        Ok(FiberBundle {
            base,
            fiber_vertices,
            fiber_rank,
            fibers,
        })
    }
}

/// The `T`-bundle of `H`: base edges are the `|V(T)|`-sets `X` with a copy of
/// `T` in `H[X]`, the fiber set is `V(H)`, and `γ(b)` collects the
/// `(r-1)`-sets completing `b` to an edge.
pub fn t_bundle(h: &Hypergraph, t: &Hypergraph, budget: &mut Budget) -> Result<FiberBundle> {
    let m = t.num_vertices();
    if m == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if h.r() < 2 {
        return Err(Error::InvalidArgument("fibers need r >= 2".into()));
    }
    let mut base_edges = Vec::new();
    if m <= h.num_vertices() {
        for x in subsets(h.num_vertices(), m) {
            budget.tick("T-bundle base edges")?;
            let sub = h.induced_indices(&x);
            if sub.num_edges() >= t.num_edges() && contains_copy(&sub, t, budget)?.is_some() {
                base_edges.push(x);
            }
        }
    }
    let base = Hypergraph::from_indices(m, h.names().to_vec(), base_edges)?;
    let mut fibers = vec![BTreeSet::new(); h.num_vertices()];
    for e in h.edges() {
        for &b in e {
            fibers[b].insert(e.iter().copied().filter(|&u| u != b).collect());
        }
    }
    FiberBundle::new(base, h.names().to_vec(), h.r() - 1, fibers)
}

/// `∩_{x ∈ X} γ(x)` as a hypergraph on the fiber vertices.
pub fn section(bundle: &FiberBundle, x: &[usize]) -> Result<Hypergraph> {
    let Some((&first, rest)) = x.split_first() else {
        return Err(Error::InvalidArgument("section of the empty set".into()));
    };
    if let Some(&b) = x.iter().find(|&&b| b >= bundle.fibers.len()) {
        return Err(Error::UnknownVertex(format!("#{b}")));
    }
    let edges = bundle.fibers[first]
        .iter()
        .filter(|s| rest.iter().all(|&b| bundle.fibers[b].contains(*s)))
        .cloned();
    Hypergraph::from_indices(bundle.fiber_rank, bundle.fiber_vertices.clone(), edges)
}

/// Complete `parts`-partite `parts`-uniform hypergraph with `part_size`
/// vertices in every part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSpec {
    pub parts: usize,
    pub part_size: usize,
}

/// Parts `P_1..P_k` of a complete partite subsystem of `s`, if one exists.
pub fn contains_complete_partite(
    s: &Hypergraph,
    spec: KSpec,
    budget: &mut Budget,
) -> Result<Option<Vec<Vec<usize>>>> {
    if spec.part_size == 0 || spec.parts == 0 {
        return Err(Error::InvalidArgument("K needs at least one part of size >= 1".into()));
    }
    if spec.parts != s.r() {
        return Err(Error::InvalidArgument(format!(
            "K has {} parts but the host is {}-uniform",
            spec.parts,
            s.r()
        )));
    }
    let need = spec.part_size.saturating_pow(spec.parts as u32 - 1);
    let pool: Vec<usize> = (0..s.num_vertices()).filter(|&v| s.degree_of(v) >= need).collect();
    if pool.len() < spec.parts * spec.part_size {
        return Ok(None);
    }
    let mut search = PartiteSearch {
        s,
        spec,
        pool,
        parts: vec![Vec::new(); spec.parts],
        used: vec![false; s.num_vertices()],
    };
    Ok(search.run(0, budget)?.then_some(search.parts))
}

struct PartiteSearch<'a> {
    s: &'a Hypergraph,
    spec: KSpec,
    pool: Vec<usize>,
    parts: Vec<Vec<usize>>,
    used: Vec<bool>,
}

impl PartiteSearch<'_> {
    /// Slots are filled row by row: `P_1[0], ..., P_k[0], P_1[1], ...`.
    fn run(&mut self, slot: usize, budget: &mut Budget) -> Result<bool> {
        budget.tick("complete partite search")?;
        let k = self.spec.parts;
        if slot == k * self.spec.part_size {
            return Ok(true);
        }
        let (row, part) = (slot / k, slot % k);
        let floor = match (row, part) {
            (0, 0) => None,
            (0, p) => Some(self.parts[p - 1][0]),
            (_, p) => Some(*self.parts[p].last().expect("earlier row filled")),
        };
        for i in 0..self.pool.len() {
            let v = self.pool[i];
            if self.used[v] || floor.is_some_and(|f| v <= f) {
                continue;
            }
            self.parts[part].push(v);
            if self.transversals_ok(part) {
                self.used[v] = true;
                if self.run(slot + 1, budget)? {
                    return Ok(true);
                }
                self.used[v] = false;
            }
            self.parts[part].pop();
        }
        Ok(false)
    }

    /// Every transversal through the newest vertex of `part` is an edge.
    fn transversals_ok(&self, part: usize) -> bool {
        if self.parts.iter().any(Vec::is_empty) {
            return true;
        }
        let v = *self.parts[part].last().expect("just pushed");
        let others: Vec<&Vec<usize>> = (0..self.parts.len())
            .filter(|&p| p != part)
            .map(|p| &self.parts[p])
            .collect();
        let mut idx = vec![0usize; others.len()];
        loop {
            let mut e: Vec<usize> = idx.iter().zip(&others).map(|(&i, p)| p[i]).collect();
            e.push(v);
            e.sort_unstable();
            if !self.s.has_edge(&e) {
                return false;
            }
            let mut j = idx.len();
            loop {
                if j == 0 {
                    return true;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < others[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }
}

/// A matching `E_1..E_t` of base edges such that, for every choice
/// `x_i ∈ E_i`, the section of `{x_1, ..., x_t}` contains `K`. Returns base
/// edge ids. All transversals are checked.
pub fn dim_at_least(
    bundle: &FiberBundle,
    spec: KSpec,
    t: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    if t == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut search = DimSearch {
        bundle,
        spec,
        t,
        chosen: Vec::new(),
        used: vec![false; bundle.base.num_vertices()],
        cache: HashMap::new(),
    };
    Ok(search.run(0, budget)?.then_some(search.chosen))
}

struct DimSearch<'a> {
    bundle: &'a FiberBundle,
    spec: KSpec,
    t: usize,
    chosen: Vec<usize>,
    used: Vec<bool>,
    cache: HashMap<Vec<usize>, bool>,
}

impl DimSearch<'_> {
    fn run(&mut self, from: usize, budget: &mut Budget) -> Result<bool> {
        budget.tick("dim search")?;
        if self.chosen.len() == self.t {
            return self.all_sections_rich(budget);
        }
        let base = &self.bundle.base;
        for id in from..base.num_edges() {
            if base.edge(id).iter().any(|&v| self.used[v]) {
                continue;
            }
            // single-vertex sections must already contain K
            let mut rich = true;
            for &x in base.edge(id) {
                if !self.rich(vec![x], budget)? {
                    rich = false;
                    break;
                }
            }
            if !rich {
                continue;
            }
            self.chosen.push(id);
            base.edge(id).iter().for_each(|&v| self.used[v] = true);
            if self.run(id + 1, budget)? {
                return Ok(true);
            }
            base.edge(id).iter().for_each(|&v| self.used[v] = false);
            self.chosen.pop();
        }
        Ok(false)
    }

    fn all_sections_rich(&mut self, budget: &mut Budget) -> Result<bool> {
        let edges: Vec<Vec<usize>> = self
            .chosen
            .iter()
            .map(|&id| self.bundle.base.edge(id).to_vec())
            .collect();
        let mut idx = vec![0usize; edges.len()];
        loop {
            let mut x: Vec<usize> = idx.iter().zip(&edges).map(|(&i, e)| e[i]).collect();
            x.sort_unstable();
            if !self.rich(x, budget)? {
                return Ok(false);
            }
            let mut j = idx.len();
            loop {
                if j == 0 {
                    return Ok(true);
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < edges[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }

    fn rich(&mut self, x: Vec<usize>, budget: &mut Budget) -> Result<bool> {
        if let Some(&known) = self.cache.get(&x) {
            return Ok(known);
        }
        let s = section(self.bundle, &x)?;
        let ok = contains_complete_partite(&s, self.spec, budget)?.is_some();
        self.cache.insert(x, ok);
        Ok(ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::single_edge;

    #[test]
    fn single_edge_bundle() {
        let h = single_edge(3);
        let b = t_bundle(&h, &single_edge(3), &mut Budget::unlimited()).unwrap();
        assert_eq!(b.base.num_edges(), 1);
        assert_eq!(b.base.edge(0), &[0, 1, 2]);
        assert_eq!(b.fibers[0].iter().cloned().collect::<Vec<_>>(), vec![vec![1, 2]]);
        assert_eq!(section(&b, &[0]).unwrap().edges(), &[vec![1, 2]]);
        assert!(section(&b, &[0, 1]).unwrap().num_edges() == 0);
        assert!(section(&b, &[]).is_err());
    }

    #[test]
    fn edgeless_bundle() {
        let h = Hypergraph::edgeless(3, ["1", "2", "3", "4"]).unwrap();
        let b = t_bundle(&h, &single_edge(3), &mut Budget::unlimited()).unwrap();
        assert_eq!(b.base.num_edges(), 0);
        assert!(b.fibers.iter().all(BTreeSet::is_empty));
        assert!(dim_at_least(&b, KSpec { parts: 2, part_size: 1 }, 1, &mut Budget::unlimited())
            .unwrap()
            .is_none());
        assert_eq!(
            dim_at_least(&b, KSpec { parts: 2, part_size: 1 }, 0, &mut Budget::unlimited()).unwrap(),
            Some(vec![])
        );
    }

    #[test]
    fn four_cycle_is_k22() {
        let s = Hypergraph::new(
            2,
            ["b1", "b2", "c1", "c2"],
            [["b1", "c1"], ["b1", "c2"], ["b2", "c1"], ["b2", "c2"]],
        )
        .unwrap();
        let mut b = Budget::unlimited();
        let parts = contains_complete_partite(&s, KSpec { parts: 2, part_size: 2 }, &mut b)
            .unwrap()
            .unwrap();
        assert_eq!(parts, vec![vec![0, 1], vec![2, 3]]);
        assert!(contains_complete_partite(&s, KSpec { parts: 2, part_size: 3 }, &mut b)
            .unwrap()
            .is_none());
        let empty = Hypergraph::edgeless(2, ["x", "y"]).unwrap();
        assert!(contains_complete_partite(&empty, KSpec { parts: 2, part_size: 1 }, &mut b)
            .unwrap()
            .is_none());
    }
}
