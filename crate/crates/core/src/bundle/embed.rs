use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::degeneracy::{is_d_degenerate, peel};
use crate::error::{Budget, Error, Result};
use crate::hypercore::{is_hyperforest, Hypergraph};

/// An injection `V(F) → V(H)` mapping every edge of `F` onto an edge of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    /// `injection[x]` is the image of vertex `x` of `F`.
    pub injection: Vec<usize>,
}

impl Embedding {
    pub fn verify(&self, f: &Hypergraph, h: &Hypergraph) -> bool {
        if self.injection.len() != f.num_vertices()
            || self.injection.iter().any(|&v| v >= h.num_vertices())
        {
            return false;
        }
        let mut seen = vec![false; h.num_vertices()];
        for &v in &self.injection {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        if f.num_edges() > 0 && f.r() != h.r() {
            return false;
        }
        f.edges().iter().all(|e| {
            let mut img: Vec<usize> = e.iter().map(|&x| self.injection[x]).collect();
            img.sort_unstable();
            h.has_edge(&img)
        })
    }

    pub fn named(&self, f: &Hypergraph, h: &Hypergraph) -> BTreeMap<String, String> {
        self.injection
            .iter()
            .enumerate()
            .map(|(x, &v)| (f.name(x).to_string(), h.name(v).to_string()))
            .collect()
    }

    pub fn from_named(f: &Hypergraph, h: &Hypergraph, map: &BTreeMap<String, String>) -> Result<Self> {
        let injection = f
            .names()
            .iter()
            .map(|x| {
                let v = map
                    .get(x)
                    .ok_or_else(|| Error::InvalidArgument(format!("vertex `{x}` is not mapped")))?;
                h.index_of(v)
            })
            .collect::<Result<_>>()?;
        Ok(Embedding { injection })
    }
}

/// Order in which `contains_copy` places the vertices of `F`: each next vertex
/// is the one sharing the most edges with those already placed.
fn placement_order(f: &Hypergraph) -> Vec<usize> {
    let n = f.num_vertices();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&x| !placed[x])
            .max_by_key(|&x| {
                let linked = f
                    .incident(x)
                    .iter()
                    .filter(|&&e| f.edge(e).iter().any(|&y| placed[y]))
                    .count();
                (linked, f.degree_of(x), std::cmp::Reverse(x))
            })
            .expect("an unplaced vertex remains");
        placed[best] = true;
        order.push(best);
    }
    order
}

struct CopySearch<'a> {
    h: &'a Hypergraph,
    f: &'a Hypergraph,
    order: Vec<usize>,
    /// Placed co-edge vertex to draw candidates from, per position.
    anchor: Vec<Option<usize>>,
    /// F edges whose last vertex is placed at this position.
    closing: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl CopySearch<'_> {
    fn new<'a>(h: &'a Hypergraph, f: &'a Hypergraph) -> CopySearch<'a> {
        let order = placement_order(f);
        let mut pos = vec![0; f.num_vertices()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let anchor = order
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                f.incident(x)
                    .iter()
                    .flat_map(|&e| f.edge(e).iter().copied())
                    .filter(|&y| pos[y] < i)
                    .min_by_key(|&y| pos[y])
            })
            .collect();
        let mut closing = vec![Vec::new(); order.len()];
        for (id, e) in f.edges().iter().enumerate() {
            let last = e.iter().map(|&x| pos[x]).max().expect("edges are nonempty");
            closing[last].push(id);
        }
        CopySearch {
            h,
            f,
            order,
            anchor,
            closing,
            image: vec![usize::MAX; f.num_vertices()],
            used: vec![false; h.num_vertices()],
        }
    }

    fn candidates(&self, i: usize) -> Vec<usize> {
        match self.anchor[i] {
            Some(y) => {
                let mut c: Vec<usize> = self
                    .h
                    .incident(self.image[y])
                    .iter()
                    .flat_map(|&e| self.h.edge(e).iter().copied())
                    .collect();
                c.sort_unstable();
                c.dedup();
                c
            }
            None => (0..self.h.num_vertices()).collect(),
        }
    }

    fn run(&mut self, i: usize, budget: &mut Budget) -> Result<bool> {
        budget.tick("subhypergraph search")?;
        if i == self.order.len() {
            return Ok(true);
        }
        let x = self.order[i];
        for c in self.candidates(i) {
            if self.used[c] || self.h.degree_of(c) < self.f.degree_of(x) {
                continue;
            }
            self.image[x] = c;
            let fits = self.closing[i].iter().all(|&e| {
                let mut img: Vec<usize> = self.f.edge(e).iter().map(|&y| self.image[y]).collect();
                img.sort_unstable();
                self.h.has_edge(&img)
            });
            if fits {
                self.used[c] = true;
                let done = self.run(i + 1, budget)?;
                self.used[c] = false;
                if done {
                    return Ok(true);
                }
            }
        }
        self.image[x] = usize::MAX;
        Ok(false)
    }
}

/// A copy of `F` in `H` (not necessarily induced), found by backtracking.
pub fn contains_copy(h: &Hypergraph, f: &Hypergraph, budget: &mut Budget) -> Result<Option<Embedding>> {
    if f.num_vertices() > h.num_vertices() || (f.num_edges() > 0 && f.r() != h.r()) {
        return Ok(None);
    }
    let mut search = CopySearch::new(h, f);
    if search.run(0, budget)? {
        Ok(Some(Embedding {
            injection: search.image,
        }))
    } else {
        Ok(None)
    }
}

/// Greedy embedding of a linear hyperforest `T` on `d` vertices into a
/// hypergraph that is not `d`-degenerate.
///
/// Vertices with a guard set of size at most `d` are peeled off first. In
/// what is left, the edges at any vertex cannot all be hit by the fewer than
/// `d` vertices already used, so each edge of `T` can be placed on fresh
/// vertices through its one already-placed vertex.
pub fn embed_linear_hyperforest(h: &Hypergraph, t: &Hypergraph) -> Result<Embedding> {
    if !t.is_linear() || !is_hyperforest(t) {
        return Err(Error::InvalidArgument("T is not a linear hyperforest".into()));
    }
    let d = t.num_vertices();
    if d == 0 {
        return Ok(Embedding { injection: Vec::new() });
    }
    if t.num_edges() > 0 && t.r() != h.r() {
        return Err(Error::InvalidArgument(format!(
            "T is {}-uniform but H is {}-uniform",
            t.r(),
            h.r()
        )));
    }
    if is_d_degenerate(h, d).is_some() {
        return Err(Error::InvalidArgument(format!(
            "H is {d}-degenerate; colour it from the degeneracy certificate instead"
        )));
    }
    let core = peel(h, d).core;
    let in_core: Vec<bool> = {
        let mut m = vec![false; h.num_vertices()];
        core.iter().for_each(|&v| m[v] = true);
        m
    };
    let mut image = vec![usize::MAX; d];
    let mut used = vec![false; h.num_vertices()];

    // free edge of H[core] at v avoiding used vertices other than v
    let free_edge = |v: usize, used: &[bool]| -> Option<Vec<usize>> {
        h.incident(v)
            .iter()
            .map(|&e| h.edge(e))
            .find(|e| e.iter().all(|&u| in_core[u] && (u == v || !used[u])))
            .map(<[usize]>::to_vec)
    };

    let mut done = vec![false; t.num_edges()];
    for comp in t.components() {
        let root = comp[0];
        if image[root] == usize::MAX {
            let v = core
                .iter()
                .copied()
                .find(|&v| !used[v])
                .ok_or_else(|| Error::Infeasible("core exhausted".into()))?;
            image[root] = v;
            used[v] = true;
        }
        // breadth-first over edges: each new edge meets the placed part in one vertex
        let mut queue = vec![root];
        while let Some(x) = queue.pop() {
            for &e in t.incident(x) {
                if done[e] {
                    continue;
                }
                done[e] = true;
                let anchor = image[x];
                let target = free_edge(anchor, &used)
                    .ok_or_else(|| Error::Infeasible("greedy step found no free edge".into()))?;
                let mut fresh = target.into_iter().filter(|&u| u != anchor);
                for &y in t.edge(e) {
                    if y != x {
                        let u = fresh.next().expect("edge has r - 1 other vertices");
                        image[y] = u;
                        used[u] = true;
                        queue.push(y);
                    }
                }
            }
        }
    }
    let emb = Embedding { injection: image };
    debug_assert!(emb.verify(t, h));
    Ok(emb)
}
