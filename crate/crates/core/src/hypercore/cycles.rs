use std::cell::Cell;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::hypergraph::{Dsu, Hypergraph};
use crate::error::{Budget, Result};

/// A cycle `x_1 E_1 x_2 E_2 ... x_t E_t` with `{x_i, x_{i+1}} ⊆ E_i` (indices mod t).
///
/// Vertices are vertex indices and edges are edge ids of the hypergraph the
/// cycle was found in. Cycles produced by this module are canonical: `x_1` is
/// the least vertex, and the direction is chosen so that `x_2 < x_t`
/// (for `t = 2`, so that `E_1 < E_2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// A cycle spelled out with vertex names, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCycle {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks the defining conditions against `h`.
    pub fn is_valid_in(&self, h: &Hypergraph) -> bool {
        let t = self.vertices.len();
        if t < 2 || self.edges.len() != t {
            return false;
        }
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        let mut es = self.edges.clone();
        es.sort_unstable();
        es.dedup();
        if vs.len() != t || es.len() != t {
            return false;
        }
        if self.edges.iter().any(|&e| e >= h.num_edges()) {
            return false;
        }
        (0..t).all(|i| {
            let e = h.edge(self.edges[i]);
            e.contains(&self.vertices[i]) && e.contains(&self.vertices[(i + 1) % t])
        })
    }

    /// Sorted union of the vertices of all cycle edges.
    pub fn edge_union(&self, h: &Hypergraph) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .edges
            .iter()
            .flat_map(|&e| h.edge(e).iter().copied())
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn named(&self, h: &Hypergraph) -> NamedCycle {
        NamedCycle {
            vertices: self.vertices.iter().map(|&v| h.name(v).to_string()).collect(),
            edges: self
                .edges
                .iter()
                .map(|&e| h.edge_names(e).into_iter().map(String::from).collect())
                .collect(),
        }
    }
}

/// Depth-first enumeration of canonical cycles, optionally restricted to a
/// live edge mask and to cycles whose edge union spans at most `max_union`
/// vertices. The mask may change during the search; branches through an edge
/// that died are abandoned.
pub(crate) struct CycleSearch<'a> {
    pub h: &'a Hypergraph,
    pub alive: Option<&'a [Cell<bool>]>,
    pub max_t: usize,
    pub max_union: usize,
}

struct State {
    start: usize,
    verts: Vec<usize>,
    edges: Vec<usize>,
    on_path: Vec<bool>,
    used: Vec<bool>,
    cover: Vec<u32>,
    union_size: usize,
}

impl State {
    fn add(&mut self, e: &[usize]) {
        for &v in e {
            if self.cover[v] == 0 {
                self.union_size += 1;
            }
            self.cover[v] += 1;
        }
    }

    fn remove(&mut self, e: &[usize]) {
        for &v in e {
            self.cover[v] -= 1;
            if self.cover[v] == 0 {
                self.union_size -= 1;
            }
        }
    }
}

impl<'a> CycleSearch<'a> {
    fn live(&self, e: usize) -> bool {
        self.alive.is_none_or(|a| a[e].get())
    }

    fn path_live(&self, st: &State) -> bool {
        st.edges.iter().all(|&e| self.live(e))
    }

    /// Visits cycles whose least vertex lies in `starts`, in canonical DFS order.
    pub fn run<F>(
        &self,
        starts: std::ops::Range<usize>,
        budget: &mut Budget,
        visit: &mut F,
    ) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    {
        let n = self.h.num_vertices();
        let mut st = State {
            start: 0,
            verts: Vec::new(),
            edges: Vec::new(),
            on_path: vec![false; n],
            used: vec![false; self.h.num_edges()],
            cover: vec![0; n],
            union_size: 0,
        };
        for s in starts {
            st.start = s;
            st.verts.push(s);
            st.on_path[s] = true;
            let flow = self.dfs(&mut st, s, budget, visit)?;
            st.on_path[s] = false;
            st.verts.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn dfs<F>(
        &self,
        st: &mut State,
        cur: usize,
        budget: &mut Budget,
        visit: &mut F,
    ) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    {
        budget.tick("cycle search")?;
        let h = self.h;
        let t = st.verts.len();
        if t >= 2 {
            for &e in h.incident(cur) {
                if !self.path_live(st) {
                    return Ok(ControlFlow::Continue(()));
                }
                if !self.live(e) || st.used[e] || h.edge(e).binary_search(&st.start).is_err() {
                    continue;
                }
                let canonical = if t == 2 {
                    st.edges[0] < e
                } else {
                    st.verts[1] < st.verts[t - 1]
                };
                if !canonical {
                    continue;
                }
                st.add(h.edge(e));
                if st.union_size <= self.max_union {
                    st.edges.push(e);
                    let flow = visit(&st.verts, &st.edges);
                    st.edges.pop();
                    if flow.is_break() {
                        st.remove(h.edge(e));
                        return Ok(flow);
                    }
                }
                st.remove(h.edge(e));
            }
        }
        if t < self.max_t {
            for &e in h.incident(cur) {
                if !self.live(e) || st.used[e] {
                    continue;
                }
                st.add(h.edge(e));
                if st.union_size <= self.max_union {
                    st.used[e] = true;
                    st.edges.push(e);
                    for &w in h.edge(e) {
                        if !self.path_live(st) {
                            break;
                        }
                        if w <= st.start || st.on_path[w] {
                            continue;
                        }
                        st.verts.push(w);
                        st.on_path[w] = true;
                        let flow = self.dfs(st, w, budget, visit)?;
                        st.on_path[w] = false;
                        st.verts.pop();
                        if flow.is_break() {
                            st.edges.pop();
                            st.used[e] = false;
                            st.remove(h.edge(e));
                            return Ok(flow);
                        }
                    }
                    st.edges.pop();
                    st.used[e] = false;
                }
                st.remove(h.edge(e));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// All cycles of length at most `max_t`, one representative per rotation and
/// reflection class, in deterministic order. Exponential: bound `max_t`.
pub fn enumerate_cycles(h: &Hypergraph, max_t: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    if max_t < 2 {
        return out;
    }
    let search = CycleSearch {
        h,
        alive: None,
        max_t: max_t.min(h.num_vertices()),
        max_union: usize::MAX,
    };
    let mut budget = Budget::unlimited();
    let _ = search.run(0..h.num_vertices(), &mut budget, &mut |vs, es| {
        out.push(Cycle {
            vertices: vs.to_vec(),
            edges: es.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out
}

/// Walks the cycles whose edge union spans at most `max_union` vertices in
/// canonical order and deletes the largest edge id of each cycle that is
/// still intact. Deleted ids are appended to `deleted` as they happen, so the
/// caller sees the progress made before a budget error.
pub(crate) fn delete_short_cycles(
    h: &Hypergraph,
    max_union: usize,
    budget: &mut Budget,
    deleted: &mut Vec<usize>,
) -> Result<Vec<bool>> {
    let alive: Vec<Cell<bool>> = (0..h.num_edges()).map(|_| Cell::new(true)).collect();
    let search = CycleSearch {
        h,
        alive: Some(&alive),
        max_t: max_union.min(h.num_vertices()),
        max_union,
    };
    let mut visit = |_: &[usize], es: &[usize]| {
        if es.iter().all(|&e| alive[e].get()) {
            let last = *es.iter().max().expect("cycles have edges");
            alive[last].set(false);
            deleted.push(last);
        }
        ControlFlow::Continue(())
    };
    for start in 0..h.num_vertices() {
        let _ = search.run(start..start + 1, budget, &mut visit)?;
    }
    Ok(alive.into_iter().map(Cell::into_inner).collect())
}

/// No cycles of any length.
///
/// A cycle is exactly a cycle of the vertex-edge incidence graph, so this is a
/// forest test on that bipartite graph.
pub fn is_hyperforest(h: &Hypergraph) -> bool {
    let n = h.num_vertices();
    let mut dsu = Dsu::new(n + h.num_edges());
    for (id, e) in h.edges().iter().enumerate() {
        for &v in e {
            if !dsu.union(v, n + id) {
                return false;
            }
        }
    }
    true
}

/// Connected hyperforest.
pub fn is_hypertree(h: &Hypergraph) -> bool {
    is_hyperforest(h) && h.components().len() == 1
}
