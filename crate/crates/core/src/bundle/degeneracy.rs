use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Coloring, Hypergraph};

/// Ordering `v_1..v_n` with guard sets `A_{v_i}`, `|A_{v_i}| ≤ d`,
/// `v_i ∉ A_{v_i}`, such that every edge of `H[v_1..v_i]` through `v_i`
/// meets `A_{v_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyCertificate {
    pub d: usize,
    pub order: Vec<usize>,
    /// `guards[i]` guards `order[i]`.
    pub guards: Vec<Vec<usize>>,
}

impl DegeneracyCertificate {
    pub fn verify(&self, h: &Hypergraph) -> Result<()> {
        let n = h.num_vertices();
        let bad = |index: usize, reason: String| Err(Error::InvalidCertificate { index, reason });
        if self.order.len() != n || self.guards.len() != n {
            return bad(0, format!("order covers {} of {n} vertices", self.order.len()));
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return bad(i, "order is not a permutation".into());
            }
            pos[v] = i;
        }
        for (i, (&v, guard)) in self.order.iter().zip(&self.guards).enumerate() {
            if guard.len() > self.d {
                return bad(i, format!("guard has {} > {} vertices", guard.len(), self.d));
            }
            if guard.contains(&v) {
                return bad(i, "vertex guards itself".into());
            }
            if guard.iter().any(|&g| g >= n) {
                return bad(i, "guard names an unknown vertex".into());
            }
            for &e in h.incident(v) {
                let edge = h.edge(e);
                let in_prefix = edge.iter().all(|&u| pos[u] <= i);
                if in_prefix && !edge.iter().any(|u| guard.contains(u)) {
                    return bad(i, format!("edge {:?} misses the guard", h.edge_names(e)));
                }
            }
        }
        Ok(())
    }
}

/// A set of at most `d` vertices other than `v`, hitting every edge of
/// `H[present]` through `v`. Depth-first over the vertices of the first
/// unhit edge, so the result is deterministic.
pub fn find_guard(h: &Hypergraph, present: &[bool], v: usize, d: usize) -> Option<Vec<usize>> {
    let edges: Vec<Vec<usize>> = h
        .incident(v)
        .iter()
        .map(|&e| h.edge(e))
        .filter(|e| e.iter().all(|&u| present[u]))
        .map(|e| e.iter().copied().filter(|&u| u != v).collect())
        .collect();
    let mut guard = Vec::new();
    hit(&edges, d, &mut guard).then_some(guard)
}

fn hit(edges: &[Vec<usize>], d: usize, guard: &mut Vec<usize>) -> bool {
    let Some(open) = edges.iter().find(|e| !e.iter().any(|u| guard.contains(u))) else {
        return true;
    };
    if guard.len() == d {
        return false;
    }
    for &u in open {
        guard.push(u);
        if hit(edges, d, guard) {
            return true;
        }
        guard.pop();
    }
    false
}

/// Result of greedy peeling at level `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peeling {
    /// Removed vertices with their guards, in removal order.
    pub removed: Vec<(usize, Vec<usize>)>,
    /// Vertices left when no further vertex had a guard: the core.
    pub core: Vec<usize>,
}

/// Repeatedly removes the least-index vertex that has a guard of size at
/// most `d` in what remains.
pub fn peel(h: &Hypergraph, d: usize) -> Peeling {
    let n = h.num_vertices();
    let mut present = vec![true; n];
    let mut removed = Vec::with_capacity(n);
    'outer: while removed.len() < n {
        for v in 0..n {
            if present[v] {
                if let Some(g) = find_guard(h, &present, v, d) {
                    present[v] = false;
                    removed.push((v, g));
                    continue 'outer;
                }
            }
        }
        break;
    }
    Peeling {
        removed,
        core: (0..n).filter(|&v| present[v]).collect(),
    }
}

/// A degeneracy certificate at level `d`, or `None` when peeling stalls.
pub fn is_d_degenerate(h: &Hypergraph, d: usize) -> Option<DegeneracyCertificate> {
    let p = peel(h, d);
    if !p.core.is_empty() {
        return None;
    }
    let (order, guards) = p.removed.into_iter().rev().unzip();
    Some(DegeneracyCertificate { d, order, guards })
}

/// Greedy colouring along the certificate order, avoiding only colours that
/// would complete a monochromatic edge. Uses at most `d + 1` colours.
pub fn degeneracy_color(h: &Hypergraph, cert: &DegeneracyCertificate) -> Result<Coloring> {
    cert.verify(h)?;
    let n = h.num_vertices();
    let mut colors = vec![0usize; n];
    for &v in &cert.order {
        let mut banned = Vec::new();
        for &e in h.incident(v) {
            let others: Vec<usize> = h.edge(e).iter().copied().filter(|&u| u != v).collect();
            let c = colors[others[0]];
            if c != 0 && others.iter().all(|&u| colors[u] == c) {
                banned.push(c);
            }
        }
        colors[v] = (1..).find(|c| !banned.contains(c)).expect("some colour is free");
    }
    Ok(Coloring { colors })
}
