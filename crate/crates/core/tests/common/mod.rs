//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately naive: direct enumeration with no pruning beyond what is
//! needed to finish.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unifoliate::Hypergraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Up to `max_edges` distinct random `r`-sets on `n` vertices.
pub fn random_hypergraph(rng: &mut impl Rng, r: usize, n: usize, max_edges: usize) -> Hypergraph {
    let mut all = k_subsets(n, r);
    all.shuffle(rng);
    let m = rng.gen_range(0..=max_edges.min(all.len()));
    all.truncate(m);
    Hypergraph::from_indices(r, names(n), all).unwrap()
}

/// Every cycle as a raw sequence `(x_1..x_t, E_1..E_t)`, all rotations and
/// reflections included. Edges are edge ids of `h`.
pub fn raw_cycles(h: &Hypergraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = h.num_vertices();
    let mut out = Vec::new();
    let mut vs = Vec::new();
    let mut es = Vec::new();
    fn go(
        h: &Hypergraph,
        vs: &mut Vec<usize>,
        es: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        let cur = *vs.last().unwrap();
        for e in 0..h.num_edges() {
            if es.contains(&e) || !h.edge(e).contains(&cur) {
                continue;
            }
            // close the cycle
            if vs.len() >= 2 && h.edge(e).contains(&vs[0]) {
                let mut es2 = es.clone();
                es2.push(e);
                out.push((vs.clone(), es2));
            }
            for &w in h.edge(e) {
                if vs.contains(&w) {
                    continue;
                }
                vs.push(w);
                es.push(e);
                go(h, vs, es, out);
                es.pop();
                vs.pop();
            }
        }
    }
    for s in 0..n {
        vs.push(s);
        go(h, &mut vs, &mut es, &mut out);
        vs.pop();
    }
    out
}

/// Lexicographically least rotation/reflection of a raw cycle.
pub fn canonical(vs: &[usize], es: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let t = vs.len();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for s in 0..t {
        let fwd_v: Vec<usize> = (0..t).map(|i| vs[(s + i) % t]).collect();
        let fwd_e: Vec<usize> = (0..t).map(|i| es[(s + i) % t]).collect();
        // reversed: x_s, E_{s-1}, x_{s-1}, ...
        let rev_v: Vec<usize> = (0..t).map(|i| vs[(s + t - i) % t]).collect();
        let rev_e: Vec<usize> = (0..t).map(|i| es[(s + t - i - 1) % t]).collect();
        for cand in [(fwd_v, fwd_e), (rev_v, rev_e)] {
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

pub fn cycle_classes(h: &Hypergraph) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    raw_cycles(h).iter().map(|(v, e)| canonical(v, e)).collect()
}

/// Components of `h` restricted to `keep`, as a label per vertex
/// (`usize::MAX` outside `keep`).
fn component_labels(h: &Hypergraph, keep: &[bool], edges: &[usize]) -> Vec<usize> {
    let n = h.num_vertices();
    let mut label: Vec<usize> = (0..n).map(|v| if keep[v] { v } else { usize::MAX }).collect();
    loop {
        let mut changed = false;
        for &e in edges {
            let m = h.edge(e).iter().map(|&v| label[v]).min().unwrap();
            for &v in h.edge(e) {
                if label[v] != m {
                    label[v] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

/// Does the assignment `part` (0 = V_1) witness unifoliate / strong unifoliate?
pub fn brute_witness(h: &Hypergraph, part: &[usize]) -> (bool, bool) {
    let r = h.r();
    let inside: Vec<usize> = (0..h.num_edges())
        .filter(|&e| h.edge(e).iter().all(|&v| part[v] == 0))
        .collect();
    // (b) transversal
    for e in 0..h.num_edges() {
        if inside.contains(&e) {
            continue;
        }
        let mut seen = vec![false; r];
        for &v in h.edge(e) {
            if std::mem::replace(&mut seen[part[v]], true) {
                return (false, false);
            }
        }
    }
    let raw = raw_cycles(h);
    // (a) F[V_1] acyclic (acyclic hypergraphs are automatically linear)
    if raw.iter().any(|(_, es)| es.iter().all(|e| inside.contains(e))) {
        return (false, false);
    }
    let in_v1: Vec<bool> = part.iter().map(|&p| p == 0).collect();
    let tree = component_labels(h, &in_v1, &inside);
    // (c)
    for (_, es) in &raw {
        if es.iter().filter(|e| inside.contains(e)).count() != 1 {
            continue;
        }
        let trees: HashSet<usize> = es
            .iter()
            .flat_map(|&e| h.edge(e).iter().copied())
            .filter(|&v| in_v1[v])
            .map(|v| tree[v])
            .collect();
        if trees.len() == 1 {
            return (false, false);
        }
    }
    // strong: cross-edge walks whose consecutive edges share a non-V_1 vertex
    let cross: Vec<usize> = (0..h.num_edges()).filter(|e| !inside.contains(e)).collect();
    let v1_of = |e: usize| *h.edge(e).iter().find(|&&v| in_v1[v]).unwrap();
    let linked = |a: usize, b: usize| {
        h.edge(a)
            .iter()
            .any(|v| !in_v1[*v] && h.edge(b).contains(v))
    };
    for &start in &cross {
        let mut reach = vec![start];
        let mut seen: HashSet<usize> = reach.iter().copied().collect();
        while let Some(a) = reach.pop() {
            for &b in &cross {
                if !seen.contains(&b) && linked(a, b) {
                    seen.insert(b);
                    reach.push(b);
                }
            }
        }
        let x = v1_of(start);
        if seen.iter().any(|&b| {
            let y = v1_of(b);
            y != x && tree[y] == tree[x]
        }) {
            return (true, false);
        }
    }
    (true, true)
}

/// All `r^n` assignments; returns (some witness is unifoliate, some is strong).
pub fn brute_classify(h: &Hypergraph) -> (bool, bool) {
    let n = h.num_vertices();
    let r = h.r();
    let mut part = vec![0usize; n];
    let (mut uni, mut strong) = (false, false);
    loop {
        let (u, s) = brute_witness(h, &part);
        uni |= u;
        strong |= s;
        if strong {
            return (true, true);
        }
        let mut i = 0;
        loop {
            if i == n {
                return (uni, strong);
            }
            part[i] += 1;
            if part[i] < r {
                break;
            }
            part[i] = 0;
            i += 1;
        }
    }
}

/// Some injection `V(F) → V(H)` maps every F-edge to an H-edge.
pub fn brute_contains(h: &Hypergraph, f: &Hypergraph) -> bool {
    fn go(h: &Hypergraph, f: &Hypergraph, img: &mut Vec<usize>) -> bool {
        if img.len() == f.num_vertices() {
            return f.edges().iter().all(|e| {
                let mut m: Vec<usize> = e.iter().map(|&x| img[x]).collect();
                m.sort_unstable();
                h.has_edge(&m)
            });
        }
        for v in 0..h.num_vertices() {
            if !img.contains(&v) {
                img.push(v);
                if go(h, f, img) {
                    return true;
                }
                img.pop();
            }
        }
        false
    }
    if f.num_edges() > 0 && f.r() != h.r() {
        return false;
    }
    go(h, f, &mut Vec::new())
}

/// Largest number of pairwise disjoint edges.
pub fn matching_number(h: &Hypergraph) -> usize {
    fn go(h: &Hypergraph, from: usize, used: &mut Vec<bool>) -> usize {
        let mut best = 0;
        for e in from..h.num_edges() {
            if h.edge(e).iter().all(|&v| !used[v]) {
                h.edge(e).iter().for_each(|&v| used[v] = true);
                best = best.max(1 + go(h, e + 1, used));
                h.edge(e).iter().for_each(|&v| used[v] = false);
            }
        }
        best
    }
    go(h, 0, &mut vec![false; h.num_vertices()])
}

/// Smallest `k` admitting a proper colouring, by trying all `k^n` maps.
pub fn brute_chromatic(h: &Hypergraph) -> usize {
    let n = h.num_vertices();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut c = vec![0usize; n];
        loop {
            let proper = h
                .edges()
                .iter()
                .all(|e| e.iter().any(|&v| c[v] != c[e[0]]));
            if proper {
                return k;
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                c[i] += 1;
                if c[i] < k {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

/// Largest vertex set containing no edge.
pub fn brute_alpha(h: &Hypergraph) -> usize {
    let n = h.num_vertices();
    (0u32..1 << n)
        .filter(|mask| {
            h.edges()
                .iter()
                .all(|e| !e.iter().all(|&v| mask >> v & 1 == 1))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Normalized area of the cap `{q : ‖e_0 − q‖ < rho}` on `S^d`, from the
/// regularized incomplete beta function.
pub fn cap_area(d: usize, rho: f64) -> f64 {
    use statrs::function::beta::beta_reg;
    let h = 1.0 - rho * rho / 2.0;
    let a = d as f64 / 2.0;
    if h >= 0.0 {
        0.5 * beta_reg(a, 0.5, 1.0 - h * h)
    } else {
        1.0 - 0.5 * beta_reg(a, 0.5, 1.0 - h * h)
    }
}

/// Random linear hyperforest on exactly `d` vertices, grown edge by edge
/// through at most one existing vertex.
pub fn random_linear_forest(rng: &mut impl Rng, r: usize, d: usize) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next + r <= d || (next > 0 && next + r - 1 <= d) {
        let attach = next > 0 && rng.gen_bool(0.7) && next + r - 1 <= d;
        if attach {
            let a = rng.gen_range(0..next);
            let mut e = vec![a];
            e.extend(next..next + r - 1);
            next += r - 1;
            edges.push(e);
        } else if next + r <= d {
            edges.push((next..next + r).collect());
            next += r;
        } else {
            break;
        }
        if rng.gen_bool(0.2) {
            break;
        }
    }
    Hypergraph::from_indices(r, names(d), edges).unwrap()
}

/// Random 3-uniform instance on `n` vertices with a candidate witness: a
/// random ordered partition, a random linear forest inside `V_1`, and random
/// transversal cross edges. Returns the hypergraph and the part assignment.
pub fn random_witnessed(rng: &mut impl Rng, n: usize, cross: usize) -> (Hypergraph, Vec<usize>) {
    let r = 3;
    let mut part: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
    part[0] = 0;
    let v1: Vec<usize> = (0..n).filter(|&v| part[v] == 0).collect();
    let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    if v1.len() >= r {
        let forest = random_linear_forest(rng, r, v1.len());
        for e in forest.edges() {
            let mut m: Vec<usize> = e.iter().map(|&i| v1[i]).collect();
            m.sort_unstable();
            edges.insert(m);
        }
    }
    let by_part: Vec<Vec<usize>> = (0..r)
        .map(|p| (0..n).filter(|&v| part[v] == p).collect())
        .collect();
    if by_part.iter().all(|p| !p.is_empty()) {
        for _ in 0..cross {
            let mut e: Vec<usize> = by_part.iter().map(|p| *p.choose(rng).unwrap()).collect();
            e.sort_unstable();
            edges.insert(e);
        }
    }
    (Hypergraph::from_indices(r, names(n), edges).unwrap(), part)
}
