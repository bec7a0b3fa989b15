use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::hypergraph::Hypergraph;
use crate::error::{Budget, Error, Result};

/// Vertex colouring with colours `1..=k`, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn num_colors(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// No edge lies inside a single colour class.
    pub fn is_proper(&self, h: &Hypergraph) -> bool {
        self.colors.len() == h.num_vertices()
            && self.colors.iter().all(|&c| c >= 1)
            && h
                .edges()
                .iter()
                .all(|e| e.iter().any(|&v| self.colors[v] != self.colors[e[0]]))
    }

    pub fn named(&self, h: &Hypergraph) -> BTreeMap<String, usize> {
        self.colors
            .iter()
            .enumerate()
            .map(|(v, &c)| (h.name(v).to_string(), c))
            .collect()
    }

    pub fn from_named(h: &Hypergraph, map: &BTreeMap<String, usize>) -> Result<Self> {
        let mut colors = vec![0; h.num_vertices()];
        for (name, &c) in map {
            colors[h.index_of(name)?] = c;
        }
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::InvalidArgument(format!(
                "vertex `{}` has no colour",
                h.name(v)
            )));
        }
        Ok(Coloring { colors })
    }
}

/// Least colour for `v` that completes no monochromatic edge among coloured vertices.
fn least_safe_color(h: &Hypergraph, colors: &[usize], v: usize) -> usize {
    let mut forbidden = Vec::new();
    for &e in h.incident(v) {
        let mut shared = None;
        let mut mono = true;
        for &u in h.edge(e) {
            if u == v {
                continue;
            }
            let c = colors[u];
            if c == 0 || shared.is_some_and(|s| s != c) {
                mono = false;
                break;
            }
            shared = Some(c);
        }
        if mono {
            if let Some(c) = shared {
                forbidden.push(c);
            }
        }
    }
    forbidden.sort_unstable();
    forbidden.dedup();
    let mut c = 1;
    for f in forbidden {
        if f == c {
            c += 1;
        } else if f > c {
            break;
        }
    }
    c
}

/// Greedy colouring along `order`, which must be a permutation of the vertices.
pub fn greedy_color(h: &Hypergraph, order: &[usize]) -> Result<Coloring> {
    let n = h.num_vertices();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::NotPermutation);
    }
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::NotPermutation);
        }
        seen[v] = true;
    }
    let mut colors = vec![0; n];
    for &v in order {
        colors[v] = least_safe_color(h, &colors, v);
    }
    Ok(Coloring { colors })
}

pub fn greedy_color_names<S: AsRef<str>>(h: &Hypergraph, order: &[S]) -> Result<Coloring> {
    let ids = h.indices_of(order)?;
    greedy_color(h, &ids)
}

fn degree_order(h: &Hypergraph, descending: bool) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.num_vertices()).collect();
    if descending {
        order.sort_by_key(|&v| (std::cmp::Reverse(h.degree_of(v)), v));
    } else {
        order.sort_by_key(|&v| (h.degree_of(v), v));
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndependenceOutcome {
    Exact { size: usize, witness: Vec<usize> },
    BudgetExhausted { lower_bound: usize, witness: Vec<usize> },
}

impl IndependenceOutcome {
    pub fn witness(&self) -> &[usize] {
        match self {
            IndependenceOutcome::Exact { witness, .. }
            | IndependenceOutcome::BudgetExhausted { witness, .. } => witness,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            IndependenceOutcome::Exact { size, .. } => Some(*size),
            _ => None,
        }
    }
}

struct AlphaSearch<'a> {
    h: &'a Hypergraph,
    order: Vec<usize>,
    chosen_in_edge: Vec<usize>,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl AlphaSearch<'_> {
    fn can_add(&self, v: usize) -> bool {
        let r = self.h.r();
        self.h
            .incident(v)
            .iter()
            .all(|&e| self.chosen_in_edge[e] + 1 < r)
    }

    fn set(&mut self, v: usize, on: bool) {
        for &e in self.h.incident(v) {
            if on {
                self.chosen_in_edge[e] += 1;
            } else {
                self.chosen_in_edge[e] -= 1;
            }
        }
        if on {
            self.current.push(v);
        } else {
            self.current.pop();
        }
    }

    /// Returns false if the budget ran out.
    fn search(&mut self, pos: usize, budget: &mut Budget) -> bool {
        if !budget.try_tick() {
            return false;
        }
        if self.current.len() + (self.order.len() - pos) <= self.best.len() {
            return true;
        }
        if pos == self.order.len() {
            self.best = self.current.clone();
            return true;
        }
        let v = self.order[pos];
        if self.can_add(v) {
            self.set(v, true);
            let ok = self.search(pos + 1, budget);
            self.set(v, false);
            if !ok {
                return false;
            }
        }
        self.search(pos + 1, budget)
    }
}

/// Size of a largest independent set, by branch and bound.
pub fn independence_number(h: &Hypergraph, budget: &mut Budget) -> IndependenceOutcome {
    let order = degree_order(h, false);
    let mut s = AlphaSearch {
        h,
        chosen_in_edge: vec![0; h.num_edges()],
        current: Vec::new(),
        best: Vec::new(),
        order: order.clone(),
    };
    // greedy seed for the bound
    for &v in &order {
        if s.can_add(v) {
            s.set(v, true);
        }
    }
    s.best = s.current.clone();
    for _ in 0..s.best.len() {
        let v = *s.current.last().unwrap();
        s.set(v, false);
    }
    let finished = s.search(0, budget);
    let mut witness = s.best;
    witness.sort_unstable();
    debug_assert!(h.is_independent_indices(&witness).unwrap());
    if finished {
        IndependenceOutcome::Exact {
            size: witness.len(),
            witness,
        }
    } else {
        IndependenceOutcome::BudgetExhausted {
            lower_bound: witness.len(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChromaticOutcome {
    Exact { colors: usize, coloring: Coloring },
    /// No colouring with at most `limit` colours exists.
    ExceedsLimit { limit: usize },
    BudgetExhausted { upper_bound: usize, coloring: Coloring },
}

impl ChromaticOutcome {
    pub fn exact(&self) -> Option<usize> {
        match self {
            ChromaticOutcome::Exact { colors, .. } => Some(*colors),
            _ => None,
        }
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            ChromaticOutcome::Exact { coloring, .. }
            | ChromaticOutcome::BudgetExhausted { coloring, .. } => Some(coloring),
            ChromaticOutcome::ExceedsLimit { .. } => None,
        }
    }
}

struct KColor<'a> {
    h: &'a Hypergraph,
    order: Vec<usize>,
    /// Edges whose last vertex in `order` is the vertex at this position.
    closing: Vec<Vec<usize>>,
    colors: Vec<usize>,
}

impl KColor<'_> {
    fn new(h: &Hypergraph) -> KColor<'_> {
        let order = degree_order(h, true);
        let mut pos = vec![0; h.num_vertices()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut closing = vec![Vec::new(); order.len()];
        for (id, e) in h.edges().iter().enumerate() {
            let last = e.iter().map(|&v| pos[v]).max().unwrap();
            closing[last].push(id);
        }
        KColor {
            h,
            order,
            closing,
            colors: vec![0; h.num_vertices()],
        }
    }

    /// Some(true) colourable, Some(false) not, None budget exhausted.
    fn search(&mut self, pos: usize, k: usize, max_used: usize, budget: &mut Budget) -> Option<bool> {
        if !budget.try_tick() {
            return None;
        }
        if pos == self.order.len() {
            return Some(true);
        }
        let v = self.order[pos];
        for c in 1..=k.min(max_used + 1) {
            self.colors[v] = c;
            let ok = self.closing[pos].iter().all(|&e| {
                self.h.edge(e).iter().any(|&u| self.colors[u] != c)
            });
            if ok {
                match self.search(pos + 1, k, max_used.max(c), budget) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => {
                        self.colors[v] = 0;
                        return None;
                    }
                }
            }
        }
        self.colors[v] = 0;
        Some(false)
    }
}

/// Least `k <= limit` admitting a proper k-colouring.
pub fn chromatic_number(h: &Hypergraph, limit: usize, budget: &mut Budget) -> ChromaticOutcome {
    let n = h.num_vertices();
    if n == 0 {
        return ChromaticOutcome::Exact {
            colors: 0,
            coloring: Coloring { colors: Vec::new() },
        };
    }
    let greedy = greedy_color(h, &degree_order(h, true)).expect("degree order is a permutation");
    let upper = greedy.num_colors();
    if upper <= 1 {
        return if limit >= 1 {
            ChromaticOutcome::Exact {
                colors: 1,
                coloring: greedy,
            }
        } else {
            ChromaticOutcome::ExceedsLimit { limit }
        };
    }
    let mut solver = KColor::new(h);
    for k in 2..upper.min(limit + 1) {
        solver.colors.iter_mut().for_each(|c| *c = 0);
        match solver.search(0, k, 0, budget) {
            Some(true) => {
                let coloring = Coloring {
                    colors: solver.colors.clone(),
                };
                debug_assert!(coloring.is_proper(h));
                return ChromaticOutcome::Exact { colors: k, coloring };
            }
            Some(false) => {}
            None => {
                return ChromaticOutcome::BudgetExhausted {
                    upper_bound: upper,
                    coloring: greedy,
                }
            }
        }
    }
    if upper <= limit {
        ChromaticOutcome::Exact {
            colors: upper,
            coloring: greedy,
        }
    } else {
        ChromaticOutcome::ExceedsLimit { limit }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete, f_star, single_edge};

    #[test]
    fn alpha_small_cases() {
        let mut b = Budget::unlimited();
        assert_eq!(independence_number(&complete(3, 4), &mut b).exact(), Some(2));
        let e = Hypergraph::edgeless(3, ["a", "b", "c", "d", "e"]).unwrap();
        assert_eq!(independence_number(&e, &mut b).exact(), Some(5));
        assert_eq!(independence_number(&f_star(), &mut b).exact(), Some(5));
    }

    #[test]
    fn alpha_budget_reports_lower_bound() {
        let mut b = Budget::new(1);
        match independence_number(&complete(3, 7), &mut b) {
            IndependenceOutcome::BudgetExhausted { lower_bound, witness } => {
                assert_eq!(lower_bound, witness.len());
                assert!(lower_bound >= 2);
            }
            other => panic!("expected budget outcome, got {other:?}"),
        }
    }

    #[test]
    fn greedy_edge_cases() {
        let e = Hypergraph::edgeless(3, ["a", "b"]).unwrap();
        assert_eq!(greedy_color(&e, &[1, 0]).unwrap().colors, vec![1, 1]);
        let s = single_edge(3);
        let c = greedy_color(&s, &[2, 0, 1]).unwrap();
        assert_eq!(c.colors, vec![1, 2, 1]);
        let k4 = complete(3, 4);
        let c = greedy_color(&k4, &[0, 1, 2, 3]).unwrap();
        assert!(c.is_proper(&k4));
        assert!(c.num_colors() <= 3);
        assert_eq!(greedy_color(&k4, &[0, 1, 2]), Err(Error::NotPermutation));
        assert_eq!(greedy_color(&k4, &[0, 1, 2, 2]), Err(Error::NotPermutation));
    }

    #[test]
    fn chromatic_small_cases() {
        let mut b = Budget::unlimited();
        let e = Hypergraph::edgeless(3, ["a", "b"]).unwrap();
        assert_eq!(chromatic_number(&e, 5, &mut b).exact(), Some(1));
        let k4 = complete(3, 4);
        let out = chromatic_number(&k4, 5, &mut b);
        assert_eq!(out.exact(), Some(2));
        assert!(out.coloring().unwrap().is_proper(&k4));
        assert_eq!(chromatic_number(&f_star(), 5, &mut b).exact(), Some(2));
        // K_5 over pairs needs 5 colours.
        let k5 = complete(2, 5);
        assert_eq!(chromatic_number(&k5, 5, &mut b).exact(), Some(5));
        assert_eq!(
            chromatic_number(&k5, 3, &mut b),
            ChromaticOutcome::ExceedsLimit { limit: 3 }
        );
    }

    #[test]
    fn named_coloring_round_trip() {
        let f = f_star();
        let c = greedy_color(&f, &(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(Coloring::from_named(&f, &c.named(&f)).unwrap(), c);
    }
}
