//! Unifoliate and strong unifoliate r-partite recognition.
//!
//! A witness is an ordered partition `V_1, ..., V_r` of the vertices. It
//! certifies the unifoliate property when
//!
//! * `F[V_1]` is a linear hyperforest,
//! * every edge not inside `V_1` has exactly one vertex in each part, and
//! * no cycle uses exactly one edge of `F[V_1]` while every `V_1`-vertex of
//!   its edges sits in a single component of `F[V_1]`.
//!
//! It certifies the strong property when, in addition, no two distinct
//! vertices of one `F[V_1]` component are joined by a sequence of edges whose
//! consecutive members meet outside `V_1`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::hypercore::{enumerate_cycles, is_hyperforest, Cycle, Hypergraph, NamedCycle};

/// Ordered partition `V_1..V_r` of a hypergraph's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    part_of: Vec<usize>,
    parts: Vec<Vec<usize>>,
    tree_components: Vec<Vec<usize>>,
}

/// Interchange form: parts as vertex-name lists, `V_1` first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub parts: Vec<Vec<String>>,
}

impl PartitionWitness {
    /// `part_of[v]` is the 0-based part of vertex `v`; part 0 is `V_1`.
    pub fn from_assignment(f: &Hypergraph, part_of: Vec<usize>) -> Result<Self> {
        let r = f.r();
        if part_of.len() != f.num_vertices() {
            return Err(Error::InvalidWitness(format!(
                "assignment covers {} vertices, hypergraph has {}",
                part_of.len(),
                f.num_vertices()
            )));
        }
        if let Some(v) = part_of.iter().position(|&p| p >= r) {
            return Err(Error::InvalidWitness(format!(
                "vertex `{}` assigned to part {} but only {} parts exist",
                f.name(v),
                part_of[v] + 1,
                r
            )));
        }
        let mut parts = vec![Vec::new(); r];
        for (v, &p) in part_of.iter().enumerate() {
            parts[p].push(v);
        }
        let forest = f.induced_indices(&parts[0]);
        let tree_components = forest
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| parts[0][i]).collect())
            .collect();
        Ok(PartitionWitness {
            part_of,
            parts,
            tree_components,
        })
    }

    pub fn from_parts(f: &Hypergraph, parts: &[Vec<usize>]) -> Result<Self> {
        if parts.len() != f.r() {
            return Err(Error::InvalidWitness(format!(
                "expected {} parts, got {}",
                f.r(),
                parts.len()
            )));
        }
        let mut part_of = vec![usize::MAX; f.num_vertices()];
        for (p, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= f.num_vertices() {
                    return Err(Error::UnknownVertex(format!("#{v}")));
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::InvalidWitness(format!(
                        "vertex `{}` appears in two parts",
                        f.name(v)
                    )));
                }
                part_of[v] = p;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidWitness(format!(
                "vertex `{}` is in no part",
                f.name(v)
            )));
        }
        Self::from_assignment(f, part_of)
    }

    pub fn from_named_parts<S: AsRef<str>>(f: &Hypergraph, parts: &[Vec<S>]) -> Result<Self> {
        let parts = parts
            .iter()
            .map(|p| f.indices_of(p))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(f, &parts)
    }

    pub fn from_file(f: &Hypergraph, file: &WitnessFile) -> Result<Self> {
        Self::from_named_parts(f, &file.parts)
    }

    pub fn to_file(&self, f: &Hypergraph) -> WitnessFile {
        WitnessFile {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|&v| f.name(v).to_string()).collect())
                .collect(),
        }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.part_of
    }

    pub fn v1(&self) -> &[usize] {
        &self.parts[0]
    }

    pub fn in_v1(&self, v: usize) -> bool {
        self.part_of[v] == 0
    }

    /// Components of `F[V_1]` (isolated `V_1` vertices included), as vertex indices of F.
    pub fn tree_components(&self) -> &[Vec<usize>] {
        &self.tree_components
    }

    /// Index into `tree_components` for a `V_1` vertex.
    pub fn tree_of(&self, v: usize) -> Option<usize> {
        self.tree_components.iter().position(|c| c.contains(&v))
    }

    fn is_inside_v1(&self, e: &[usize]) -> bool {
        e.iter().all(|&v| self.part_of[v] == 0)
    }

    fn is_transversal(&self, e: &[usize]) -> bool {
        let mut seen = vec![false; self.parts.len()];
        e.iter().all(|&v| !std::mem::replace(&mut seen[self.part_of[v]], true))
    }
}

fn validate(f: &Hypergraph, w: &PartitionWitness) -> Result<()> {
    if w.part_of.len() != f.num_vertices() || w.parts.len() != f.r() {
        return Err(Error::InvalidWitness(
            "witness does not partition this hypergraph into r parts".into(),
        ));
    }
    Ok(())
}

/// Why a witness fails the unifoliate conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnifoliateViolation {
    /// `F[V_1]` contains this cycle (a 2-cycle when it is not linear).
    ForestHasCycle(Cycle),
    /// An edge outside `F[V_1]` that misses some part or hits one twice.
    NonTransversalEdge(usize),
    /// A cycle with exactly one `F[V_1]` edge inside one `F[V_1]` component.
    ForbiddenCycle(Cycle),
}

fn first_violation(
    f: &Hypergraph,
    w: &PartitionWitness,
    cycles: &[Cycle],
) -> Option<UnifoliateViolation> {
    for (id, e) in f.edges().iter().enumerate() {
        if !w.is_inside_v1(e) && !w.is_transversal(e) {
            return Some(UnifoliateViolation::NonTransversalEdge(id));
        }
    }
    let inside: Vec<bool> = f.edges().iter().map(|e| w.is_inside_v1(e)).collect();
    if !is_hyperforest(&f.induced_indices(w.v1())) {
        let cycle = cycles
            .iter()
            .find(|c| c.edges.iter().all(|&e| inside[e]))
            .expect("a cycle of F[V1] is a cycle of F");
        return Some(UnifoliateViolation::ForestHasCycle(cycle.clone()));
    }
    let mut tree = vec![usize::MAX; f.num_vertices()];
    for (i, comp) in w.tree_components.iter().enumerate() {
        for &v in comp {
            tree[v] = i;
        }
    }
    for c in cycles {
        if c.edges.iter().filter(|&&e| inside[e]).count() != 1 {
            continue;
        }
        let trees: BTreeSet<usize> = c
            .edge_union(f)
            .into_iter()
            .filter(|&v| w.in_v1(v))
            .map(|v| tree[v])
            .collect();
        if trees.len() <= 1 {
            return Some(UnifoliateViolation::ForbiddenCycle(c.clone()));
        }
    }
    None
}

fn all_cycles(f: &Hypergraph) -> Vec<Cycle> {
    enumerate_cycles(f, f.num_edges().min(f.num_vertices()))
}

/// `Ok(None)` when `w` witnesses that `f` is unifoliate r-partite.
pub fn check_unifoliate_witness(
    f: &Hypergraph,
    w: &PartitionWitness,
) -> Result<Option<UnifoliateViolation>> {
    validate(f, w)?;
    Ok(first_violation(f, w, &all_cycles(f)))
}

/// Two same-component `V_1` vertices linked by cross edges meeting outside `V_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongViolation {
    pub x: usize,
    pub y: usize,
    /// Edge ids `E_1..E_l`, `x ∈ E_1`, `y ∈ E_l`.
    pub path: Vec<usize>,
}

/// Strong condition by breadth-first search over cross edges.
fn strong_violation(f: &Hypergraph, w: &PartitionWitness) -> Option<StrongViolation> {
    let cross: Vec<usize> = (0..f.num_edges())
        .filter(|&id| !w.is_inside_v1(f.edge(id)))
        .collect();
    // consecutive edges must share a vertex outside V1, so only cross edges qualify
    let mut cross_at = vec![Vec::new(); f.num_vertices()];
    for &id in &cross {
        for &v in f.edge(id) {
            cross_at[v].push(id);
        }
    }
    for comp in &w.tree_components {
        for (i, &x) in comp.iter().enumerate() {
            for &y in &comp[i + 1..] {
                if let Some(path) = cross_path(f, w, &cross_at, x, y) {
                    return Some(StrongViolation { x, y, path });
                }
            }
        }
    }
    None
}

fn cross_path(
    f: &Hypergraph,
    w: &PartitionWitness,
    cross_at: &[Vec<usize>],
    x: usize,
    y: usize,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; f.num_edges()];
    let mut seen = vec![false; f.num_edges()];
    let mut queue = VecDeque::new();
    for &e in &cross_at[x] {
        seen[e] = true;
        queue.push_back(e);
    }
    while let Some(e) = queue.pop_front() {
        if f.edge(e).contains(&y) {
            let mut path = vec![e];
            let mut cur = e;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &v in f.edge(e) {
            if w.in_v1(v) {
                continue;
            }
            for &next in &cross_at[v] {
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = e;
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

/// `Ok(None)` when the unifoliate witness `w` is also strong.
pub fn check_strong_witness(f: &Hypergraph, w: &PartitionWitness) -> Result<Option<StrongViolation>> {
    if let Some(v) = check_unifoliate_witness(f, w)? {
        return Err(Error::InvalidWitness(format!(
            "witness is not unifoliate: {v:?}"
        )));
    }
    Ok(strong_violation(f, w))
}

/// The (r-1)-uniform projection of the cross edges onto `V_2 ∪ ... ∪ V_r`.
#[derive(Debug, Clone)]
pub struct ShadowHypergraph {
    /// Vertices are those of `V_2 ∪ ... ∪ V_r`, named as in F.
    pub graph: Hypergraph,
    /// Shadow vertex index to F vertex index.
    pub to_f: Vec<usize>,
    /// Components that contain at least one shadow edge, as shadow vertex indices.
    pub components: Vec<Vec<usize>>,
    /// Component id per shadow vertex; `None` for vertices on no shadow edge.
    pub component_of: Vec<Option<usize>>,
}

pub fn shadow(f: &Hypergraph, w: &PartitionWitness) -> Result<ShadowHypergraph> {
    validate(f, w)?;
    let outside: Vec<usize> = (0..f.num_vertices()).filter(|&v| !w.in_v1(v)).collect();
    let mut to_shadow = vec![usize::MAX; f.num_vertices()];
    for (i, &v) in outside.iter().enumerate() {
        to_shadow[v] = i;
    }
    let mut edges = BTreeSet::new();
    for (id, e) in f.edges().iter().enumerate() {
        if w.is_inside_v1(e) {
            continue;
        }
        if !w.is_transversal(e) {
            return Err(Error::InvalidWitness(format!(
                "edge {:?} is neither inside V1 nor transversal",
                f.edge_names(id)
            )));
        }
        edges.insert(
            e.iter()
                .filter(|&&v| !w.in_v1(v))
                .map(|&v| to_shadow[v])
                .collect::<Vec<_>>(),
        );
    }
    let names = outside.iter().map(|&v| f.name(v).to_string()).collect();
    let rank = f.r().saturating_sub(1).max(1);
    let graph = Hypergraph::from_indices(rank, names, edges)?;
    let mut component_of = vec![None; graph.num_vertices()];
    let components: Vec<Vec<usize>> = graph
        .components()
        .into_iter()
        .filter(|c| graph.degree_of(c[0]) > 0)
        .collect();
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            component_of[v] = Some(i);
        }
    }
    Ok(ShadowHypergraph {
        graph,
        to_f: outside,
        components,
        component_of,
    })
}

/// `V_1` vertices lying on a cross edge together with a shadow edge of `component`.
pub fn v1_neighborhood(
    f: &Hypergraph,
    w: &PartitionWitness,
    sh: &ShadowHypergraph,
    component: usize,
) -> Result<Vec<usize>> {
    if component >= sh.components.len() {
        return Err(Error::InvalidArgument(format!(
            "shadow component {component} does not exist"
        )));
    }
    let mut out = BTreeSet::new();
    for e in f.edges() {
        if w.is_inside_v1(e) {
            continue;
        }
        let mut x = None;
        let mut hits = false;
        for &v in e {
            if w.in_v1(v) {
                x = Some(v);
            } else {
                let s = f_to_shadow(sh, v);
                hits |= sh.component_of[s] == Some(component);
            }
        }
        if let (Some(x), true) = (x, hits) {
            out.insert(x);
        }
    }
    Ok(out.into_iter().collect())
}

fn f_to_shadow(sh: &ShadowHypergraph, v: usize) -> usize {
    sh.to_f.binary_search(&v).expect("vertex outside V1")
}

/// Strong condition through shadow components: every component's `V_1`
/// neighbourhood meets each tree of `F[V_1]` at most once.
pub fn strong_by_shadow(f: &Hypergraph, w: &PartitionWitness) -> Result<bool> {
    let sh = shadow(f, w)?;
    for c in 0..sh.components.len() {
        let nb = v1_neighborhood(f, w, &sh, c)?;
        for tree in &w.tree_components {
            if nb.iter().filter(|v| tree.contains(v)).count() > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Enumerates ordered r-partitions in lexicographic order of the part-index
/// vector, pruning assignments that already break an edge.
struct PartitionSearch<'a> {
    f: &'a Hypergraph,
    assign: Vec<usize>,
}

impl PartitionSearch<'_> {
    fn edge_ok(&self, e: &[usize]) -> bool {
        let r = self.f.r();
        let mut counts = vec![0usize; r];
        let mut assigned = 0;
        for &v in e {
            if self.assign[v] != usize::MAX {
                counts[self.assign[v]] += 1;
                assigned += 1;
            }
        }
        let all_v1 = counts[0] == assigned;
        let transversal_so_far = counts.iter().all(|&c| c <= 1);
        all_v1 || transversal_so_far
    }

    fn run<F>(&mut self, pos: usize, budget: &mut Budget, on_full: &mut F) -> Result<bool>
    where
        F: FnMut(&[usize]) -> Result<bool>,
    {
        budget.tick("partition search")?;
        if pos == self.assign.len() {
            return on_full(&self.assign);
        }
        for p in 0..self.f.r() {
            self.assign[pos] = p;
            let ok = self
                .f
                .incident(pos)
                .iter()
                .all(|&e| self.edge_ok(self.f.edge(e)));
            if ok && self.run(pos + 1, budget, on_full)? {
                self.assign[pos] = usize::MAX;
                return Ok(true);
            }
        }
        self.assign[pos] = usize::MAX;
        Ok(false)
    }
}

/// Calls `visit` on every unifoliate witness in lexicographic order until it returns true.
fn for_each_unifoliate<F>(f: &Hypergraph, budget: &mut Budget, mut visit: F) -> Result<()>
where
    F: FnMut(PartitionWitness) -> Result<bool>,
{
    let cycles = all_cycles(f);
    let mut search = PartitionSearch {
        f,
        assign: vec![usize::MAX; f.num_vertices()],
    };
    search.run(0, budget, &mut |assign| {
        let w = PartitionWitness::from_assignment(f, assign.to_vec())?;
        if first_violation(f, &w, &cycles).is_some() {
            return Ok(false);
        }
        visit(w)
    })?;
    Ok(())
}

/// First unifoliate witness in lexicographic partition order.
pub fn is_unifoliate(f: &Hypergraph, budget: &mut Budget) -> Result<Option<PartitionWitness>> {
    let mut found = None;
    for_each_unifoliate(f, budget, |w| {
        found = Some(w);
        Ok(true)
    })?;
    Ok(found)
}

/// First witness that is both unifoliate and strong.
pub fn is_strong_unifoliate(f: &Hypergraph, budget: &mut Budget) -> Result<Option<PartitionWitness>> {
    let mut found = None;
    for_each_unifoliate(f, budget, |w| {
        if strong_violation(f, &w).is_none() {
            found = Some(w);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Class {
    NotUnifoliate,
    UnifoliateOnly,
    StrongUnifoliate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: Class,
    /// Strong witness, or the first unifoliate witness for `UnifoliateOnly`.
    pub witness: Option<PartitionWitness>,
    /// For `UnifoliateOnly`, why the reported witness is not strong.
    pub violation: Option<StrongViolation>,
    /// Search nodes spent.
    pub nodes: u64,
}

pub fn classify(f: &Hypergraph, budget: &mut Budget) -> Result<Classification> {
    let start = budget.used();
    let mut first: Option<(PartitionWitness, StrongViolation)> = None;
    let mut strong = None;
    for_each_unifoliate(f, budget, |w| match strong_violation(f, &w) {
        None => {
            strong = Some(w);
            Ok(true)
        }
        Some(v) => {
            if first.is_none() {
                first = Some((w, v));
            }
            Ok(false)
        }
    })?;
    let nodes = budget.used() - start;
    Ok(match (strong, first) {
        (Some(w), _) => Classification {
            class: Class::StrongUnifoliate,
            witness: Some(w),
            violation: None,
            nodes,
        },
        (None, Some((w, v))) => Classification {
            class: Class::UnifoliateOnly,
            witness: Some(w),
            violation: Some(v),
            nodes,
        },
        (None, None) => Classification {
            class: Class::NotUnifoliate,
            witness: None,
            violation: None,
            nodes,
        },
    })
}

/// JSON certificate emitted by `classify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationFile {
    pub class: Class,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationFile {
    /// Every ordered r-partition fails.
    NoWitness { nodes: u64 },
    /// The reported witness is unifoliate but this cross-edge path breaks the strong condition.
    StrongPath {
        x: String,
        y: String,
        path: Vec<Vec<String>>,
    },
}

impl Classification {
    pub fn to_file(&self, f: &Hypergraph) -> ClassificationFile {
        let violation = match (&self.class, &self.violation) {
            (Class::NotUnifoliate, _) => Some(ViolationFile::NoWitness { nodes: self.nodes }),
            (_, Some(v)) => Some(ViolationFile::StrongPath {
                x: f.name(v.x).to_string(),
                y: f.name(v.y).to_string(),
                path: v
                    .path
                    .iter()
                    .map(|&e| f.edge_names(e).into_iter().map(String::from).collect())
                    .collect(),
            }),
            _ => None,
        };
        ClassificationFile {
            class: self.class,
            witness: self.witness.as_ref().map(|w| w.to_file(f)),
            violation,
        }
    }
}

/// Re-checks a classification certificate against `f`. Returns a description of the
/// first inconsistency found.
pub fn verify_certificate(f: &Hypergraph, cert: &ClassificationFile) -> Result<Option<String>> {
    let witness = match &cert.witness {
        Some(file) => Some(PartitionWitness::from_file(f, file)?),
        None => None,
    };
    match (cert.class, witness) {
        (Class::NotUnifoliate, None) => Ok(None),
        (Class::NotUnifoliate, Some(_)) => Ok(Some("NotUnifoliate carries a witness".into())),
        (_, None) => Ok(Some("missing witness".into())),
        (class, Some(w)) => {
            if let Some(v) = check_unifoliate_witness(f, &w)? {
                return Ok(Some(format!("witness is not unifoliate: {v:?}")));
            }
            let strong = strong_violation(f, &w).is_none();
            match (class, strong) {
                (Class::StrongUnifoliate, false) => Ok(Some("witness is not strong".into())),
                (Class::UnifoliateOnly, true) => {
                    Ok(Some("witness is strong; class should be StrongUnifoliate".into()))
                }
                _ => Ok(None),
            }
        }
    }
}

impl UnifoliateViolation {
    pub fn describe(&self, f: &Hypergraph) -> String {
        match self {
            UnifoliateViolation::ForestHasCycle(c) => {
                format!("F[V1] has cycle {:?}", c.named(f))
            }
            UnifoliateViolation::NonTransversalEdge(e) => {
                format!("edge {:?} is not transversal", f.edge_names(*e))
            }
            UnifoliateViolation::ForbiddenCycle(c) => {
                let NamedCycle { vertices, edges } = c.named(f);
                format!("forbidden cycle through {vertices:?} via {edges:?}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete, f_star, single_edge};

    fn f_star_witness(f: &Hypergraph) -> PartitionWitness {
        PartitionWitness::from_named_parts(
            f,
            &[
                vec!["a1", "a2", "a3", "a4"],
                vec!["b1", "b2"],
                vec!["c1", "c2"],
            ],
        )
        .unwrap()
    }

    #[test]
    fn illustrative_partition_is_unifoliate_not_strong() {
        let f = f_star();
        let w = f_star_witness(&f);
        assert_eq!(check_unifoliate_witness(&f, &w).unwrap(), None);
        let v = check_strong_witness(&f, &w).unwrap().unwrap();
        assert_eq!((f.name(v.x), f.name(v.y)), ("a1", "a2"));
        let path: Vec<Vec<&str>> = v.path.iter().map(|&e| f.edge_names(e)).collect();
        assert_eq!(
            path,
            vec![vec!["a1", "b1", "c1"], vec!["a4", "b1", "c2"], vec!["a2", "b2", "c2"]]
        );
        assert!(!strong_by_shadow(&f, &w).unwrap());
    }

    #[test]
    fn shadow_of_f_star() {
        let f = f_star();
        let w = f_star_witness(&f);
        let sh = shadow(&f, &w).unwrap();
        let mut edges: Vec<Vec<&str>> = (0..sh.graph.num_edges()).map(|e| sh.graph.edge_names(e)).collect();
        edges.sort();
        assert_eq!(
            edges,
            vec![vec!["b1", "c1"], vec!["b1", "c2"], vec!["b2", "c1"], vec!["b2", "c2"]]
        );
        assert_eq!(sh.components.len(), 1);
        let nb = v1_neighborhood(&f, &w, &sh, 0).unwrap();
        assert_eq!(nb, f.indices_of(&["a1", "a2", "a4"]).unwrap());
        assert!(v1_neighborhood(&f, &w, &sh, 1).is_err());
    }

    #[test]
    fn shadow_edge_cases() {
        // no cross edges
        let h = Hypergraph::new(3, ["x", "y", "z"], [["x", "y", "z"]]).unwrap();
        let w = PartitionWitness::from_parts(&h, &[vec![0, 1, 2], vec![], vec![]]).unwrap();
        let sh = shadow(&h, &w).unwrap();
        assert_eq!(sh.graph.num_edges(), 0);
        assert!(sh.components.is_empty());
        // one cross edge
        let s = single_edge(3);
        let w = PartitionWitness::from_parts(&s, &[vec![0], vec![1], vec![2]]).unwrap();
        let sh = shadow(&s, &w).unwrap();
        assert_eq!(sh.graph.num_edges(), 1);
        assert_eq!(sh.components.len(), 1);
        assert_eq!(v1_neighborhood(&s, &w, &sh, 0).unwrap(), vec![0]);
        // invalid witness
        let bad = PartitionWitness::from_parts(&s, &[vec![0], vec![1, 2], vec![]]).unwrap();
        assert!(matches!(shadow(&s, &bad), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn r_partite_with_edgeless_v1_is_unifoliate() {
        let s = single_edge(3);
        let w = PartitionWitness::from_parts(&s, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(check_unifoliate_witness(&s, &w).unwrap(), None);
        assert_eq!(check_strong_witness(&s, &w).unwrap(), None);
    }

    #[test]
    fn one_forest_edge_cycle_is_forbidden() {
        // a1a2a3 in V1 plus a1bc, a2bc: the cycle a1 -a1a2a3- a2 -a2bc- b -a1bc- a1
        let f = Hypergraph::new(
            3,
            ["a1", "a2", "a3", "b", "c"],
            [["a1", "a2", "a3"], ["a1", "b", "c"], ["a2", "b", "c"]],
        )
        .unwrap();
        let w = PartitionWitness::from_named_parts(&f, &[vec!["a1", "a2", "a3"], vec!["b"], vec!["c"]])
            .unwrap();
        match check_unifoliate_witness(&f, &w).unwrap() {
            Some(UnifoliateViolation::ForbiddenCycle(c)) => {
                assert!(c.is_valid_in(&f));
                assert!(c.edges.contains(&f.edge_id(&[0, 1, 2]).unwrap()));
            }
            other => panic!("expected forbidden cycle, got {other:?}"),
        }
        assert!(check_strong_witness(&f, &w).is_err());
    }

    #[test]
    fn non_transversal_edge_fails() {
        let k = complete(3, 4);
        let w = PartitionWitness::from_parts(&k, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        assert!(matches!(
            check_unifoliate_witness(&k, &w).unwrap(),
            Some(UnifoliateViolation::NonTransversalEdge(_))
        ));
    }

    #[test]
    fn search_results() {
        let mut b = Budget::unlimited();
        let f = f_star();
        assert!(is_unifoliate(&f, &mut b).unwrap().is_some());
        assert!(is_strong_unifoliate(&f, &mut b).unwrap().is_none());
        assert!(is_unifoliate(&complete(3, 4), &mut b).unwrap().is_none());
        assert!(is_strong_unifoliate(&single_edge(3), &mut b).unwrap().is_some());
    }

    #[test]
    fn classify_examples() {
        let mut b = Budget::unlimited();
        let f = f_star();
        let c = classify(&f, &mut b).unwrap();
        assert_eq!(c.class, Class::UnifoliateOnly);
        let file = c.to_file(&f);
        assert_eq!(verify_certificate(&f, &file).unwrap(), None);
        assert_eq!(classify(&complete(3, 4), &mut b).unwrap().class, Class::NotUnifoliate);
        let s = single_edge(3);
        let c = classify(&s, &mut b).unwrap();
        assert_eq!(c.class, Class::StrongUnifoliate);
        assert_eq!(verify_certificate(&s, &c.to_file(&s)).unwrap(), None);
    }

    #[test]
    fn budget_is_reported() {
        let mut b = Budget::new(10);
        assert!(matches!(
            classify(&f_star(), &mut b),
            Err(Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn witness_validation() {
        let f = f_star();
        assert!(PartitionWitness::from_parts(&f, &[vec![0]]).is_err());
        assert!(PartitionWitness::from_parts(&f, &[vec![0, 1], vec![1], vec![]]).is_err());
        assert!(PartitionWitness::from_assignment(&f, vec![0; 7]).is_err());
        assert!(PartitionWitness::from_assignment(&f, vec![3; 8]).is_err());
    }
}
