use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An r-uniform hypergraph over named vertices.
///
/// Vertex names are kept in insertion order and mapped to dense indices
/// `0..n`. Edges are stored as sorted index vectors and the edge list is
/// itself sorted, so two hypergraphs with the same vertex order and edge set
/// compare equal regardless of how they were built.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "HypergraphFile", into = "HypergraphFile")]
pub struct Hypergraph {
    r: usize,
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    edge_ids: HashMap<Vec<usize>, usize>,
}

/// On-disk interchange form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub r: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

impl Hypergraph {
    /// Builds a hypergraph from vertex names and edges given as name lists.
    pub fn new<V, E, S>(r: usize, vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator,
        E::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut idx_edges = Vec::new();
        for edge in edges {
            let mut ids = Vec::with_capacity(r);
            for v in edge {
                let v = v.as_ref();
                match index.get(v) {
                    Some(&i) => ids.push(i),
                    None => return Err(Error::UnknownVertex(v.to_string())),
                }
            }
            idx_edges.push(ids);
        }
        Self::assemble(r, names, index, idx_edges)
    }

    /// Builds a hypergraph from names and edges over vertex indices.
    pub fn from_indices<E>(r: usize, names: Vec<String>, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = Vec<usize>>,
    {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let n = names.len();
        let mut idx_edges = Vec::new();
        for e in edges {
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex(format!("#{bad}")));
            }
            idx_edges.push(e);
        }
        Self::assemble(r, names, index, idx_edges)
    }

    /// Hypergraph with no edges.
    pub fn edgeless<V>(r: usize, vertices: V) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
    {
        Self::new(r, vertices, std::iter::empty::<Vec<String>>())
    }

    fn assemble(
        r: usize,
        names: Vec<String>,
        index: HashMap<String, usize>,
        mut edges: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroUniformity);
        }
        let named = |e: &[usize]| e.iter().map(|&v| names[v].clone()).collect::<Vec<_>>();
        for e in edges.iter_mut() {
            if e.len() != r {
                return Err(Error::WrongEdgeSize {
                    edge: named(e),
                    expected: r,
                    found: e.len(),
                });
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertexInEdge(named(e)));
            }
        }
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(named(&w[0])));
        }
        let mut incidence = vec![Vec::new(); names.len()];
        let mut edge_ids = HashMap::with_capacity(edges.len());
        for (id, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(id);
            }
            edge_ids.insert(e.clone(), id);
        }
        Ok(Hypergraph {
            r,
            names,
            index,
            edges,
            incidence,
            edge_ids,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }

    pub fn edge_names(&self, id: usize) -> Vec<&str> {
        self.edges[id].iter().map(|&v| self.name(v)).collect()
    }

    /// Ids of edges containing `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Id of the edge with exactly these vertices, in any order.
    pub fn edge_id(&self, vertices: &[usize]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.edge_ids.get(&key).copied()
    }

    pub fn has_edge(&self, vertices: &[usize]) -> bool {
        self.edge_id(vertices).is_some()
    }

    pub fn degree(&self, name: &str) -> Result<usize> {
        Ok(self.incidence[self.index_of(name)?].len())
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.incidence
            .iter()
            .map(Vec::len)
            .min()
            .ok_or(Error::EmptyVertexSet)
    }

    /// Induced subhypergraph on the named vertices.
    pub fn induced<S: AsRef<str>>(&self, vertices: &[S]) -> Result<Hypergraph> {
        let ids = self.indices_of(vertices)?;
        Ok(self.induced_indices(&ids))
    }

    /// Induced subhypergraph on `ids`. Vertices keep this hypergraph's relative order.
    pub fn induced_indices(&self, ids: &[usize]) -> Hypergraph {
        let mut keep: Vec<usize> = ids.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut remap = vec![usize::MAX; self.num_vertices()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let names = keep.iter().map(|&v| self.names[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| remap[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| remap[v]).collect())
            .collect::<Vec<_>>();
        Hypergraph::from_indices(self.r, names, edges).expect("induced subhypergraph is valid")
    }

    /// Same vertices, only the edges whose ids satisfy `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize) -> bool) -> Hypergraph {
        let edges = (0..self.num_edges())
            .filter(|&id| keep(id))
            .map(|id| self.edges[id].clone())
            .collect::<Vec<_>>();
        Hypergraph::from_indices(self.r, self.names.clone(), edges).expect("edge subset is valid")
    }

    /// Connected components as sorted index lists, ordered by least vertex.
    /// Isolated vertices are singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut dsu = Dsu::new(self.num_vertices());
        for e in &self.edges {
            for w in e.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        dsu.groups()
    }

    pub fn component_names(&self) -> Vec<Vec<String>> {
        self.components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| self.names[v].clone()).collect())
            .collect()
    }

    /// Every pair of edges shares at most one vertex.
    pub fn is_linear(&self) -> bool {
        let mut seen = HashMap::new();
        for (id, e) in self.edges.iter().enumerate() {
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    if let Some(prev) = seen.insert((e[i], e[j]), id) {
                        if prev != id {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn check_subset(&self, x: &[usize]) -> Result<()> {
        match x.iter().find(|&&v| v >= self.num_vertices()) {
            Some(v) => Err(Error::UnknownVertex(format!("#{v}"))),
            None => Ok(()),
        }
    }

    pub fn is_independent<S: AsRef<str>>(&self, x: &[S]) -> Result<bool> {
        let ids = self.indices_of(x)?;
        self.is_independent_indices(&ids)
    }

    pub fn is_independent_indices(&self, x: &[usize]) -> Result<bool> {
        self.check_subset(x)?;
        let mut inside = vec![false; self.num_vertices()];
        for &v in x {
            inside[v] = true;
        }
        Ok(self.edges.iter().all(|e| e.iter().any(|&v| !inside[v])))
    }

    pub fn is_strong_independent<S: AsRef<str>>(&self, x: &[S]) -> Result<bool> {
        let ids = self.indices_of(x)?;
        self.is_strong_independent_indices(&ids)
    }

    pub fn is_strong_independent_indices(&self, x: &[usize]) -> Result<bool> {
        self.check_subset(x)?;
        let mut inside = vec![false; self.num_vertices()];
        for &v in x {
            inside[v] = true;
        }
        Ok(self
            .edges
            .iter()
            .all(|e| e.iter().filter(|&&v| inside[v]).count() <= 1))
    }

    pub fn to_file(&self) -> HypergraphFile {
        let mut edges: Vec<Vec<String>> = self
            .edges
            .iter()
            .map(|e| {
                let mut names: Vec<String> = e.iter().map(|&v| self.names[v].clone()).collect();
                names.sort();
                names
            })
            .collect();
        edges.sort();
        HypergraphFile {
            r: self.r,
            vertices: self.names.clone(),
            edges,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl TryFrom<HypergraphFile> for Hypergraph {
    type Error = Error;

    fn try_from(file: HypergraphFile) -> Result<Self> {
        Hypergraph::new(file.r, file.vertices, file.edges)
    }
}

impl From<Hypergraph> for HypergraphFile {
    fn from(h: Hypergraph) -> Self {
        h.to_file()
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = (0..self.num_edges())
            .map(|id| self.edge_names(id).join(""))
            .collect();
        f.debug_struct("Hypergraph")
            .field("r", &self.r)
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// Union-find with path halving.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let root = self.find(v);
            by_root[root].push(v);
        }
        by_root.into_iter().filter(|g| !g.is_empty()).collect()
    }
}
