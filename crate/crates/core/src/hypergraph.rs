//! Immutable hypergraph with named vertices and edges.
//!
//! Every hypergraph carries a shared `Universe`: the vertex names and the
//! original edges it was derived from. Induced subhypergraphs keep the same
//! universe, so vertex ids stay stable across restriction and every edge can
//! be traced back to the original edges that produced it.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("edge `{0}` has no vertices")]
    EmptyEdge(String),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdgeName(String),
}

#[derive(Debug)]
struct Universe {
    vertex_names: Vec<String>,
    index: HashMap<String, usize>,
    root_edges: Vec<VertexSet>,
    root_names: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Hypergraph {
    universe: Arc<Universe>,
    vertices: VertexSet,
    edges: Vec<VertexSet>,
    // root edge ids that restrict to each edge, ascending
    provenance: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    max_isect: OnceLock<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph from named edges.
    ///
    /// Vertex ids follow the lexicographic order of vertex names and edges
    /// are sorted by name. Edges with identical vertex sets collapse onto the
    /// lexicographically first name.
    pub fn from_named_edges<I, N, V, S>(edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = (N, V)>,
        N: Into<String>,
        V: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut raw: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (name, verts) in edges {
            let name = name.into();
            let verts: Vec<String> = verts.into_iter().map(|s| s.as_ref().to_string()).collect();
            if verts.is_empty() {
                return Err(HypergraphError::EmptyEdge(name));
            }
            if raw.contains_key(&name) {
                return Err(HypergraphError::DuplicateEdgeName(name));
            }
            raw.insert(name, verts);
        }

        let mut names: Vec<String> = raw.values().flatten().cloned().collect();
        names.sort();
        names.dedup();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();

        let mut root_edges = Vec::new();
        let mut root_names = Vec::new();
        let mut seen: HashMap<VertexSet, usize> = HashMap::new();
        for (name, verts) in raw {
            let set: VertexSet = verts.iter().map(|v| index[v]).collect();
            if seen.contains_key(&set) {
                continue;
            }
            seen.insert(set.clone(), root_edges.len());
            root_edges.push(set);
            root_names.push(name);
        }

        let universe = Arc::new(Universe {
            vertex_names: names,
            index,
            root_edges: root_edges.clone(),
            root_names,
        });
        let provenance = (0..root_edges.len()).map(|i| vec![i]).collect();
        Ok(Hypergraph::assemble(universe, root_edges, provenance))
    }

    fn assemble(
        universe: Arc<Universe>,
        edges: Vec<VertexSet>,
        provenance: Vec<Vec<usize>>,
    ) -> Self {
        let mut incidence = vec![Vec::new(); universe.vertex_names.len()];
        let mut vertices = VertexSet::new();
        for (i, e) in edges.iter().enumerate() {
            for v in e {
                incidence[v].push(i);
            }
            vertices.union_with(e);
        }
        Hypergraph {
            universe,
            vertices,
            edges,
            provenance,
            incidence,
            max_isect: OnceLock::new(),
        }
    }

    /// The original hypergraph this one was derived from.
    pub fn root(&self) -> Hypergraph {
        let edges = self.universe.root_edges.clone();
        let provenance = (0..edges.len()).map(|i| vec![i]).collect();
        Hypergraph::assemble(self.universe.clone(), edges, provenance)
    }

    /// True when both hypergraphs derive from the same original.
    pub fn same_universe(&self, other: &Hypergraph) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe)
    }

    pub(crate) fn universe_id(&self) -> usize {
        Arc::as_ptr(&self.universe) as usize
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &VertexSet {
        &self.edges[i]
    }

    /// Size of the vertex id space shared with every related hypergraph.
    pub fn universe_size(&self) -> usize {
        self.universe.vertex_names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.universe.vertex_names[v]
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.universe
            .index
            .get(name)
            .copied()
            .filter(|&v| self.vertices.contains(v))
    }

    /// Name of an edge: the name of the first original edge restricting to it.
    pub fn edge_name(&self, i: usize) -> &str {
        &self.universe.root_names[self.provenance[i][0]]
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        (0..self.edges.len()).find(|&i| self.edge_name(i) == name)
    }

    /// Original edge ids that restrict to edge `i`.
    pub fn provenance(&self, i: usize) -> &[usize] {
        &self.provenance[i]
    }

    pub fn root_edge(&self, r: usize) -> &VertexSet {
        &self.universe.root_edges[r]
    }

    pub fn root_edge_name(&self, r: usize) -> &str {
        &self.universe.root_names[r]
    }

    pub fn num_root_edges(&self) -> usize {
        self.universe.root_edges.len()
    }

    /// Edges incident to `v` (empty for vertices outside this hypergraph).
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn set_names(&self, s: &VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.vertex_name(v)).collect()
    }

    /// Set of vertex ids for a list of names; `None` if a name is unknown.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Option<VertexSet> {
        names.iter().map(|n| self.vertex_id(n.as_ref())).collect()
    }

    pub fn union_of_edges(&self, ids: &[usize]) -> VertexSet {
        let mut s = VertexSet::new();
        for &e in ids {
            s.union_with(&self.edges[e]);
        }
        s
    }

    /// `H[U]`: restrict every edge to `U`, drop empty restrictions and merge
    /// identical ones. Subset edges are kept.
    pub fn induced(&self, u: &VertexSet) -> Hypergraph {
        let mut edges: Vec<VertexSet> = Vec::new();
        let mut provenance: Vec<Vec<usize>> = Vec::new();
        let mut seen: HashMap<VertexSet, usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let r = e.intersection(u);
            if r.is_empty() {
                continue;
            }
            match seen.get(&r) {
                Some(&j) => provenance[j].extend_from_slice(&self.provenance[i]),
                None => {
                    seen.insert(r.clone(), edges.len());
                    edges.push(r);
                    provenance.push(self.provenance[i].clone());
                }
            }
        }
        for p in &mut provenance {
            p.sort_unstable();
            p.dedup();
        }
        Hypergraph::assemble(self.universe.clone(), edges, provenance)
    }

    /// Components of `H[V(H) \ s]`, ordered by smallest vertex.
    pub fn components_without(&self, s: &VertexSet) -> Vec<VertexSet> {
        let live = self.vertices.difference(s);
        let mut seen = VertexSet::new();
        let mut edge_done = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for start in &live {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            seen.insert(start);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    if edge_done[e] {
                        continue;
                    }
                    edge_done[e] = true;
                    for w in &self.edges[e] {
                        if live.contains(w) && seen.insert(w) {
                            comp.insert(w);
                            queue.push_back(w);
                        }
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_without(&VertexSet::new())
    }

    /// Whether every path from `a \ s` to `b \ s` meets `s`.
    pub fn is_separator(&self, a: &VertexSet, b: &VertexSet, s: &VertexSet) -> bool {
        let a = a.intersection(&self.vertices).difference(s);
        let b = b.intersection(&self.vertices).difference(s);
        if a.is_empty() || b.is_empty() {
            return true;
        }
        if a.intersects(&b) {
            return false;
        }
        let mut seen = a.clone();
        let mut edge_done = vec![false; self.edges.len()];
        let mut queue: VecDeque<usize> = a.iter().collect();
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                if edge_done[e] {
                    continue;
                }
                edge_done[e] = true;
                for w in &self.edges[e] {
                    if s.contains(w) || seen.contains(w) {
                        continue;
                    }
                    if b.contains(w) {
                        return false;
                    }
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        true
    }

    /// Largest intersection of two distinct edges (0 with fewer than two edges).
    pub fn max_pairwise_intersection(&self) -> usize {
        *self.max_isect.get_or_init(|| {
            let mut best = 0;
            for i in 0..self.edges.len() {
                for j in i + 1..self.edges.len() {
                    best = best.max(self.edges[i].intersection_len(&self.edges[j]));
                }
            }
            best
        })
    }
}
