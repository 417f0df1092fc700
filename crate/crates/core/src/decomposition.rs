//! Tree decompositions, validation, width and the surgery used by the
//! separator and compression steps.

use std::collections::VecDeque;

use crate::bitset::{NodeSet, VertexSet};
use crate::cover::min_edge_cover;
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    adjacency: Vec<Vec<usize>>,
    covers: Option<Vec<Vec<usize>>>,
    active: Option<NodeSet>,
}

impl PartialEq for TreeDecomposition {
    fn eq(&self, other: &Self) -> bool {
        self.bags == other.bags
            && self.tree_edges() == other.tree_edges()
            && self.covers == other.covers
            && self.active == other.active
    }
}

/// A subtree cut out of a larger decomposition.
#[derive(Debug, Clone)]
pub struct Subtree {
    pub td: TreeDecomposition,
    /// `origin[i]` is the node of the parent decomposition that became node `i`.
    pub origin: Vec<usize>,
    /// The extra node holding the union of all cut-away bags, if any.
    pub extra: Option<usize>,
}

impl TreeDecomposition {
    pub fn single(bag: VertexSet) -> Self {
        TreeDecomposition {
            bags: vec![bag],
            adjacency: vec![Vec::new()],
            covers: None,
            active: None,
        }
    }

    /// Builds a decomposition from bags and tree edges without checking
    /// anything; use [`validate`] for that.
    pub fn new(bags: Vec<VertexSet>, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); bags.len()];
        for &(a, b) in edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        TreeDecomposition {
            bags,
            adjacency,
            covers: None,
            active: None,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, t: usize) -> &VertexSet {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn neighbors(&self, t: usize) -> &[usize] {
        &self.adjacency[t]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// Tree edges as `(a, b)` with `a < b`, sorted.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn covers(&self) -> Option<&[Vec<usize>]> {
        self.covers.as_deref()
    }

    pub fn set_covers(&mut self, covers: Vec<Vec<usize>>) {
        assert_eq!(covers.len(), self.bags.len());
        self.covers = Some(covers);
    }

    pub fn clear_covers(&mut self) {
        self.covers = None;
    }

    /// Largest cover size, when covers are present.
    pub fn max_cover(&self) -> Option<usize> {
        self.covers
            .as_ref()
            .map(|c| c.iter().map(Vec::len).max().unwrap_or(0))
    }

    /// The active node set; all nodes when unset.
    pub fn active(&self) -> NodeSet {
        self.active
            .clone()
            .unwrap_or_else(|| NodeSet::full(self.num_nodes()))
    }

    pub fn set_active(&mut self, x: Option<NodeSet>) {
        self.active = x;
    }

    pub fn union_of_bags<I: IntoIterator<Item = usize>>(&self, nodes: I) -> VertexSet {
        let mut s = VertexSet::new();
        for t in nodes {
            s.union_with(&self.bags[t]);
        }
        s
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.union_of_bags(0..self.num_nodes())
    }

    /// Index of the first node whose bag contains `s`.
    pub fn node_containing(&self, s: &VertexSet) -> Option<usize> {
        self.bags.iter().position(|b| s.is_subset(b))
    }

    /// Nodes of `T_{t,Y}`: `t` and everything reachable from it through `y`.
    pub fn subtree_nodes(&self, t: usize, y: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.num_nodes()];
        seen[t] = true;
        let mut order = vec![t];
        let mut queue = VecDeque::new();
        for &n in y {
            debug_assert!(
                self.adjacency[t].contains(&n),
                "{n} is not a neighbour of {t}"
            );
            if !seen[n] {
                seen[n] = true;
                order.push(n);
                queue.push_back(n);
            }
        }
        while let Some(a) = queue.pop_front() {
            for &b in &self.adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    order.push(b);
                    queue.push_back(b);
                }
            }
        }
        order
    }

    fn induced_on(&self, nodes: &[usize]) -> (TreeDecomposition, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.num_nodes()];
        for (i, &t) in nodes.iter().enumerate() {
            new_id[t] = i;
        }
        let bags = nodes.iter().map(|&t| self.bags[t].clone()).collect();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (i, &t) in nodes.iter().enumerate() {
            for &n in &self.adjacency[t] {
                if new_id[n] != usize::MAX {
                    adjacency[i].push(new_id[n]);
                }
            }
        }
        let active = self.active.as_ref().map(|x| {
            nodes
                .iter()
                .enumerate()
                .filter(|(_, &t)| x.contains(t))
                .map(|(i, _)| i)
                .collect()
        });
        let td = TreeDecomposition {
            bags,
            adjacency,
            covers: None,
            active,
        };
        (td, nodes.to_vec())
    }

    /// `(T_{t,Y}, B_{t,Y})` with active set `X ∩ V(T_{t,Y})`. Node 0 is `t`.
    pub fn subtree_restrict(&self, t: usize, y: &[usize]) -> Subtree {
        let nodes = self.subtree_nodes(t, y);
        let (td, origin) = self.induced_on(&nodes);
        Subtree {
            td,
            origin,
            extra: None,
        }
    }

    /// `(T⁺_{t,Y}, B⁺_{t,Y})`: the restriction plus a new inactive leaf next to
    /// `t` whose bag is the union of every bag that was cut away.
    pub fn subtree_extend(&self, t: usize, y: &[usize]) -> Subtree {
        let nodes = self.subtree_nodes(t, y);
        let (mut td, origin) = self.induced_on(&nodes);
        let mut kept = vec![false; self.num_nodes()];
        for &n in &nodes {
            kept[n] = true;
        }
        let rest = self.union_of_bags((0..self.num_nodes()).filter(|&n| !kept[n]));
        let r = td.bags.len();
        let active = td.active.take().unwrap_or_else(|| NodeSet::full(r));
        td.bags.push(rest);
        td.adjacency.push(vec![0]);
        td.adjacency[0].push(r);
        td.active = Some(active);
        Subtree {
            td,
            origin,
            extra: Some(r),
        }
    }

    /// `B^{-W}`: every bag minus `w`.
    pub fn remove_vertices(&self, w: &VertexSet) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.bags.iter().map(|b| b.difference(w)).collect(),
            adjacency: self.adjacency.clone(),
            covers: None,
            active: self.active.clone(),
        }
    }

    /// Every bag intersected with `u`.
    pub fn restrict_bags(&self, u: &VertexSet) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.bags.iter().map(|b| b.intersection(u)).collect(),
            adjacency: self.adjacency.clone(),
            covers: None,
            active: self.active.clone(),
        }
    }

    pub fn add_vertex_to_all_bags(&self, v: usize) -> TreeDecomposition {
        let mut td = self.clone();
        for b in &mut td.bags {
            b.insert(v);
        }
        td.covers = None;
        td
    }

    /// New root with `root_bag`; each child tree hangs off its attach node.
    /// Child node ids are shifted past the nodes already placed.
    pub fn glue(
        root_bag: VertexSet,
        children: Vec<(TreeDecomposition, usize)>,
    ) -> TreeDecomposition {
        let mut td = TreeDecomposition::single(root_bag);
        for (child, attach) in children {
            let off = td.bags.len();
            td.bags.extend(child.bags);
            for ns in child.adjacency {
                td.adjacency.push(ns.into_iter().map(|n| n + off).collect());
            }
            td.adjacency[0].push(attach + off);
            td.adjacency[attach + off].push(0);
        }
        td
    }

    /// Appends a leaf with `bag` next to `parent`; returns its id.
    pub fn add_leaf(&mut self, parent: usize, bag: VertexSet) -> usize {
        let id = self.bags.len();
        self.bags.push(bag);
        self.adjacency.push(vec![parent]);
        self.adjacency[parent].push(id);
        if let Some(c) = &mut self.covers {
            c.push(Vec::new());
        }
        id
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The tree edge closing a cycle.
    Cycle(usize, usize),
    /// Node count of each piece when the tree is disconnected.
    Disconnected(Vec<usize>),
    UncoveredEdge {
        edge: usize,
    },
    DisconnectedVertex {
        vertex: usize,
    },
    UnknownVertex {
        node: usize,
        vertex: usize,
    },
    InactiveNotLeaf {
        node: usize,
    },
    BadCover {
        node: usize,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks tree shape, edge containment, vertex connectedness, the
/// inactive-leaf rule and any attached covers.
pub fn validate(h: &Hypergraph, td: &TreeDecomposition) -> ValidationReport {
    let mut violations = Vec::new();
    let n = td.num_nodes();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in td.tree_edges() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            violations.push(Violation::Cycle(a, b));
        } else {
            parent[ra] = rb;
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for t in 0..n {
        *sizes.entry(find(&mut parent, t)).or_insert(0usize) += 1;
    }
    if sizes.len() > 1 {
        violations.push(Violation::Disconnected(sizes.into_values().collect()));
    }

    for (t, bag) in td.bags().iter().enumerate() {
        for v in &bag.difference(h.vertices()) {
            violations.push(Violation::UnknownVertex { node: t, vertex: v });
        }
    }

    for (i, e) in h.edges().iter().enumerate() {
        if !td.bags().iter().any(|b| e.is_subset(b)) {
            violations.push(Violation::UncoveredEdge { edge: i });
        }
    }

    for v in &td.all_vertices() {
        let holders: Vec<usize> = (0..n).filter(|&t| td.bag(t).contains(v)).collect();
        let mut seen = NodeSet::singleton(holders[0]);
        let mut queue = VecDeque::from([holders[0]]);
        while let Some(a) = queue.pop_front() {
            for &b in td.neighbors(a) {
                if td.bag(b).contains(v) && seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        if seen.len() != holders.len() {
            violations.push(Violation::DisconnectedVertex { vertex: v });
        }
    }

    if let Some(x) = &td.active {
        for t in 0..n {
            if !x.contains(t) && td.neighbors(t).len() > 1 {
                violations.push(Violation::InactiveNotLeaf { node: t });
            }
        }
    }

    if let Some(covers) = td.covers() {
        for (t, c) in covers.iter().enumerate() {
            if c.iter().any(|&e| e >= h.num_edges()) || !td.bag(t).is_subset(&h.union_of_edges(c)) {
                violations.push(Violation::BadCover { node: t });
            }
        }
    }

    ValidationReport { violations }
}

/// Largest edge cover number over the nodes in `x` (all nodes when `None`).
/// Stores a minimum cover of every bag in `td`.
pub fn ghw_of(h: &Hypergraph, td: &mut TreeDecomposition, x: Option<&NodeSet>) -> usize {
    let cap = h.num_edges();
    let covers: Vec<Vec<usize>> = td
        .bags()
        .iter()
        .map(|b| {
            min_edge_cover(h, b, cap)
                .expect("bag vertices must belong to the hypergraph")
                .edges
        })
        .collect();
    let width = covers
        .iter()
        .enumerate()
        .filter(|(t, _)| x.is_none_or(|x| x.contains(*t)))
        .map(|(_, c)| c.len())
        .max()
        .unwrap_or(0);
    td.covers = Some(covers);
    width
}
