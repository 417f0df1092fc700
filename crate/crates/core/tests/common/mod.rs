#![allow(dead_code)]

use ghw_core::decomposition::TreeDecomposition;
use ghw_core::{Hypergraph, NodeSet, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Decomposition from a random elimination ordering of the primal graph.
pub fn random_td<R: Rng>(h: &Hypergraph, rng: &mut R) -> TreeDecomposition {
    let mut order: Vec<usize> = h.vertices().iter().collect();
    if order.is_empty() {
        return TreeDecomposition::single(VertexSet::new());
    }
    order.shuffle(rng);
    let n = h.universe_size();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nbrs: Vec<VertexSet> = vec![VertexSet::new(); n];
    for e in h.edges() {
        for v in e {
            nbrs[v].union_with(e);
        }
    }
    let mut bags = Vec::with_capacity(order.len());
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = nbrs[v].iter().filter(|&u| u != v && pos[u] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    nbrs[a].insert(b);
                }
            }
        }
        let mut bag: VertexSet = later.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        match later.iter().map(|&u| pos[u]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, &edges)
}

/// All nodes except a random selection of leaves, keeping at least `min` nodes.
pub fn random_active<R: Rng>(td: &TreeDecomposition, min: usize, rng: &mut R) -> NodeSet {
    let mut x: NodeSet = (0..td.num_nodes()).collect();
    let leaves: Vec<usize> = (0..td.num_nodes())
        .filter(|&t| td.neighbors(t).len() == 1)
        .collect();
    for t in leaves {
        if x.len() > min && rng.random_bool(0.3) {
            // dropping a leaf keeps T[X] connected unless its neighbour is gone too
            let nb = td.neighbors(t)[0];
            if x.contains(nb) {
                x.remove(t);
            }
        }
    }
    x
}

pub fn random_subset<R: Rng>(s: &VertexSet, p: f64, rng: &mut R) -> VertexSet {
    s.iter().filter(|_| rng.random_bool(p)).collect()
}

/// Random tree on `n` nodes as an adjacency list.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for v in 1..n {
        let p = rng.random_range(0..v);
        adj[v].push(p);
        adj[p].push(v);
    }
    adj
}

/// Chain of `n - 1` two-vertex edges.
pub fn path(n: usize) -> Hypergraph {
    Hypergraph::from_named_edges((0..n - 1).map(|i| {
        (
            format!("e{i:03}"),
            vec![format!("v{i:03}"), format!("v{:03}", i + 1)],
        )
    }))
    .unwrap()
}

pub fn cycle(n: usize) -> Hypergraph {
    Hypergraph::from_named_edges((0..n).map(|i| {
        (
            format!("e{i:03}"),
            vec![format!("c{i:03}"), format!("c{:03}", (i + 1) % n)],
        )
    }))
    .unwrap()
}

pub fn grid(s: usize) -> Hypergraph {
    let v = |i: usize, j: usize| format!("v{i:02}_{j:02}");
    let mut e = Vec::new();
    for i in 0..s {
        for j in 0..s {
            if i + 1 < s {
                e.push((format!("h{i:02}_{j:02}"), vec![v(i, j), v(i + 1, j)]));
            }
            if j + 1 < s {
                e.push((format!("w{i:02}_{j:02}"), vec![v(i, j), v(i, j + 1)]));
            }
        }
    }
    Hypergraph::from_named_edges(e).unwrap()
}
