//! Exact minimum edge covers by branch and bound.

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCover {
    pub target: VertexSet,
    /// Edge ids of the hypergraph the cover was computed in, ascending.
    pub edges: Vec<usize>,
}

impl EdgeCover {
    pub fn weight(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("edge cover number exceeds {0}")]
pub struct Exceeds(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("cover number of the whole hypergraph is below the requested size")]
    Impossible,
    #[error("cover number of the start set already exceeds the requested size")]
    StartTooLarge,
}

/// A minimum cover of `u` using at most `budget` edges of `h`.
///
/// Edges meeting `u` in more than `budget * d` vertices are forced, where `d`
/// is the largest pairwise intersection of `h`: the other edges of any cover
/// within budget could only cover `budget * d` of their vertices.
pub fn min_edge_cover(h: &Hypergraph, u: &VertexSet, budget: usize) -> Result<EdgeCover, Exceeds> {
    if !u.is_subset(h.vertices()) {
        return Err(Exceeds(budget));
    }
    let d = h.max_pairwise_intersection();
    let limit = budget.saturating_mul(d);
    let forced: Vec<usize> = (0..h.num_edges())
        .filter(|&e| h.edge(e).intersection_len(u) > limit)
        .collect();
    if forced.len() > budget {
        return Err(Exceeds(budget));
    }
    let mut rest = u.clone();
    for &e in &forced {
        rest.difference_with(h.edge(e));
    }
    let mut search = Search {
        h,
        best: None,
        best_len: budget - forced.len() + 1,
        chosen: Vec::new(),
    };
    search.run(&rest);
    match search.best {
        Some(extra) => {
            let mut edges = forced;
            edges.extend(extra);
            edges.sort_unstable();
            Ok(EdgeCover {
                target: u.clone(),
                edges,
            })
        }
        None => Err(Exceeds(budget)),
    }
}

struct Search<'a> {
    h: &'a Hypergraph,
    best: Option<Vec<usize>>,
    best_len: usize,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, rest: &VertexSet) {
        if rest.is_empty() {
            self.best_len = self.chosen.len();
            self.best = Some(self.chosen.clone());
            return;
        }
        if self.chosen.len() + 1 >= self.best_len {
            return;
        }
        // branch on the uncovered vertex with fewest incident edges
        let v = rest
            .iter()
            .min_by_key(|&v| self.h.incident(v).len())
            .expect("non-empty");
        let mut cands: Vec<(usize, usize, VertexSet)> = self
            .h
            .incident(v)
            .iter()
            .map(|&e| {
                let c = self.h.edge(e).intersection(rest);
                (c.len(), e, c)
            })
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let max_gain = rest
            .iter()
            .flat_map(|w| self.h.incident(w).iter())
            .map(|&e| self.h.edge(e).intersection_len(rest))
            .max()
            .unwrap_or(1);
        let lower = rest.len().div_ceil(max_gain);
        if self.chosen.len() + lower >= self.best_len {
            return;
        }
        for i in 0..cands.len() {
            // an earlier candidate covering a superset of the remainder dominates
            if cands[..i].iter().any(|c| cands[i].2.is_subset(&c.2)) {
                continue;
            }
            if self.chosen.len() + 1 >= self.best_len {
                return;
            }
            self.chosen.push(cands[i].1);
            let next = rest.difference(&cands[i].2);
            self.run(&next);
            self.chosen.pop();
        }
    }
}

/// Edge cover number of `u`, or `Exceeds(cap)`.
pub fn rho(h: &Hypergraph, u: &VertexSet, cap: usize) -> Result<usize, Exceeds> {
    min_edge_cover(h, u, cap).map(|c| c.weight())
}

/// Whether `edges` is a minimum cover of its own union.
pub fn is_rho_stable(h: &Hypergraph, edges: &[usize]) -> bool {
    let mut ids = edges.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != edges.len() {
        return false;
    }
    let union = h.union_of_edges(edges);
    match edges.len().checked_sub(1) {
        None => true,
        Some(smaller) => min_edge_cover(h, &union, smaller).is_err(),
    }
}

/// Grows `w` until its minimum cover has exactly `m` edges.
///
/// Adds the smallest vertex outside the current cover's union, one at a time.
/// Returns the grown set and its cover, which is rho-stable.
pub fn rho_stable_extend(
    h: &Hypergraph,
    w: &VertexSet,
    m: usize,
) -> Result<(VertexSet, EdgeCover), ExtendError> {
    let mut w = w.clone();
    loop {
        let cover = min_edge_cover(h, &w, m).map_err(|_| ExtendError::StartTooLarge)?;
        if cover.weight() == m {
            return Ok((w, cover));
        }
        let covered = h.union_of_edges(&cover.edges);
        match h.vertices().difference(&covered).first() {
            Some(v) => {
                w.insert(v);
            }
            None => return Err(ExtendError::Impossible),
        }
    }
}
