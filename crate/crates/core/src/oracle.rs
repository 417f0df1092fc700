//! Brute-force reference answers for small instances.
//!
//! Everything here works on `u32`/`u64` masks over a local vertex numbering
//! and shares no search code with the rest of the crate.

use std::collections::HashMap;

use itertools::Itertools;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_k: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 16,
            max_edges: 24,
            max_k: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the oracle: {what} = {value} exceeds {limit}")]
    BudgetExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

fn check(what: &'static str, value: usize, limit: usize) -> Result<(), OracleError> {
    if value > limit {
        Err(OracleError::BudgetExceeded { what, value, limit })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhwBound {
    Exact(usize),
    GreaterThan(usize),
}

struct Local {
    verts: Vec<usize>,
    edges: Vec<u64>,
}

impl Local {
    fn new(h: &Hypergraph) -> Self {
        let verts: Vec<usize> = h.vertices().iter().collect();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = h
            .edges()
            .iter()
            .map(|e| e.iter().fold(0u64, |m, v| m | 1 << pos[&v]))
            .collect();
        Local { verts, edges }
    }

    fn mask(&self, s: &VertexSet) -> u64 {
        self.verts
            .iter()
            .enumerate()
            .filter(|(_, &v)| s.contains(v))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    fn unmask(&self, m: u64) -> VertexSet {
        (0..self.verts.len())
            .filter(|i| m >> i & 1 == 1)
            .map(|i| self.verts[i])
            .collect()
    }

    /// Inclusion-maximal unions of exactly `j` edges (fewer if there are
    /// fewer edges), for `j = 0..=k`.
    fn unions(&self, k: usize) -> Vec<Vec<(u64, Vec<usize>)>> {
        (0..=k)
            .map(|j| {
                let j = j.min(self.edges.len());
                let mut out: Vec<(u64, Vec<usize>)> = Vec::new();
                for c in (0..self.edges.len()).combinations(j) {
                    let u = c.iter().fold(0u64, |m, &e| m | self.edges[e]);
                    if !out.iter().any(|(o, _)| u & !o == 0) {
                        out.retain(|(o, _)| o & !u != 0);
                        out.push((u, c));
                    }
                }
                out
            })
            .collect()
    }
}

/// Exact `ghw(h)` if it is at most `k_max`.
///
/// Minimizes the widest elimination bag over all vertex orderings by dynamic
/// programming over the set of already eliminated vertices.
pub fn exact_ghw(
    h: &Hypergraph,
    k_max: usize,
    budget: &OracleBudget,
) -> Result<GhwBound, OracleError> {
    check("vertices", h.num_vertices(), budget.max_vertices)?;
    check("edges", h.num_edges(), budget.max_edges)?;
    check("k_max", k_max, budget.max_k)?;
    let loc = Local::new(h);
    let n = loc.verts.len();
    if n == 0 {
        return Ok(GhwBound::Exact(0));
    }
    let unions = loc.unions(k_max);
    let mut rho_memo: HashMap<u64, usize> = HashMap::new();
    let mut rho = |s: u64| -> usize {
        *rho_memo.entry(s).or_insert_with(|| {
            (0..=k_max)
                .find(|&j| unions[j].iter().any(|(u, _)| s & !u == 0))
                .unwrap_or(k_max + 1)
        })
    };
    let mut nbr = vec![0u64; n];
    for &e in &loc.edges {
        for (v, m) in nbr.iter_mut().enumerate() {
            if e >> v & 1 == 1 {
                *m |= e;
            }
        }
    }
    for (v, m) in nbr.iter_mut().enumerate() {
        *m &= !(1 << v);
    }
    // vertices outside `gone ∪ {v}` reachable from v through `gone`
    let boundary = |gone: u64, v: usize| -> u64 {
        let mut inside = 1u64 << v;
        let mut frontier = 1u64 << v;
        let mut out = 0u64;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let ns = nbr[x] & !inside;
            out |= ns & !gone;
            let through = ns & gone;
            inside |= through;
            frontier |= through;
        }
        out
    };
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut dp = vec![usize::MAX; 1 << n];
    dp[0] = 0;
    for s in 1..=full {
        let mut best = usize::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let before = dp[prev as usize];
            if before >= best {
                continue;
            }
            let bag = boundary(prev, v) | 1 << v;
            best = best.min(before.max(rho(bag)));
        }
        dp[s as usize] = best;
    }
    let w = dp[full as usize];
    Ok(if w > k_max {
        GhwBound::GreaterThan(k_max)
    } else {
        GhwBound::Exact(w)
    })
}

/// GYO reduction: strip vertices lying in a single edge and edges contained
/// in another; acyclic iff no vertex survives.
pub fn gyo_acyclic(h: &Hypergraph) -> bool {
    let mut edges: Vec<VertexSet> = h.edges().to_vec();
    let mut alive = vec![true; edges.len()];
    loop {
        let mut changed = false;
        for v in &h.vertices().clone() {
            let holders: Vec<usize> = (0..edges.len())
                .filter(|&i| alive[i] && edges[i].contains(v))
                .collect();
            if holders.len() == 1 {
                edges[holders[0]].remove(v);
                changed = true;
            }
        }
        for i in 0..edges.len() {
            if !alive[i] {
                continue;
            }
            let swallowed =
                (0..edges.len()).any(|j| j != i && alive[j] && edges[i].is_subset(&edges[j]));
            if swallowed {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..edges.len()).all(|i| !alive[i] || edges[i].is_empty())
}

/// Whether removing `s` leaves no path from `a` to `b`, by union-find over
/// the surviving parts of the edges.
fn separates(loc: &Local, a: u64, b: u64, s: u64) -> bool {
    let (a, b) = (a & !s, b & !s);
    if a == 0 || b == 0 {
        return true;
    }
    let mut reach = a;
    loop {
        let grown = loc
            .edges
            .iter()
            .filter(|&&e| e & !s & reach != 0)
            .fold(reach, |m, &e| m | (e & !s));
        if grown == reach {
            return reach & b == 0;
        }
        reach = grown;
    }
}

/// A separator `S ⊆ restrict_to` of `a` and `b` with `ρ(S) <= k0`, with a
/// witnessing cover, or `None` if there is none.
pub fn exact_min_separator(
    h: &Hypergraph,
    a: &VertexSet,
    b: &VertexSet,
    restrict_to: &VertexSet,
    k0: usize,
    budget: &OracleBudget,
) -> Result<Option<(VertexSet, Vec<usize>)>, OracleError> {
    check("vertices", h.num_vertices(), 64)?;
    check("edges", h.num_edges(), budget.max_edges)?;
    check("k0", k0, budget.max_k)?;
    let loc = Local::new(h);
    let (am, bm, rm) = (loc.mask(a), loc.mask(b), loc.mask(restrict_to));
    for j in 0..=k0.min(loc.edges.len()) {
        for c in (0..loc.edges.len()).combinations(j) {
            let s = c.iter().fold(0u64, |m, &e| m | loc.edges[e]) & rm;
            if separates(&loc, am, bm, s) {
                return Ok(Some((loc.unmask(s), c)));
            }
        }
    }
    Ok(None)
}

/// Every `W ⊆ u` with `ρ(W) <= k0`, each with a cover of at most `k0` edges.
pub fn enumerate_small_covered_subsets(
    h: &Hypergraph,
    u: &VertexSet,
    k0: usize,
    budget: &OracleBudget,
) -> Result<Vec<(VertexSet, Vec<usize>)>, OracleError> {
    check("subset vertices", u.len(), 14)?;
    check("edges", h.num_edges(), budget.max_edges)?;
    check("k0", k0, budget.max_k)?;
    let uv: Vec<usize> = u.iter().collect();
    let traces: Vec<(u32, Vec<usize>)> = {
        let mut out: Vec<(u32, Vec<usize>)> = Vec::new();
        let j = k0.min(h.num_edges());
        for c in (0..h.num_edges()).combinations(j) {
            let t = uv
                .iter()
                .enumerate()
                .filter(|(_, &v)| c.iter().any(|&e| h.edge(e).contains(v)))
                .fold(0u32, |m, (i, _)| m | 1 << i);
            if !out.iter().any(|(o, _)| t & !o == 0) {
                out.retain(|(o, _)| o & !t != 0);
                out.push((t, c));
            }
        }
        out
    };
    let mut result = Vec::new();
    for w in 0u32..(1 << uv.len()) {
        if let Some((_, c)) = traces.iter().find(|(t, _)| w & !t == 0) {
            let set = (0..uv.len())
                .filter(|i| w >> i & 1 == 1)
                .map(|i| uv[i])
                .collect();
            let mut cover = c.clone();
            // keep only edges actually needed for w
            cover.retain(|&e| {
                uv.iter()
                    .enumerate()
                    .any(|(i, &v)| w >> i & 1 == 1 && h.edge(e).contains(v))
            });
            result.push((set, cover));
        }
    }
    Ok(result)
}

/// A shyg found by searching subedges drawn from whole edges and the parts
/// of edges outside all other edges. `None` does not rule out shygs built
/// from other subedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shyg {
    pub us: Vec<VertexSet>,
    pub ss: Vec<VertexSet>,
}

pub fn find_shyg_bruteforce(
    h: &Hypergraph,
    a: usize,
    b: usize,
) -> Result<Option<Shyg>, OracleError> {
    const NODE_LIMIT: usize = 2_000_000;
    check("edges", h.num_edges(), 512)?;
    let mut cands: Vec<VertexSet> = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        let mut private = e.clone();
        for (j, f) in h.edges().iter().enumerate() {
            if i != j {
                private.difference_with(f);
            }
        }
        for c in [e.clone(), private] {
            if !c.is_empty() && !cands.contains(&c) {
                cands.push(c);
            }
        }
    }
    cands.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
    let mut search = ShygSearch {
        h,
        cands,
        a,
        b,
        nodes: 0,
        limit: NODE_LIMIT,
    };
    let mut us = Vec::new();
    match search.pick_us(0, &mut us) {
        Ok(found) => Ok(found.map(|(u, s)| Shyg {
            us: u.iter().map(|&i| search.cands[i].clone()).collect(),
            ss: s.iter().map(|&i| search.cands[i].clone()).collect(),
        })),
        Err(Exhausted) => Err(OracleError::BudgetExceeded {
            what: "search nodes",
            value: search.nodes,
            limit: NODE_LIMIT,
        }),
    }
}

struct Exhausted;

type ShygPick = Option<(Vec<usize>, Vec<usize>)>;

struct ShygSearch<'a> {
    h: &'a Hypergraph,
    cands: Vec<VertexSet>,
    a: usize,
    b: usize,
    nodes: usize,
    limit: usize,
}

impl ShygSearch<'_> {
    fn incompatible(&self, x: usize, y: usize) -> bool {
        let u = self.cands[x].union(&self.cands[y]);
        !self.h.edges().iter().any(|e| u.is_subset(e))
    }

    /// Pairwise disjoint, pairwise incompatible `U` candidates.
    fn pick_us(&mut self, from: usize, us: &mut Vec<usize>) -> Result<ShygPick, Exhausted> {
        if us.len() == self.a {
            return Ok(self.pick_ss(us).map(|ss| (us.clone(), ss)));
        }
        for i in from..self.cands.len() {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Exhausted);
            }
            let ok = us
                .iter()
                .all(|&j| !self.cands[i].intersects(&self.cands[j]) && self.incompatible(i, j));
            if !ok {
                continue;
            }
            us.push(i);
            let r = self.pick_us(i + 1, us)?;
            us.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }

    /// `b` pairwise incompatible candidates, each meeting every chosen `U`.
    fn pick_ss(&self, chosen: &[usize]) -> Option<Vec<usize>> {
        let pool: Vec<usize> = (0..self.cands.len())
            .filter(|i| !chosen.contains(i))
            .filter(|&i| {
                chosen
                    .iter()
                    .all(|&j| self.cands[i].intersects(&self.cands[j]) && self.incompatible(i, j))
            })
            .collect();
        let mut ss = Vec::new();
        let mut budget = self.limit;
        self.grow(&pool, 0, &mut ss, &mut budget).then_some(ss)
    }

    fn grow(&self, pool: &[usize], from: usize, ss: &mut Vec<usize>, budget: &mut usize) -> bool {
        if ss.len() == self.b {
            return true;
        }
        if pool.len() - from < self.b - ss.len() || *budget == 0 {
            return false;
        }
        for k in from..pool.len() {
            *budget = budget.saturating_sub(1);
            if ss.iter().all(|&s| self.incompatible(s, pool[k])) {
                ss.push(pool[k]);
                if self.grow(pool, k + 1, ss, budget) {
                    return true;
                }
                ss.pop();
            }
            if *budget == 0 {
                return false;
            }
        }
        false
    }
}

/// Minimum cover size and every cover of that size.
pub type MinCovers = (usize, Vec<Vec<usize>>);

/// Minimum cover size of `u` and every cover of that size, by enumerating
/// edge subsets in order of size.
pub fn exhaustive_min_covers(
    h: &Hypergraph,
    u: &VertexSet,
    budget: &OracleBudget,
) -> Result<Option<MinCovers>, OracleError> {
    check("edges", h.num_edges(), budget.max_edges)?;
    for j in 0..=h.num_edges() {
        let covers: Vec<Vec<usize>> = (0..h.num_edges())
            .combinations(j)
            .filter(|c| u.is_subset(&h.union_of_edges(c)))
            .collect();
        if !covers.is_empty() {
            return Ok(Some((j, covers)));
        }
    }
    Ok(None)
}
