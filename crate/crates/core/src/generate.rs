//! Random (2,d)-hypergraphs and a fixed instance that triggers the shyg reject.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("d must be at least 1")]
    InvalidD,
    #[error("n and m must be at least 1")]
    InvalidSize,
    #[error("could not place {m} distinct edges on {n} vertices with d = {d}")]
    Infeasible { n: usize, m: usize, d: usize },
    #[error("no shyg instance for k = {k}, d = {d}")]
    Unsupported { k: usize, d: usize },
}

const ATTEMPTS_PER_EDGE: usize = 1000;

/// Random hypergraph on `n` vertices with `m` distinct edges any two of
/// which share at most `d` vertices. Edge sizes are drawn from
/// `1..=min(n, 2d + 2)`. Deterministic in `seed`.
pub fn gen_2d_hypergraph(n: usize, m: usize, d: usize, seed: u64) -> Result<Hypergraph, GenError> {
    gen_2d_hypergraph_sized(n, m, d, 2 * d + 2, seed)
}

/// Like [`gen_2d_hypergraph`] with sampled edge sizes capped at `max_size`.
/// Vertices left uncovered are then added to random edges, which can push an
/// edge past the cap but never raises a pairwise intersection.
pub fn gen_2d_hypergraph_sized(
    n: usize,
    m: usize,
    d: usize,
    max_size: usize,
    seed: u64,
) -> Result<Hypergraph, GenError> {
    if d == 0 {
        return Err(GenError::InvalidD);
    }
    if n == 0 || m == 0 || max_size == 0 {
        return Err(GenError::InvalidSize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = n.min(max_size);
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m);
    for _ in 0..m {
        let mut placed = false;
        for _ in 0..ATTEMPTS_PER_EDGE {
            let size = rng.random_range(1..=top);
            let mut e = sample(&mut rng, n, size).into_vec();
            e.sort_unstable();
            let ok = edges.iter().all(|f| f != &e && isect(f, &e) <= d);
            if ok {
                edges.push(e);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(GenError::Infeasible { n, m, d });
        }
    }
    let mut covered = vec![false; n];
    for e in &edges {
        for &v in e {
            covered[v] = true;
        }
    }
    for (v, &c) in covered.iter().enumerate() {
        if !c {
            let i = rng.random_range(0..m);
            edges[i].push(v);
            edges[i].sort_unstable();
        }
    }

    let vw = digits(n);
    let ew = digits(m);
    let named = edges.iter().enumerate().map(|(i, e)| {
        (
            format!("e{:0ew$}", i + 1),
            e.iter()
                .map(|v| format!("v{:0vw$}", v + 1))
                .collect::<Vec<_>>(),
        )
    });
    let h = Hypergraph::from_named_edges(named)
        .expect("generated edges are nonempty and uniquely named");
    debug_assert!(h.max_pairwise_intersection() <= d);
    Ok(h)
}

fn isect(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|v| b.binary_search(v).is_ok()).count()
}

fn digits(n: usize) -> usize {
    n.to_string().len().max(2)
}

const SHYG_PRIME: usize = 11;
const SHYG_BIG: usize = 5;
const SHYG_SMALL: usize = 82;

/// Five disjoint edges `B0..B4` of 11 vertices each plus 82 edges that each
/// pick one vertex from every `Bi`. The picks follow the lines
/// `i -> a*i + b (mod 11)`, so two small edges share at most one vertex.
/// Only `k = d = 1` is supported.
pub fn gen_shyg_instance(k: usize, d: usize) -> Result<Hypergraph, GenError> {
    if (k, d) != (1, 1) {
        return Err(GenError::Unsupported { k, d });
    }
    let name = |i: usize, x: usize| format!("u{i}_{x:02}");
    let mut edges: Vec<(String, Vec<String>)> = Vec::new();
    for i in 0..SHYG_BIG {
        edges.push((
            format!("B{i}"),
            (0..SHYG_PRIME).map(|x| name(i, x)).collect(),
        ));
    }
    let lines = (0..SHYG_PRIME).flat_map(|a| (0..SHYG_PRIME).map(move |b| (a, b)));
    for (j, (a, b)) in lines.take(SHYG_SMALL).enumerate() {
        let verts = (0..SHYG_BIG)
            .map(|i| name(i, (a * i + b) % SHYG_PRIME))
            .collect();
        edges.push((format!("S{j:03}"), verts));
    }
    let h =
        Hypergraph::from_named_edges(edges).expect("shyg edges are nonempty and uniquely named");
    assert!(h.max_pairwise_intersection() <= 1);
    Ok(h)
}
