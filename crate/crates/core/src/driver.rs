//! Iterative compression: add vertices one at a time and compress whenever
//! the maintained decomposition gets one too wide.

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::compress::{CompressReject, CompressStats, Compressor};
use crate::cover::min_edge_cover;
use crate::decomposition::{ghw_of, validate, TreeDecomposition};
use crate::gap_cover::{alpha, ShygRejectCertificate};
use crate::hypergraph::Hypergraph;
use crate::separator::SepStats;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("d must be at least 1")]
    ZeroD,
    #[error("two edges share {actual} vertices but d = {declared}")]
    IntersectionTooLarge { declared: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectKind {
    ShygTriggered(Box<ShygRejectCertificate>),
    SeparatorExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Decomposition of the input with covers attached.
    Accepted(TreeDecomposition),
    Rejected(RejectKind),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DriverStats {
    pub k: usize,
    pub d: usize,
    pub alpha: usize,
    /// Width after each iteration.
    pub widths: Vec<usize>,
    pub compress_invocations: usize,
    pub compress: CompressStats,
    pub separator: SepStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriverResult {
    pub outcome: Outcome,
    pub stats: DriverStats,
}

impl DriverResult {
    pub fn accepted(&self) -> Option<&TreeDecomposition> {
        match &self.outcome {
            Outcome::Accepted(td) => Some(td),
            Outcome::Rejected(_) => None,
        }
    }
}

/// Returns a decomposition of `h` of width at most `4 α(k, d)`, or rejects,
/// which means `ghw(h) > k`. Without `d` the largest pairwise edge
/// intersection (at least 1) is used.
pub fn approx_ghw(h: &Hypergraph, k: usize, d: Option<usize>) -> Result<DriverResult, DriverError> {
    if k == 0 {
        return Err(DriverError::ZeroK);
    }
    let actual = h.max_pairwise_intersection();
    let d = match d {
        Some(0) => return Err(DriverError::ZeroD),
        Some(d) if d < actual => {
            return Err(DriverError::IntersectionTooLarge {
                declared: d,
                actual,
            })
        }
        Some(d) => d,
        None => actual.max(1),
    };
    let a = alpha(k, d);
    let mut stats = DriverStats {
        k,
        d,
        alpha: a,
        ..Default::default()
    };
    let checks = crate::invariant_checks_enabled();

    let order: Vec<usize> = h.vertices().iter().collect();
    let Some(&first) = order.first() else {
        let mut td = TreeDecomposition::single(VertexSet::new());
        ghw_of(h, &mut td, None);
        return Ok(DriverResult {
            outcome: Outcome::Accepted(td),
            stats,
        });
    };

    // covers are kept as original edge ids so they survive re-restriction
    let root_edge_of = |hi: &Hypergraph, e: usize| hi.provenance(e)[0];
    let mut verts = VertexSet::singleton(first);
    let mut td = TreeDecomposition::single(verts.clone());
    let mut covers: Vec<Vec<usize>> = vec![vec![h.provenance(h.incident(first)[0])[0]]];
    stats.widths.push(1);
    let mut compressor = Compressor::new(k, d);

    for &v in &order[1..] {
        verts.insert(v);
        let hi = h.induced(&verts);
        td = td.add_vertex_to_all_bags(v);
        for (t, cover) in covers.iter_mut().enumerate() {
            if cover.iter().any(|&r| h.root_edge(r).contains(v)) {
                continue;
            }
            *cover = match min_edge_cover(&hi, td.bag(t), cover.len()) {
                Ok(c) => c.edges.iter().map(|&e| root_edge_of(&hi, e)).collect(),
                Err(_) => {
                    let mut c = cover.clone();
                    c.push(root_edge_of(&hi, hi.incident(v)[0]));
                    c
                }
            };
        }
        let mut width = covers.iter().map(Vec::len).max().unwrap_or(0);
        if width > 4 * a {
            assert_eq!(width, 4 * a + 1, "width jumped past 4α + 1 in one step");
            stats.compress_invocations += 1;
            match compressor.compress(&hi, &td, &VertexSet::new()) {
                Ok(out) => td = out,
                Err(rej) => {
                    stats.compress = compressor.stats().clone();
                    stats.separator = compressor.separator_stats().clone();
                    let kind = match rej {
                        CompressReject::ShygTriggered(c) => RejectKind::ShygTriggered(c),
                        CompressReject::NoBalancedPartition => RejectKind::SeparatorExhausted,
                    };
                    return Ok(DriverResult {
                        outcome: Outcome::Rejected(kind),
                        stats,
                    });
                }
            }
            covers = td
                .bags()
                .iter()
                .map(|b| {
                    let c = min_edge_cover(&hi, b, 4 * a).expect("compressed bag wider than 4α");
                    c.edges.iter().map(|&e| root_edge_of(&hi, e)).collect()
                })
                .collect();
            width = covers.iter().map(Vec::len).max().unwrap_or(0);
        }
        stats.widths.push(width);
        if checks {
            let rep = validate(&hi, &td);
            assert!(
                rep.is_valid(),
                "iteration produced an invalid decomposition: {rep:?}"
            );
        }
    }

    let width = ghw_of(h, &mut td, None);
    debug_assert!(width <= 4 * a);
    stats.compress = compressor.stats().clone();
    stats.separator = compressor.separator_stats().clone();
    Ok(DriverResult {
        outcome: Outcome::Accepted(td),
        stats,
    })
}
