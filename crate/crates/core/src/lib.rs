//! Approximating generalized hypertree width on hypergraphs whose edges
//! pairwise share at most `d` vertices.
//!
//! [`driver::approx_ghw`] either returns a tree decomposition of width at
//! most `4 α(k, d)` or rejects, in which case the width exceeds `k`.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::OnceLock;

pub mod bitset;
pub mod compress;
pub mod cover;
pub mod decomposition;
pub mod driver;
pub mod gap_cover;
pub mod generate;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod separator;

#[cfg(test)]
mod testutil;

pub use bitset::{BitSet, NodeSet, VertexSet};
pub use hypergraph::{Hypergraph, HypergraphError};

static FORCE_CHECKS: AtomicBool = AtomicBool::new(false);

/// Turns the expensive internal consistency checks on for this process.
pub fn set_invariant_checks(on: bool) {
    FORCE_CHECKS.store(on, Ordering::Relaxed);
}

/// True when `GHW_DEBUG_ASSERT=1` or checks were switched on explicitly.
pub fn invariant_checks_enabled() -> bool {
    static ENV: OnceLock<bool> = OnceLock::new();
    FORCE_CHECKS.load(Ordering::Relaxed)
        || *ENV.get_or_init(|| std::env::var("GHW_DEBUG_ASSERT").is_ok_and(|v| v == "1"))
}
