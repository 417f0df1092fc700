//! One compression step: shrink a decomposition of width `4α + 1` back to
//! width `4α`, keeping a given interface inside one bag.

use std::collections::HashMap;

use crate::bitset::VertexSet;
use crate::cover::{min_edge_cover, rho_stable_extend};
use crate::decomposition::{ghw_of, validate, TreeDecomposition};
use crate::gap_cover::{alpha, ApproxParams, ShygRejectCertificate};
use crate::hypergraph::Hypergraph;
use crate::separator::{SepReject, SepStats, SeparatorQuery, SeparatorResult, SeparatorSearch};

pub struct CompressInput<'a> {
    pub h: &'a Hypergraph,
    pub k: usize,
    pub d: usize,
    pub td: &'a TreeDecomposition,
    pub w: &'a VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompressReject {
    ShygTriggered(Box<ShygRejectCertificate>),
    NoBalancedPartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionFailure {
    NotFound,
    ShygTriggered(Box<ShygRejectCertificate>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedPartition {
    pub e0: Vec<usize>,
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub separator: SeparatorResult,
}

/// Shape of the recursion tree of one top-level compression.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompressRecord {
    pub vertices: usize,
    pub calls: u64,
    pub height: usize,
    pub leaves: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CompressStats {
    pub records: Vec<CompressRecord>,
    /// Leaf separator calls on complete partitions.
    pub partitions_tried: u64,
    /// Separator calls on partial partitions used for pruning.
    pub prefix_calls: u64,
    /// Recursions entered with fewer than two components after splitting.
    pub split_violations: u64,
    /// Recursions whose hypergraph did not shrink.
    pub shrink_violations: u64,
    /// Interfaces with cover number above `3α`, when checks are enabled.
    pub interface_violations: u64,
}

/// Runs compression steps for fixed `k` and `d`, reusing separator memo
/// tables across calls.
pub struct Compressor {
    k: usize,
    d: usize,
    alpha: usize,
    search: SeparatorSearch,
    stats: CompressStats,
    current: CompressRecord,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Probe {
    Found,
    Shyg,
    None,
}

impl Compressor {
    pub fn new(k: usize, d: usize) -> Self {
        Compressor {
            k,
            d,
            alpha: alpha(k, d),
            search: SeparatorSearch::new(k, d),
            stats: CompressStats::default(),
            current: CompressRecord::default(),
        }
    }

    pub fn stats(&self) -> &CompressStats {
        &self.stats
    }

    pub fn separator_stats(&self) -> &SepStats {
        self.search.stats()
    }

    fn sep_params(&self) -> ApproxParams {
        ApproxParams::new(self.k, self.d, self.k, 4 * self.alpha + 1).expect("k >= 1 and d >= 1")
    }

    fn probe(
        &mut self,
        h: &Hypergraph,
        a: &VertexSet,
        b: &VertexSet,
        td: &TreeDecomposition,
    ) -> Result<SeparatorResult, SepReject> {
        let q = SeparatorQuery {
            h,
            a,
            b,
            td,
            params: self.sep_params(),
        };
        self.search.app_sep(&q)
    }

    /// Searches weak partitions `(E0, E1, E2)` of `e_w` with `|E0| <= k` and
    /// `|E1|, |E2| <= 2α` in lexicographic order of their assignment vectors
    /// and returns the first one whose sides the separator search can split.
    ///
    /// A vector and its 1/2 mirror image describe the same split, so only
    /// vectors whose first nonzero entry is 1 are tried. A partial assignment
    /// whose sides already cannot be split prunes all its completions, since
    /// growing either side never helps.
    pub fn find_balanced_partition(
        &mut self,
        h: &Hypergraph,
        e_w: &[usize],
        td: &TreeDecomposition,
    ) -> Result<BalancedPartition, PartitionFailure> {
        let mut td = td.clone();
        td.set_active(None);
        let mut dfs = PartitionDfs {
            h,
            e_w,
            td: &td,
            caps: [self.k, 2 * self.alpha, 2 * self.alpha],
            digits: Vec::with_capacity(e_w.len()),
            counts: [0; 3],
            sides: [VertexSet::new(), VertexSet::new()],
            seen: HashMap::new(),
        };
        match dfs.run(self)? {
            Some((digits, separator)) => {
                let pick = |d: u8| -> Vec<usize> {
                    e_w.iter()
                        .zip(&digits)
                        .filter(|(_, &x)| x == d)
                        .map(|(&e, _)| e)
                        .collect()
                };
                Ok(BalancedPartition {
                    e0: pick(0),
                    e1: pick(1),
                    e2: pick(2),
                    separator,
                })
            }
            None => Err(PartitionFailure::NotFound),
        }
    }

    /// Compresses `td` so that its width drops to at most `4α` with `w`
    /// inside the root bag.
    pub fn compress(
        &mut self,
        h: &Hypergraph,
        td: &TreeDecomposition,
        w: &VertexSet,
    ) -> Result<TreeDecomposition, CompressReject> {
        self.current = CompressRecord {
            vertices: h.num_vertices(),
            ..Default::default()
        };
        let out = self.compress_rec(h, td, w, 1);
        let record = std::mem::take(&mut self.current);
        self.stats.records.push(record);
        out
    }

    fn compress_rec(
        &mut self,
        h: &Hypergraph,
        td: &TreeDecomposition,
        w: &VertexSet,
        depth: usize,
    ) -> Result<TreeDecomposition, CompressReject> {
        self.current.calls += 1;
        self.current.height = self.current.height.max(depth);
        let a = self.alpha;
        let checks = crate::invariant_checks_enabled();
        if checks {
            let mut t = td.clone();
            assert!(
                ghw_of(h, &mut t, None) <= 4 * a + 1,
                "compress input too wide"
            );
            assert!(
                validate(h, &t).is_valid(),
                "compress input is not a decomposition"
            );
        }

        let (_, e_w) = rho_stable_extend(h, w, 3 * a + 1)
            .expect("compress needs rho(W) <= 3α and rho(H) > 3α");
        let part = self
            .find_balanced_partition(h, &e_w.edges, td)
            .map_err(|f| match f {
                PartitionFailure::NotFound => CompressReject::NoBalancedPartition,
                PartitionFailure::ShygTriggered(c) => CompressReject::ShygTriggered(c),
            })?;
        let x = part.separator.separator.intersection(h.vertices());
        let union_ew = h.union_of_edges(&e_w.edges);

        let comps = h.components_without(&x);
        let (big, small): (Vec<VertexSet>, Vec<VertexSet>) = comps
            .into_iter()
            .partition(|c| min_edge_cover(h, &c.union(&x), 4 * a).is_err());
        if big.is_empty() {
            self.current.leaves += 1;
        } else if big.len() + small.len() < 2 {
            self.stats.split_violations += 1;
        }

        let mut children = Vec::with_capacity(big.len());
        for c in &big {
            let ui = c.union(&x);
            let hi = h.induced(&ui);
            if hi.num_vertices() >= h.num_vertices() {
                self.stats.shrink_violations += 1;
                panic!("compression recursion did not shrink the hypergraph");
            }
            let mut wi = union_ew.intersection(c);
            wi.union_with(&x);
            if checks && min_edge_cover(&hi, &wi, 3 * a).is_err() {
                self.stats.interface_violations += 1;
            }
            let ti = td.restrict_bags(&ui);
            let out = self.compress_rec(&hi, &ti, &wi, depth + 1)?;
            let attach = out
                .node_containing(&wi)
                .expect("interface missing from compressed decomposition");
            children.push((out, attach));
        }

        let mut out = TreeDecomposition::glue(w.union(&x), children);
        for c in &small {
            out.add_leaf(0, c.union(&x));
        }
        if checks {
            let mut t = out.clone();
            assert!(
                ghw_of(h, &mut t, None) <= 4 * a,
                "compressed decomposition too wide"
            );
            let rep = validate(h, &t);
            assert!(rep.is_valid(), "compressed decomposition invalid: {rep:?}");
        }
        Ok(out)
    }
}

struct PartitionDfs<'a> {
    h: &'a Hypergraph,
    e_w: &'a [usize],
    td: &'a TreeDecomposition,
    caps: [usize; 3],
    digits: Vec<u8>,
    counts: [usize; 3],
    sides: [VertexSet; 2],
    seen: HashMap<(VertexSet, VertexSet), Probe>,
}

type Found = Option<(Vec<u8>, SeparatorResult)>;

impl PartitionDfs<'_> {
    fn run(&mut self, c: &mut Compressor) -> Result<Found, PartitionFailure> {
        let pos = self.digits.len();
        if pos == self.e_w.len() {
            c.stats.partitions_tried += 1;
            return match c.probe(self.h, &self.sides[0], &self.sides[1], self.td) {
                Ok(r) => Ok(Some((self.digits.clone(), r))),
                Err(SepReject::ShygTriggered(cert)) => Err(PartitionFailure::ShygTriggered(cert)),
                Err(SepReject::NoSeparator) => Ok(None),
            };
        }
        let edge = self.h.edge(self.e_w[pos]).clone();
        for digit in 0u8..3 {
            let di = digit as usize;
            if self.counts[di] >= self.caps[di] || (digit == 2 && self.counts[1] == 0) {
                continue;
            }
            let saved = if digit > 0 {
                Some(self.sides[di - 1].clone())
            } else {
                None
            };
            if digit > 0 {
                self.sides[di - 1].union_with(&edge);
            }
            self.digits.push(digit);
            self.counts[di] += 1;

            let last = pos + 1 == self.e_w.len();
            let viable = digit == 0 || last || self.prefix_viable(c);
            let found = if viable { self.run(c) } else { Ok(None) };

            self.counts[di] -= 1;
            self.digits.pop();
            if let Some(s) = saved {
                self.sides[di - 1] = s;
            }
            match found {
                Ok(None) => {}
                other => return other,
            }
        }
        Ok(None)
    }

    fn prefix_viable(&mut self, c: &mut Compressor) -> bool {
        if self.sides[0].is_empty() || self.sides[1].is_empty() {
            return true;
        }
        let key = (self.sides[0].clone(), self.sides[1].clone());
        if let Some(&p) = self.seen.get(&key) {
            return p != Probe::None;
        }
        c.stats.prefix_calls += 1;
        let p = match c.probe(self.h, &key.0, &key.1, self.td) {
            Ok(_) => Probe::Found,
            Err(SepReject::ShygTriggered(_)) => Probe::Shyg,
            Err(SepReject::NoSeparator) => Probe::None,
        };
        self.seen.insert(key, p);
        p != Probe::None
    }
}

/// Finds a balanced partition of `e_w` with a fresh separator search.
pub fn find_balanced_partition(
    h: &Hypergraph,
    e_w: &[usize],
    k: usize,
    d: usize,
    td: &TreeDecomposition,
) -> Result<BalancedPartition, PartitionFailure> {
    Compressor::new(k, d).find_balanced_partition(h, e_w, td)
}

pub fn compress(input: &CompressInput) -> Result<TreeDecomposition, CompressReject> {
    Compressor::new(input.k, input.d).compress(input.h, input.td, input.w)
}
