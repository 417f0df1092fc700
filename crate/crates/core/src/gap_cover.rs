//! Big edges, boundaries, spanning sets and the gap cover approximator.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::bitset::{BitSet, VertexSet};
use crate::cover::min_edge_cover;
use crate::hypergraph::Hypergraph;

/// `k (3k + d + 1) (2k - 1)`.
pub fn alpha(k: usize, d: usize) -> usize {
    assert!(k >= 1 && d >= 1, "alpha needs k, d >= 1");
    k * (3 * k + d + 1) * (2 * k - 1)
}

/// `ξ'(0) = (3k+1)d + 1`, `ξ'(n) = ((3k+1)d)² ξ'(n-1) + 1`.
pub fn xi_prime(n: usize, k: usize, d: usize) -> BigUint {
    let base = BigUint::from((3 * k + 1) * d);
    let sq = &base * &base;
    let mut x = base + 1u32;
    for _ in 0..n {
        x = &sq * &x + 1u32;
    }
    x
}

pub fn xi(k: usize, d: usize) -> BigUint {
    xi_prime(d, k, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("d must be at least 1")]
    ZeroD,
    #[error("need k0 <= k <= p, got k0={k0}, k={k}, p={p}")]
    Order { k0: usize, k: usize, p: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApproxParams {
    pub k: usize,
    pub d: usize,
    pub k0: usize,
    pub p: usize,
}

impl ApproxParams {
    pub fn new(k: usize, d: usize, k0: usize, p: usize) -> Result<Self, ParamsError> {
        if d == 0 {
            return Err(ParamsError::ZeroD);
        }
        if k0 > k || k > p {
            return Err(ParamsError::Order { k0, k, p });
        }
        Ok(ApproxParams { k, d, k0, p })
    }

    pub fn alpha(&self) -> usize {
        alpha(self.k, self.d)
    }

    pub fn xi(&self) -> BigUint {
        xi(self.k, self.d)
    }

    /// Cover bound of every family member: `(3k + d + 1) k0`.
    pub fn beta(&self) -> usize {
        (3 * self.k + self.d + 1) * self.k0
    }

    /// Bound on the separator cover returned by the separator search.
    pub fn separator_bound(&self) -> usize {
        (3 * self.k + self.d + 1) * (2 * self.k).saturating_sub(1) * self.k0
    }

    /// Small edges spanning more than this many boundaries are long.
    pub fn span_limit(&self) -> usize {
        3 * self.k + self.d
    }

    pub fn with_k0(self, k0: usize) -> Self {
        debug_assert!(k0 <= self.k);
        ApproxParams { k0, ..self }
    }

    pub fn with_p(self, p: usize) -> Self {
        debug_assert!(p >= self.k);
        ApproxParams { p, ..self }
    }
}

/// Big edges of `H[U]` and what the small edges look like relative to them.
#[derive(Debug, Clone)]
pub struct BigEdgeStructure {
    /// `H[U]`; every edge id below refers to it.
    pub sub: Hypergraph,
    pub u: VertexSet,
    /// Edges with more than `p * d` vertices.
    pub big: Vec<usize>,
    /// `boundaries[i]`: vertices of `big[i]` in no other big edge.
    pub boundaries: Vec<VertexSet>,
    pub u1: VertexSet,
    pub u0: VertexSet,
    pub small: Vec<usize>,
    /// `spans[j]`: indices into `boundaries` met by `small[j]`.
    pub spans: Vec<BitSet>,
    /// Small edges spanning more than `3k + d` boundaries.
    pub long: Vec<usize>,
}

pub fn build_big_edge_structure(
    h: &Hypergraph,
    u: &VertexSet,
    params: &ApproxParams,
) -> BigEdgeStructure {
    let u = u.intersection(h.vertices());
    let sub = h.induced(&u);
    let limit = params.p.saturating_mul(params.d);
    let (big, small): (Vec<usize>, Vec<usize>) =
        (0..sub.num_edges()).partition(|&e| sub.edge(e).len() > limit);
    let boundaries: Vec<VertexSet> = big
        .iter()
        .map(|&e| {
            let mut b = sub.edge(e).clone();
            for &f in &big {
                if f != e {
                    b.difference_with(sub.edge(f));
                }
            }
            b
        })
        .collect();
    let mut u1 = VertexSet::new();
    for b in &boundaries {
        u1.union_with(b);
    }
    let u0 = u.difference(&u1);
    let spans: Vec<BitSet> = small
        .iter()
        .map(|&e| {
            boundaries
                .iter()
                .enumerate()
                .filter(|(_, b)| b.intersects(sub.edge(e)))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let long = small
        .iter()
        .zip(&spans)
        .filter(|(_, s)| s.len() > params.span_limit())
        .map(|(&e, _)| e)
        .collect();
    let bes = BigEdgeStructure {
        sub,
        u,
        big,
        boundaries,
        u1,
        u0,
        small,
        spans,
        long,
    };
    if crate::invariant_checks_enabled() {
        bes.check_bounds(params);
    }
    bes
}

impl BigEdgeStructure {
    /// Asserts the size bounds that hold whenever `ρ(U) <= p`.
    pub fn check_bounds(&self, params: &ApproxParams) {
        if min_edge_cover(&self.sub, &self.u, params.p).is_err() {
            return;
        }
        let (p, d) = (params.p, params.d);
        assert!(
            self.big.len() <= p,
            "{} big edges exceed p = {p}",
            self.big.len()
        );
        for b in &self.boundaries {
            assert!(
                b.len() > d,
                "boundary of size {} not above d = {d}",
                b.len()
            );
        }
        for (i, j) in (0..self.boundaries.len()).tuple_combinations() {
            assert!(!self.boundaries[i].intersects(&self.boundaries[j]));
        }
        assert!(
            self.u0.len() <= 2 * p * p * d,
            "|U0| = {} exceeds 2p²d",
            self.u0.len()
        );
    }

    /// The first `(3k+d+1)`-set of boundaries spanned by more than `ξ(k,d)`
    /// small edges, scanning subsets in lexicographic order.
    pub fn reject_certificate(&self, params: &ApproxParams) -> Option<ShygRejectCertificate> {
        let t = params.span_limit() + 1;
        if self.boundaries.len() < t {
            return None;
        }
        let threshold = params.xi();
        let cap = threshold.to_usize().unwrap_or(usize::MAX);
        let mut counts: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (j, sp) in self.spans.iter().enumerate() {
            if sp.len() < t {
                continue;
            }
            for key in sp.iter().combinations(t) {
                let list = counts.entry(key).or_default();
                if list.len() <= cap {
                    list.push(j);
                }
            }
        }
        let (key, js) = counts.into_iter().find(|(_, js)| js.len() > cap)?;
        Some(ShygRejectCertificate {
            boundaries: key.iter().map(|&i| self.boundaries[i].clone()).collect(),
            big_edges: key
                .iter()
                .map(|&i| self.sub.provenance(self.big[i])[0])
                .collect(),
            witnesses: js
                .iter()
                .map(|&j| self.sub.edge(self.small[j]).clone())
                .collect(),
            witness_edges: js
                .iter()
                .map(|&j| self.sub.provenance(self.small[j])[0])
                .collect(),
            threshold,
        })
    }
}

/// Evidence of a large subedge hypergrid: many small edges all crossing the
/// same `3k + d + 1` pairwise disjoint boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShygRejectCertificate {
    pub boundaries: Vec<VertexSet>,
    /// Original edge ids of the big edges owning `boundaries`.
    pub big_edges: Vec<usize>,
    pub witnesses: Vec<VertexSet>,
    /// Original edge ids of the witnesses.
    pub witness_edges: Vec<usize>,
    pub threshold: BigUint,
}

impl ShygRejectCertificate {
    pub fn is_valid(&self, k: usize, d: usize) -> bool {
        self.boundaries.len() > 3 * k + d
            && self.threshold == xi(k, d)
            && BigUint::from(self.witnesses.len()) > self.threshold
            && self
                .boundaries
                .iter()
                .tuple_combinations()
                .all(|(a, b)| !a.intersects(b))
            && self
                .witnesses
                .iter()
                .all(|w| self.boundaries.iter().all(|b| b.intersects(w)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCoverMember {
    pub set: VertexSet,
    /// Original edge ids whose union contains `set`.
    pub cover: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCoverFamily {
    pub members: Vec<GapCoverMember>,
    pub beta: usize,
    pub gamma: usize,
}

/// Either a family of sets with cover number at most `(3k+d+1) k0` such that
/// every `W ⊆ U` with `ρ(W) <= k0` lies inside one of them, or a certificate
/// that `ghw(H) > k`.
///
/// The empty set comes first. After it only the inclusion-maximal choices of
/// the `U'` and `S` parts are emitted; any smaller choice lies inside one of
/// them.
pub fn gap_cover_approx(
    h: &Hypergraph,
    u: &VertexSet,
    params: &ApproxParams,
) -> Result<GapCoverFamily, ShygRejectCertificate> {
    let bes = build_big_edge_structure(h, u, params);
    if let Some(cert) = bes.reject_certificate(params) {
        return Err(cert);
    }
    let sub = &bes.sub;
    let root = |e: usize| sub.provenance(e)[0];
    let k0 = params.k0;

    // maximal U' ⊆ U0 with ρ(U') <= k0: unions of k0 maximal traces on U0
    let mut traces: Vec<(VertexSet, usize)> = Vec::new();
    for e in 0..sub.num_edges() {
        let tr = sub.edge(e).intersection(&bes.u0);
        if !tr.is_empty() && !traces.iter().any(|(t, _)| *t == tr) {
            traces.push((tr, e));
        }
    }
    let traces: Vec<&(VertexSet, usize)> = traces
        .iter()
        .filter(|(t, _)| !traces.iter().any(|(o, _)| o != t && t.is_subset(o)))
        .collect();
    let mut uprimes: Vec<GapCoverMember> = Vec::new();
    let mut seen = HashSet::new();
    for combo in traces.iter().combinations(k0.min(traces.len())) {
        let mut set = VertexSet::new();
        for (t, _) in &combo {
            set.union_with(t);
        }
        if seen.insert(set.clone()) {
            let cover = combo
                .iter()
                .map(|(_, e)| root(*e))
                .sorted()
                .dedup()
                .collect();
            uprimes.push(GapCoverMember { set, cover });
        }
    }

    let owner: Vec<usize> = bes.big.iter().map(|&e| root(e)).collect();
    let mut extras: Vec<GapCoverMember> = Vec::new();
    let mut seen = HashSet::new();
    for big in 0..=k0 {
        for short in 0..=k0 - big {
            for long in 0..=k0 - big - short {
                if big > bes.big.len() || long > bes.long.len() {
                    continue;
                }
                let s_size = bes.boundaries.len().min(params.span_limit() * short);
                for b in (0..bes.big.len()).combinations(big) {
                    for s in (0..bes.boundaries.len()).combinations(s_size) {
                        for l in bes.long.iter().combinations(long) {
                            let mut set = VertexSet::new();
                            let mut cover = Vec::new();
                            for &i in &b {
                                set.union_with(sub.edge(bes.big[i]));
                                cover.push(owner[i]);
                            }
                            for &i in &s {
                                set.union_with(&bes.boundaries[i]);
                                cover.push(owner[i]);
                            }
                            for &&e in &l {
                                set.union_with(sub.edge(e));
                                cover.push(root(e));
                            }
                            if seen.insert(set.clone()) {
                                extras.push(GapCoverMember { set, cover });
                            }
                        }
                    }
                }
            }
        }
    }

    let mut members = vec![GapCoverMember {
        set: VertexSet::new(),
        cover: Vec::new(),
    }];
    let mut seen = HashSet::from([VertexSet::new()]);
    for up in &uprimes {
        for ex in &extras {
            let set = up.set.union(&ex.set);
            if seen.insert(set.clone()) {
                let cover = up
                    .cover
                    .iter()
                    .chain(&ex.cover)
                    .copied()
                    .sorted()
                    .dedup()
                    .collect();
                members.push(GapCoverMember { set, cover });
            }
        }
    }
    Ok(GapCoverFamily {
        members,
        beta: params.beta(),
        gamma: k0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::hg;

    #[test]
    fn formulas() {
        assert_eq!(alpha(1, 1), 5);
        assert_eq!(alpha(2, 1), 48);
        assert_eq!(alpha(2, 3), 60);
        assert_eq!(xi_prime(0, 1, 1), BigUint::from(5u32));
        assert_eq!(xi(1, 1), BigUint::from(81u32));
        assert_eq!(xi_prime(1, 2, 2), BigUint::from(2941u32));
    }

    #[test]
    fn params_validation() {
        assert!(ApproxParams::new(1, 0, 1, 1).is_err());
        assert!(ApproxParams::new(2, 1, 3, 5).is_err());
        assert!(ApproxParams::new(2, 1, 1, 1).is_err());
        assert!(ApproxParams::new(2, 1, 0, 2).is_ok());
    }

    #[test]
    fn big_edge_threshold() {
        let h = hg(&[("e", &["a", "b", "c", "d", "e"])]);
        let all = h.vertices().clone();
        let s = build_big_edge_structure(&h, &all, &ApproxParams::new(1, 1, 1, 1).unwrap());
        assert_eq!(s.big, vec![0]);
        assert_eq!(s.boundaries, vec![all.clone()]);
        assert!(s.u0.is_empty());
        let s = build_big_edge_structure(&h, &all, &ApproxParams::new(1, 1, 1, 5).unwrap());
        assert!(s.big.is_empty());
        assert_eq!(s.u0, all);
    }

    #[test]
    fn spans_of_connecting_edge() {
        let h = hg(&[
            ("b1", &["a1", "a2", "a3"]),
            ("b2", &["c1", "c2", "c3"]),
            ("s", &["a1", "c1"]),
        ]);
        let all = h.vertices().clone();
        let s = build_big_edge_structure(&h, &all, &ApproxParams::new(1, 1, 1, 2).unwrap());
        assert_eq!(s.big.len(), 2);
        assert_eq!(s.spans, vec![BitSet::from_iter([0, 1])]);
    }

    #[test]
    fn empty_u_gives_empty_member() {
        let h = hg(&[("e", &["a", "b"])]);
        let f = gap_cover_approx(
            &h,
            &VertexSet::new(),
            &ApproxParams::new(1, 1, 1, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(f.members.len(), 1);
        assert!(f.members[0].set.is_empty());
    }

    #[test]
    fn single_big_edge_family() {
        let h = hg(&[("e", &["a", "b", "c", "d", "e"])]);
        let all = h.vertices().clone();
        let f = gap_cover_approx(&h, &all, &ApproxParams::new(1, 1, 1, 1).unwrap()).unwrap();
        assert!(f.members.iter().any(|m| m.set == all));
    }
}
