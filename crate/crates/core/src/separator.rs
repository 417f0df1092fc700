//! Balanced tree splitting and the approximate separator search.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::bitset::{NodeSet, VertexSet};
use crate::decomposition::TreeDecomposition;
use crate::gap_cover::{gap_cover_approx, ApproxParams, GapCoverFamily, ShygRejectCertificate};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedSplit {
    pub center: usize,
    pub y1: Vec<usize>,
    pub y2: Vec<usize>,
}

/// Picks `t ∈ X` and splits its neighbours so that each side, together with
/// `t`, holds at most `⌊3|X|/4⌋` nodes of `X`.
///
/// Nodes outside `active` must be leaves and `|active| >= 3`.
pub fn get_bal_vert(adjacency: &[Vec<usize>], active: &NodeSet) -> BalancedSplit {
    let n = active.len();
    assert!(n >= 3, "balanced split needs at least three active nodes");
    let root = active.first().expect("non-empty");

    // subtree sizes of T[X] rooted at `root`
    let mut parent = vec![usize::MAX; adjacency.len()];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let a = order[i];
        i += 1;
        for &b in &adjacency[a] {
            if active.contains(b) && parent[b] == usize::MAX {
                parent[b] = a;
                order.push(b);
            }
        }
    }
    assert_eq!(
        order.len(),
        n,
        "active nodes must induce a connected subtree"
    );
    let mut size = vec![0usize; adjacency.len()];
    for &a in order.iter().rev() {
        size[a] += 1;
        if a != root {
            size[parent[a]] += size[a];
        }
    }
    let side = |cur: usize, y: usize| {
        if parent[y] == cur {
            size[y]
        } else {
            n - size[cur]
        }
    };
    let x_neighbors = |cur: usize| {
        adjacency[cur]
            .iter()
            .copied()
            .filter(|&y| active.contains(y))
    };

    let mut cur = root;
    while let Some(next) = x_neighbors(cur).find(|&y| parent[y] == cur && 3 * size[y] > 2 * n) {
        cur = next;
    }

    if let Some(x) = x_neighbors(cur).find(|&y| 2 * side(cur, y) > n) {
        let y1 = adjacency[x].iter().copied().filter(|&y| y != cur).collect();
        return BalancedSplit {
            center: x,
            y1,
            y2: vec![cur],
        };
    }

    let mut sides: Vec<(usize, usize)> = x_neighbors(cur).map(|y| (side(cur, y), y)).collect();
    sides.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut sum = 0;
    let mut y1 = Vec::new();
    for (s, y) in sides {
        y1.push(y);
        sum += s;
        if 3 * sum > n - 1 {
            break;
        }
    }
    let y2 = adjacency[cur]
        .iter()
        .copied()
        .filter(|y| !y1.contains(y))
        .collect();
    BalancedSplit {
        center: cur,
        y1,
        y2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorResult {
    pub separator: VertexSet,
    /// Original edge ids whose union contains the separator.
    pub cover: Vec<usize>,
    /// Gap cover members whose union is the separator.
    pub pieces: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SepReject {
    ShygTriggered(Box<ShygRejectCertificate>),
    NoSeparator,
}

pub struct SeparatorQuery<'a> {
    pub h: &'a Hypergraph,
    pub a: &'a VertexSet,
    pub b: &'a VertexSet,
    /// Decomposition of `h`; its active set is `X`.
    pub td: &'a TreeDecomposition,
    pub params: ApproxParams,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SepStats {
    pub app_sep_calls: u64,
    pub small_sep_calls: u64,
    pub family_builds: u64,
    pub family_hits: u64,
    /// Recursive calls checked against the `⌊3|X|/4⌋` bound.
    pub balance_checks: u64,
    pub balance_violations: u64,
    /// Largest observed `child |X| / parent |X|`.
    pub worst_shrink: f64,
    /// Most recursive calls one separator loop issued, keyed by budget `k0`.
    pub loop_calls: BTreeMap<usize, u64>,
}

impl SepStats {
    pub fn absorb(&mut self, o: &SepStats) {
        self.app_sep_calls += o.app_sep_calls;
        self.small_sep_calls += o.small_sep_calls;
        self.family_builds += o.family_builds;
        self.family_hits += o.family_hits;
        self.balance_checks += o.balance_checks;
        self.balance_violations += o.balance_violations;
        self.worst_shrink = self.worst_shrink.max(o.worst_shrink);
        for (&k, &v) in &o.loop_calls {
            let e = self.loop_calls.entry(k).or_default();
            *e = (*e).max(v);
        }
    }
}

type FamilyResult = Rc<Result<GapCoverFamily, ShygRejectCertificate>>;

#[derive(Hash, PartialEq, Eq)]
struct FamilyKey {
    universe: usize,
    u: VertexSet,
    k0: usize,
    p: usize,
}

#[derive(Hash, PartialEq, Eq)]
struct SmallKey {
    universe: usize,
    v: VertexSet,
    a: VertexSet,
    b: VertexSet,
    u: VertexSet,
    k0: usize,
    p: usize,
}

const CACHE_LIMIT: usize = 200_000;

/// Runs separator queries for one fixed `k`, `d`, sharing memo tables.
///
/// Every hypergraph passed in must be an induced subhypergraph of one
/// common original, which is the case for everything the crate builds.
pub struct SeparatorSearch {
    k: usize,
    d: usize,
    families: HashMap<FamilyKey, FamilyResult>,
    labels: HashMap<(usize, VertexSet), Rc<Vec<u32>>>,
    small: HashMap<SmallKey, Result<SeparatorResult, SepReject>>,
    stats: SepStats,
}

impl SeparatorSearch {
    pub fn new(k: usize, d: usize) -> Self {
        SeparatorSearch {
            k,
            d,
            families: HashMap::new(),
            labels: HashMap::new(),
            small: HashMap::new(),
            stats: SepStats::default(),
        }
    }

    pub fn stats(&self) -> &SepStats {
        &self.stats
    }

    pub fn take_stats(&mut self) -> SepStats {
        std::mem::take(&mut self.stats)
    }

    fn params(&self, k0: usize, p: usize) -> ApproxParams {
        ApproxParams::new(self.k, self.d, k0, p).expect("separator parameters out of range")
    }

    fn family(&mut self, h: &Hypergraph, u: &VertexSet, k0: usize, p: usize) -> FamilyResult {
        let key = FamilyKey {
            universe: h.universe_id(),
            u: u.intersection(h.vertices()),
            k0,
            p,
        };
        if let Some(f) = self.families.get(&key) {
            self.stats.family_hits += 1;
            return f.clone();
        }
        self.stats.family_builds += 1;
        let f = Rc::new(gap_cover_approx(h, &key.u, &self.params(k0, p)));
        if self.families.len() > CACHE_LIMIT {
            self.families.clear();
        }
        self.families.insert(key, f.clone());
        f
    }

    /// Component labels of `H[live]`, indexed by vertex id.
    fn labels(&mut self, h: &Hypergraph, live: VertexSet) -> Rc<Vec<u32>> {
        let key = (h.universe_id(), live);
        if let Some(l) = self.labels.get(&key) {
            return l.clone();
        }
        let mut lab = vec![u32::MAX; h.universe_size()];
        let comps = h.components_without(&h.vertices().difference(&key.1));
        for (i, c) in comps.iter().enumerate() {
            for v in c {
                lab[v] = i as u32;
            }
        }
        let lab = Rc::new(lab);
        if self.labels.len() > CACHE_LIMIT {
            self.labels.clear();
        }
        self.labels.insert(key, lab.clone());
        lab
    }

    fn separates(&mut self, h: &Hypergraph, a: &VertexSet, b: &VertexSet, w: &VertexSet) -> bool {
        let a = a.intersection(h.vertices()).difference(w);
        let b = b.intersection(h.vertices()).difference(w);
        if a.is_empty() || b.is_empty() {
            return true;
        }
        if a.intersects(&b) {
            return false;
        }
        let lab = self.labels(h, h.vertices().difference(w));
        let hit: std::collections::HashSet<u32> = a.iter().map(|v| lab[v]).collect();
        !b.iter().any(|v| hit.contains(&lab[v]))
    }

    fn record_balance(&mut self, parent: usize, child: usize) {
        if parent < 3 {
            return;
        }
        self.stats.balance_checks += 1;
        if child > 3 * parent / 4 {
            self.stats.balance_violations += 1;
        }
        self.stats.worst_shrink = self.stats.worst_shrink.max(child as f64 / parent as f64);
    }

    pub fn small_sep(&mut self, q: &SeparatorQuery) -> Result<SeparatorResult, SepReject> {
        self.check_query(q);
        self.small_sep_inner(q.h, q.a, q.b, q.params.k0, q.params.p, q.td, &q.td.active())
    }

    pub fn app_sep(&mut self, q: &SeparatorQuery) -> Result<SeparatorResult, SepReject> {
        self.check_query(q);
        self.app_sep_inner(q.h, q.a, q.b, q.params.k0, q.params.p, q.td, &q.td.active())
    }

    fn check_query(&self, q: &SeparatorQuery) {
        assert_eq!(
            (q.params.k, q.params.d),
            (self.k, self.d),
            "query parameters differ from the search"
        );
        if crate::invariant_checks_enabled() {
            let mut td = q.td.clone();
            let x = td.active();
            let width = crate::decomposition::ghw_of(q.h, &mut td, Some(&x));
            assert!(
                width <= q.params.p,
                "decomposition width {width} exceeds p = {}",
                q.params.p
            );
            let rep = crate::decomposition::validate(q.h, &td);
            assert!(
                rep.is_valid(),
                "separator query with invalid decomposition: {rep:?}"
            );
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn small_sep_inner(
        &mut self,
        h: &Hypergraph,
        a: &VertexSet,
        b: &VertexSet,
        k0: usize,
        p: usize,
        td: &TreeDecomposition,
        active: &NodeSet,
    ) -> Result<SeparatorResult, SepReject> {
        self.stats.small_sep_calls += 1;
        let (u, p_eff) = match active.len() {
            0 => {
                let empty = VertexSet::new();
                return if self.separates(h, a, b, &empty) {
                    Ok(SeparatorResult {
                        separator: empty.clone(),
                        cover: Vec::new(),
                        pieces: vec![empty],
                    })
                } else {
                    Err(SepReject::NoSeparator)
                };
            }
            1 => (td.bag(active.first().unwrap()).clone(), p),
            2 => (td.union_of_bags(active.iter()), 2 * p),
            n => panic!("small separator search called with {n} active nodes"),
        };
        let key = SmallKey {
            universe: h.universe_id(),
            v: h.vertices().clone(),
            a: a.intersection(h.vertices()),
            b: b.intersection(h.vertices()),
            u,
            k0,
            p: p_eff,
        };
        if let Some(r) = self.small.get(&key) {
            return r.clone();
        }
        let family = self.family(h, &key.u, k0, p_eff);
        let out = match &*family {
            Err(cert) => Err(SepReject::ShygTriggered(Box::new(cert.clone()))),
            Ok(fam) => fam
                .members
                .iter()
                .find(|m| self.separates(h, &key.a, &key.b, &m.set))
                .map(|m| SeparatorResult {
                    separator: m.set.clone(),
                    cover: m.cover.clone(),
                    pieces: vec![m.set.clone()],
                })
                .ok_or(SepReject::NoSeparator),
        };
        if self.small.len() > CACHE_LIMIT {
            self.small.clear();
        }
        self.small.insert(key, out.clone());
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn app_sep_inner(
        &mut self,
        h: &Hypergraph,
        a: &VertexSet,
        b: &VertexSet,
        k0: usize,
        p: usize,
        td: &TreeDecomposition,
        active: &NodeSet,
    ) -> Result<SeparatorResult, SepReject> {
        self.stats.app_sep_calls += 1;
        let m = active.len();
        if m <= 2 {
            return self.small_sep_inner(h, a, b, k0, p, td, active);
        }
        let split = get_bal_vert(td.adjacency(), active);
        let t = split.center;

        for y in [&split.y1, &split.y2] {
            let sub = td.subtree_extend(t, y);
            let x = sub.td.active();
            self.record_balance(m, x.len());
            match self.app_sep_inner(h, a, b, k0, p, &sub.td, &x) {
                Err(SepReject::NoSeparator) => {}
                other => return other,
            }
        }

        let bag = td.bag(t).clone();
        let family = self.family(h, &bag, k0, p);
        let family = match &*family {
            Err(cert) => return Err(SepReject::ShygTriggered(Box::new(cert.clone()))),
            Ok(f) => f,
        };
        if k0 < 2 {
            return Err(SepReject::NoSeparator);
        }

        let sides: Vec<_> = [&split.y1, &split.y2]
            .into_iter()
            .map(|y| {
                let sub = td.subtree_restrict(t, y);
                let verts = sub.td.all_vertices();
                (sub, verts)
            })
            .collect();
        for (sub, _) in &sides {
            self.record_balance(m, sub.td.active().len());
        }

        let mut issued = 0u64;
        let mut result = Err(SepReject::NoSeparator);
        'outer: for member in &family.members {
            let w = &member.set;
            let rest = bag.difference(w).intersection(h.vertices());
            let comps = h.components_without(&h.vertices().difference(&rest));
            assert!(
                comps.len() < 26,
                "{} components in a bag remainder",
                comps.len()
            );
            let parts: Vec<_> = sides
                .iter()
                .map(|(sub, verts)| {
                    let live = verts.difference(w);
                    let hi = h.induced(&live);
                    let ti = sub.td.remove_vertices(w);
                    let xi = ti.active();
                    (hi, ti, xi, a.intersection(&live), b.intersection(&live))
                })
                .collect();
            for k1 in 1..k0 {
                for k2 in 1..=k0 - k1 {
                    for mask in 0u32..(1 << comps.len()) {
                        let mut c1 = VertexSet::new();
                        let mut c2 = VertexSet::new();
                        for (j, c) in comps.iter().enumerate() {
                            if mask & (1 << j) == 0 {
                                c1.union_with(c);
                            } else {
                                c2.union_with(c);
                            }
                        }
                        let mut outs = Vec::with_capacity(2);
                        for (i, (hi, ti, xi, ai, bi)) in parts.iter().enumerate() {
                            let budget = if i == 0 { k1 } else { k2 };
                            issued += 1;
                            let (ai, bi) = (ai.union(&c1), bi.union(&c2));
                            match self.app_sep_inner(hi, &ai, &bi, budget, p, ti, xi) {
                                Ok(r) => outs.push(r),
                                Err(SepReject::NoSeparator) => break,
                                Err(shyg) => {
                                    result = Err(shyg);
                                    break 'outer;
                                }
                            }
                        }
                        if let [o1, o2] = &outs[..] {
                            let mut separator = w.clone();
                            separator.union_with(&o1.separator);
                            separator.union_with(&o2.separator);
                            let mut cover: Vec<usize> = member
                                .cover
                                .iter()
                                .chain(&o1.cover)
                                .chain(&o2.cover)
                                .copied()
                                .collect();
                            cover.sort_unstable();
                            cover.dedup();
                            let mut pieces = o1.pieces.clone();
                            pieces.extend(o2.pieces.iter().cloned());
                            pieces.push(w.clone());
                            result = Ok(SeparatorResult {
                                separator,
                                cover,
                                pieces,
                            });
                            break 'outer;
                        }
                    }
                }
            }
        }
        let e = self.stats.loop_calls.entry(k0).or_default();
        *e = (*e).max(issued);
        result
    }
}

pub fn small_sep(q: &SeparatorQuery) -> Result<SeparatorResult, SepReject> {
    SeparatorSearch::new(q.params.k, q.params.d).small_sep(q)
}

pub fn app_sep(q: &SeparatorQuery) -> Result<SeparatorResult, SepReject> {
    SeparatorSearch::new(q.params.k, q.params.d).app_sep(q)
}
