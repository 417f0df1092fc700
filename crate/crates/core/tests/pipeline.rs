mod common;

use std::path::PathBuf;

use common::{cycle, path};
use ghw_core::compress::{compress, find_balanced_partition, CompressInput, Compressor};
use ghw_core::cover::{is_rho_stable, min_edge_cover};
use ghw_core::decomposition::{ghw_of, validate, TreeDecomposition};
use ghw_core::driver::{approx_ghw, DriverError, Outcome};
use ghw_core::gap_cover::alpha;
use ghw_core::generate::gen_2d_hypergraph;
use ghw_core::io::{emit_decomposition, emit_hypergraph, parse_decomposition, parse_hypergraph};
use ghw_core::oracle::gyo_acyclic;
use ghw_core::{Hypergraph, VertexSet};

fn width(h: &Hypergraph, td: &TreeDecomposition) -> usize {
    ghw_of(h, &mut td.clone(), None)
}

#[test]
fn balanced_partition_on_a_chain() {
    // 16 disjoint edges of a 32-vertex path; the whole path sits in one bag
    let h = path(32);
    let e_w: Vec<usize> = (0..16).map(|i| 2 * i).collect();
    assert!(is_rho_stable(&h, &e_w));
    let td = TreeDecomposition::single(h.vertices().clone());
    let part = find_balanced_partition(&h, &e_w, 1, 1, &td).expect("a chain splits");
    let a = alpha(1, 1);
    assert!(part.e0.len() <= 1 && part.e1.len() <= 2 * a && part.e2.len() <= 2 * a);
    assert_eq!(part.e0.len() + part.e1.len() + part.e2.len(), 16);
    let (u1, u2) = (h.union_of_edges(&part.e1), h.union_of_edges(&part.e2));
    assert!(h.is_separator(&u1, &u2, &part.separator.separator));
}

#[test]
fn compress_inflated_chain() {
    // 42 vertices need 21 = 4α(1, 1) + 1 edges
    let h = path(42);
    let td = TreeDecomposition::single(h.vertices().clone());
    assert_eq!(width(&h, &td), 4 * alpha(1, 1) + 1);
    for w in [VertexSet::new(), h.edge(10).union(h.edge(30))] {
        let out = compress(&CompressInput {
            h: &h,
            k: 1,
            d: 1,
            td: &td,
            w: &w,
        })
        .unwrap();
        assert!(validate(&h, &out).is_valid());
        assert!(width(&h, &out) <= 4 * alpha(1, 1));
        assert!(out.node_containing(&w).is_some());

        let mut with_covers = out.clone();
        ghw_of(&h, &mut with_covers, None);
        let back = parse_decomposition(&h, &emit_decomposition(&h, &with_covers)).unwrap();
        assert_eq!(back, with_covers);
    }
}

#[test]
fn compress_records_recursion() {
    let h = path(90);
    let mut td = TreeDecomposition::single(VertexSet::new());
    let mut verts = VertexSet::new();
    let mut c = Compressor::new(1, 1);
    // feed vertices in order, compressing like the driver does
    for v in h.vertices().iter() {
        verts.insert(v);
        let hi = h.induced(&verts);
        td = td.add_vertex_to_all_bags(v);
        if width(&hi, &td) > 4 * alpha(1, 1) {
            td = c.compress(&hi, &td, &VertexSet::new()).unwrap();
        }
    }
    assert!(validate(&h, &td).is_valid());
    assert!(!c.stats().records.is_empty());
    for r in &c.stats().records {
        assert!(r.height <= r.vertices);
        assert!(r.leaves <= 21 * 21);
    }
    assert_eq!(c.stats().shrink_violations, 0);
}

#[test]
fn driver_examples() {
    let single = Hypergraph::from_named_edges([("e", ["a", "b", "c"])]).unwrap();
    let td = approx_ghw(&single, 1, Some(1))
        .unwrap()
        .accepted()
        .cloned()
        .unwrap();
    assert_eq!((td.num_nodes(), td.max_cover()), (1, Some(1)));

    let chain = path(7);
    assert!(gyo_acyclic(&chain));
    let res = approx_ghw(&chain, 1, None).unwrap();
    assert!(validate(&chain, res.accepted().unwrap()).is_valid());

    let tri = parse_hypergraph("e1(a,b)\ne2(b,c)\ne3(c,a)").unwrap();
    let res = approx_ghw(&tri, 2, Some(1)).unwrap();
    assert!(res.accepted().unwrap().max_cover().unwrap() <= 4 * alpha(2, 1));

    let empty = Hypergraph::from_named_edges(Vec::<(String, Vec<String>)>::new()).unwrap();
    assert!(approx_ghw(&empty, 1, None).unwrap().accepted().is_some());

    assert_eq!(approx_ghw(&tri, 0, None).unwrap_err(), DriverError::ZeroK);
    assert_eq!(
        approx_ghw(&tri, 1, Some(0)).unwrap_err(),
        DriverError::ZeroD
    );
    let fat = parse_hypergraph("e1(a,b,c)\ne2(a,b,d)").unwrap();
    assert_eq!(
        approx_ghw(&fat, 1, Some(1)).unwrap_err(),
        DriverError::IntersectionTooLarge {
            declared: 1,
            actual: 2
        }
    );
}

#[test]
fn driver_widths_stay_in_bounds() {
    for h in [path(70), cycle(50)] {
        let res = approx_ghw(&h, 1, Some(1)).unwrap();
        let limit = 4 * alpha(1, 1);
        assert!(res.stats.widths.iter().all(|&w| w <= limit));
        assert!(res.stats.compress_invocations > 0);
        if let Outcome::Accepted(td) = &res.outcome {
            assert!(validate(&h, td).is_valid());
            assert!(width(&h, td) <= limit);
        }
    }
}

#[test]
fn compressed_cycle_is_rejected() {
    // ghw of a cycle is 2, so a reject for k = 1 is sound
    let res = approx_ghw(&cycle(80), 1, Some(1)).unwrap();
    assert!(matches!(res.outcome, Outcome::Rejected(_)));
}

#[test]
fn bags_stay_coverable() {
    let h = path(60);
    let td = approx_ghw(&h, 1, Some(1))
        .unwrap()
        .accepted()
        .cloned()
        .unwrap();
    for b in td.bags() {
        assert!(min_edge_cover(&h, b, 4 * alpha(1, 1)).is_ok());
    }
}

#[test]
fn generator_golden_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let p = entry.unwrap().path();
        let stem = p.file_stem().unwrap().to_str().unwrap().to_string();
        let nums: Vec<u64> = stem
            .trim_start_matches("gen_")
            .split('_')
            .map(|part| part[1..].parse().unwrap())
            .collect();
        let [n, m, d, seed] = nums[..] else {
            panic!("bad golden name {stem}")
        };
        let h = gen_2d_hypergraph(n as usize, m as usize, d as usize, seed).unwrap();
        let want = std::fs::read_to_string(&p).unwrap();
        assert_eq!(emit_hypergraph(&h), want, "{stem}");
        seen += 1;
    }
    assert!(seen >= 4);
}
