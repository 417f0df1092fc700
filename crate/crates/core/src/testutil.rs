use crate::hypergraph::Hypergraph;

pub(crate) fn hg(edges: &[(&str, &[&str])]) -> Hypergraph {
    Hypergraph::from_named_edges(edges.iter().map(|(n, vs)| (*n, vs.iter().copied()))).unwrap()
}
