//! Text formats for hypergraphs and decompositions.
//!
//! Hypergraphs: one edge per line, `NAME(V1,V2,...)` with an optional
//! trailing comma, `#` starting a comment.
//!
//! Decompositions:
//!
//! ```text
//! s ghtd <num_nodes> <max_cover> <num_vertices> <num_edges>
//! b <id> <vertex>...
//! c <id> <edge>...
//! <id> <id>
//! ```
//!
//! with 1-based node ids.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bitset::{BitSet, VertexSet};
use crate::decomposition::TreeDecomposition;
use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: edge `{name}` has no vertices")]
    EmptyEdge { line: usize, name: String },
    #[error("line {line}: duplicate edge name `{name}`")]
    DuplicateEdge { line: usize, name: String },
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | ':' | '.')
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && is_name_char(self.chars[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected {what}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut edges: Vec<(String, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor {
            chars: body.chars().collect(),
            pos: 0,
            line,
        };
        let name = cur.name("edge name")?;
        cur.expect('(')?;
        let mut verts = Vec::new();
        if cur.peek() == Some(')') {
            cur.pos += 1;
        } else {
            loop {
                verts.push(cur.name("vertex name")?);
                match cur.peek() {
                    Some(',') => cur.pos += 1,
                    Some(')') => {
                        cur.pos += 1;
                        break;
                    }
                    _ => return Err(cur.err("expected `,` or `)`")),
                }
            }
        }
        if cur.peek() == Some(',') {
            cur.pos += 1;
        }
        if cur.peek().is_some() {
            return Err(cur.err("unexpected trailing input"));
        }
        if verts.is_empty() {
            return Err(ParseError::EmptyEdge { line, name });
        }
        if edges.iter().any(|(n, _)| *n == name) {
            return Err(ParseError::DuplicateEdge { line, name });
        }
        edges.push((name, verts));
    }
    Hypergraph::from_named_edges(edges).map_err(|e| match e {
        HypergraphError::EmptyEdge(name) => ParseError::EmptyEdge { line: 0, name },
        HypergraphError::DuplicateEdgeName(name) => ParseError::DuplicateEdge { line: 0, name },
    })
}

pub fn emit_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    for (i, e) in h.edges().iter().enumerate() {
        let verts: Vec<&str> = e.iter().map(|v| h.vertex_name(v)).collect();
        writeln!(out, "{}({}),", h.edge_name(i), verts.join(",")).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("missing `s ghtd` header")]
    MissingHeader,
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: unknown edge `{name}`")]
    UnknownEdge { line: usize, name: String },
    #[error("line {line}: node id {id} out of range")]
    BadNodeId { line: usize, id: usize },
    #[error("line {line}: node {id} described twice")]
    DuplicateNode { line: usize, id: usize },
    #[error("node {id} has no bag line")]
    MissingBag { id: usize },
    #[error("header says {field} = {declared} but found {found}")]
    HeaderMismatch {
        field: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("tree edges do not form a tree")]
    NotATree,
}

/// Writes `td` in the decomposition format. Cover lines are written only
/// when `td` carries covers.
pub fn emit_decomposition(h: &Hypergraph, td: &TreeDecomposition) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "s ghtd {} {} {} {}",
        td.num_nodes(),
        td.max_cover().unwrap_or(0),
        h.num_vertices(),
        h.num_edges()
    )
    .unwrap();
    for t in 0..td.num_nodes() {
        write!(out, "b {}", t + 1).unwrap();
        for v in td.bag(t) {
            write!(out, " {}", h.vertex_name(v)).unwrap();
        }
        out.push('\n');
        if let Some(covers) = td.covers() {
            write!(out, "c {}", t + 1).unwrap();
            for &e in &covers[t] {
                write!(out, " {}", h.edge_name(e)).unwrap();
            }
            out.push('\n');
        }
    }
    for (a, b) in td.tree_edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

pub fn parse_decomposition(
    h: &Hypergraph,
    text: &str,
) -> Result<TreeDecomposition, DecompositionError> {
    let mut header: Option<[usize; 4]> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut covers: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let num = |s: &str| -> Result<usize, DecompositionError> {
            s.parse().map_err(|_| DecompositionError::Syntax {
                line,
                message: format!("expected a number, found `{s}`"),
            })
        };
        match toks[0] {
            "s" => {
                if header.is_some() || toks.len() != 6 || toks[1] != "ghtd" {
                    return Err(DecompositionError::MalformedHeader { line });
                }
                let mut vals = [0; 4];
                for (v, t) in vals.iter_mut().zip(&toks[2..]) {
                    *v = t
                        .parse()
                        .map_err(|_| DecompositionError::MalformedHeader { line })?;
                }
                header = Some(vals);
                bags = vec![None; vals[0]];
                covers = vec![None; vals[0]];
            }
            "b" | "c" => {
                let Some(hd) = header else {
                    return Err(DecompositionError::MissingHeader);
                };
                let id = num(toks.get(1).copied().unwrap_or(""))?;
                if id == 0 || id > hd[0] {
                    return Err(DecompositionError::BadNodeId { line, id });
                }
                if toks[0] == "b" {
                    if bags[id - 1].is_some() {
                        return Err(DecompositionError::DuplicateNode { line, id });
                    }
                    let mut bag = BitSet::new();
                    for name in &toks[2..] {
                        let v =
                            h.vertex_id(name)
                                .ok_or_else(|| DecompositionError::UnknownVertex {
                                    line,
                                    name: name.to_string(),
                                })?;
                        bag.insert(v);
                    }
                    bags[id - 1] = Some(bag);
                } else {
                    if covers[id - 1].is_some() {
                        return Err(DecompositionError::DuplicateNode { line, id });
                    }
                    let mut cover = Vec::new();
                    for name in &toks[2..] {
                        let e = h
                            .edge_id(name)
                            .ok_or_else(|| DecompositionError::UnknownEdge {
                                line,
                                name: name.to_string(),
                            })?;
                        cover.push(e);
                    }
                    cover.sort_unstable();
                    cover.dedup();
                    covers[id - 1] = Some(cover);
                }
            }
            _ => {
                let Some(hd) = header else {
                    return Err(DecompositionError::MissingHeader);
                };
                if toks.len() != 2 {
                    return Err(DecompositionError::Syntax {
                        line,
                        message: "expected `b`, `c` or a tree edge".into(),
                    });
                }
                let (a, b) = (num(toks[0])?, num(toks[1])?);
                for id in [a, b] {
                    if id == 0 || id > hd[0] {
                        return Err(DecompositionError::BadNodeId { line, id });
                    }
                }
                edges.push((a - 1, b - 1));
            }
        }
    }

    let hd = header.ok_or(DecompositionError::MissingHeader)?;
    for (field, declared, found) in [
        ("num_vertices", hd[2], h.num_vertices()),
        ("num_edges", hd[3], h.num_edges()),
    ] {
        if declared != found {
            return Err(DecompositionError::HeaderMismatch {
                field,
                declared,
                found,
            });
        }
    }
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(DecompositionError::MissingBag { id: i + 1 }))
        .collect::<Result<_, _>>()?;

    let n = bags.len();
    if n == 0 || edges.len() != n - 1 {
        return Err(DecompositionError::NotATree);
    }
    let mut td = TreeDecomposition::new(bags, &edges);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for &b in td.neighbors(a) {
            if !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(DecompositionError::NotATree);
    }

    if covers.iter().any(Option::is_some) {
        let covers: Vec<Vec<usize>> = covers.into_iter().map(Option::unwrap_or_default).collect();
        let max = covers.iter().map(Vec::len).max().unwrap_or(0);
        if max != hd[1] {
            return Err(DecompositionError::HeaderMismatch {
                field: "max_cover",
                declared: hd[1],
                found: max,
            });
        }
        td.set_covers(covers);
    }
    Ok(td)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{ghw_of, validate};

    #[test]
    fn parse_basic() {
        let h = parse_hypergraph("e1(a,b)\ne2(b,c)").unwrap();
        assert_eq!((h.num_vertices(), h.num_edges()), (3, 2));
        let h = parse_hypergraph("# comment\n\ne1(a,a,b)").unwrap();
        assert_eq!(h.edge(0).len(), 2);
        let h = parse_hypergraph("  e1 ( a , b ) ,  # tail\ne:2.x(c),").unwrap();
        assert_eq!(h.num_edges(), 2);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_hypergraph("e1()").unwrap_err(),
            ParseError::EmptyEdge {
                line: 1,
                name: "e1".into()
            }
        );
        assert!(matches!(
            parse_hypergraph("e1(a)\ne1(b)"),
            Err(ParseError::DuplicateEdge { line: 2, .. })
        ));
        assert_eq!(
            parse_hypergraph("e1(a,b\n").unwrap_err(),
            ParseError::Syntax {
                line: 1,
                column: 7,
                message: "expected `,` or `)`".into()
            }
        );
        assert!(matches!(
            parse_hypergraph("\ne1(a b)"),
            Err(ParseError::Syntax {
                line: 2,
                column: 6,
                ..
            })
        ));
    }

    #[test]
    fn decomposition_round_trip() {
        let h = parse_hypergraph("e1(a,b)\ne2(b,c)\ne3(c,d)").unwrap();
        let bags = (0..3).map(|i| h.edge(i).clone()).collect();
        let mut td = TreeDecomposition::new(bags, &[(0, 1), (1, 2)]);
        ghw_of(&h, &mut td, None);
        let text = emit_decomposition(&h, &td);
        assert!(text.starts_with("s ghtd 3 1 4 3\n"));
        assert_eq!(parse_decomposition(&h, &text).unwrap(), td);

        let single = TreeDecomposition::single(h.vertices().clone());
        assert_eq!(
            parse_decomposition(&h, &emit_decomposition(&h, &single)).unwrap(),
            single
        );
    }

    #[test]
    fn tampered_cover_is_caught() {
        let h = parse_hypergraph("e1(a,b)\ne2(b,c)").unwrap();
        let text = "s ghtd 1 1 3 2\nb 1 a b c\nc 1 e1\n";
        let td = parse_decomposition(&h, text).unwrap();
        assert!(!validate(&h, &td).is_valid());
    }

    #[test]
    fn decomposition_errors() {
        let h = parse_hypergraph("e1(a,b)").unwrap();
        assert_eq!(
            parse_decomposition(&h, "b 1 a"),
            Err(DecompositionError::MissingHeader)
        );
        assert!(matches!(
            parse_decomposition(&h, "s ghtd 1 0 2 1\nb 1 z"),
            Err(DecompositionError::UnknownVertex { .. })
        ));
        assert_eq!(
            parse_decomposition(&h, "s ghtd 2 0 2 1\nb 1 a\nb 2 b\n"),
            Err(DecompositionError::NotATree)
        );
        assert!(matches!(
            parse_decomposition(&h, "s ghtd x"),
            Err(DecompositionError::MalformedHeader { line: 1 })
        ));
    }
}
