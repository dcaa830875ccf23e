//! Plain-text edge lists.
//!
//! ```text
//! n m
//! <edge 1: ascending vertex indices separated by single spaces>
//! ...
//! <edge m>
//! ```
//!
//! An empty edge line encodes the empty set. Files are UTF-8 with LF line
//! endings; one trailing newline after the last edge is optional.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use super::{Hypergraph, VertexSet};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Hypergraph> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or("");
    let mut fields = header.split(' ');
    let (n, m) = match (fields.next(), fields.next(), fields.next()) {
        (Some(a), Some(b), None) => {
            let n: usize = a
                .parse()
                .map_err(|_| parse_error(1, format!("bad vertex count {a:?}")))?;
            let m: usize = b
                .parse()
                .map_err(|_| parse_error(1, format!("bad edge count {b:?}")))?;
            (n, m)
        }
        _ => return Err(parse_error(1, "header must be `n m`")),
    };

    let mut edges = Vec::with_capacity(m);
    for idx in 0..m {
        let lineno = idx + 2;
        let line = lines
            .next()
            .ok_or_else(|| parse_error(lineno, format!("expected {m} edges, found {idx}")))?;
        let mut edge = VertexSet::new();
        let mut last: Option<usize> = None;
        if !line.is_empty() {
            for tok in line.split(' ') {
                let v: usize = tok
                    .parse()
                    .map_err(|_| parse_error(lineno, format!("bad vertex {tok:?}")))?;
                if v >= n {
                    return Err(parse_error(lineno, format!("vertex {v} >= n = {n}")));
                }
                if last.is_some_and(|l| l >= v) {
                    return Err(parse_error(lineno, "vertices must be strictly ascending"));
                }
                last = Some(v);
                edge.insert(v);
            }
        }
        edges.push((lineno, edge));
    }
    // one trailing newline leaves a single empty remainder
    let rest: Vec<&str> = lines.collect();
    if let Some(extra) = rest.first().filter(|_| rest != [""]) {
        return Err(parse_error(
            m + 2,
            format!("unexpected content after {m} edges: {extra:?}"),
        ));
    }

    edges.sort_by(|a, b| a.1.cmp(&b.1));
    for w in edges.windows(2) {
        if w[0].1 == w[1].1 {
            let line = w[0].0.max(w[1].0);
            return Err(parse_error(line, format!("duplicate edge {}", w[1].1)));
        }
    }
    Ok(Hypergraph::from_sorted_unchecked(
        n,
        edges.into_iter().map(|(_, e)| e).collect(),
    ))
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_edge_list(&fs::read_to_string(path)?)
}

/// Writes edges in colex order, one per line, with a trailing newline.
pub fn write_edge_list<W: Write>(h: &Hypergraph, mut out: W) -> io::Result<()> {
    writeln!(out, "{} {}", h.n(), h.len())?;
    let mut line = String::new();
    for e in h.edges() {
        line.clear();
        for (i, v) in e.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&v.to_string());
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn to_edge_list_string(h: &Hypergraph) -> String {
    let mut buf = Vec::new();
    write_edge_list(h, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge lists are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_empty_edge() {
        let h = Hypergraph::from_edge_lists(3, &[vec![], vec![0, 2], vec![1]]).unwrap();
        let text = to_edge_list_string(&h);
        assert_eq!(text, "3 3\n\n1\n0 2\n");
        assert_eq!(parse_edge_list(&text).unwrap(), h);
    }

    #[test]
    fn empty_edge_as_last_line() {
        let h = parse_edge_list("2 2\n0 1\n").unwrap();
        assert_eq!(h.len(), 2);
        assert!(h.contains_edge(&VertexSet::new()));
    }

    #[test]
    fn zero_edges() {
        let h = parse_edge_list("5 0\n").unwrap();
        assert_eq!((h.n(), h.len()), (5, 0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("x 1\n0\n", 1),
            ("3 2\n0 1\n1 0\n", 3),
            ("3 2\n0 1\n0 a\n", 3),
            ("3 1\n0 5\n", 2),
            ("3 2\n0 1\n0 1\n", 3),
            ("3 3\n0\n", 4),
            ("3 1\n0\n1\n", 3),
            ("3 1\n0 1\r\n", 2),
        ];
        for (text, line) in cases {
            match parse_edge_list(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} -> {other:?}"),
            }
        }
    }
}
