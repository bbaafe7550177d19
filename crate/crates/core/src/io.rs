//! Edge-list and coloring file formats.
//!
//! Graphs use a DIMACS-like layout with 1-based vertex indices:
//!
//! ```text
//! c optional comments
//! p inj 3 2
//! e 1 2
//! e 2 3
//! ```
//!
//! Colorings list one edge per line as `<u> <v> <color>`, matched to the
//! graph's edges as an unordered pair.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::conflict::{Color, Coloring};
use crate::graph::{EdgeId, Graph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is at end of input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header, expected `p inj <n> <m>`")]
    MalformedHeader,
    #[error("second header line")]
    DuplicateHeader,
    #[error("missing header line")]
    MissingHeader,
    #[error("edge line before the header")]
    EdgeBeforeHeader,
    #[error("malformed edge line, expected `e <u> <v>`")]
    MalformedEdge,
    #[error("malformed coloring line, expected `<u> <v> <color>`")]
    MalformedColoring,
    #[error("unrecognized line")]
    UnknownLine,
    #[error("vertex index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("header declares {declared} edges but {found} were given")]
    CountMismatch { declared: usize, found: usize },
    #[error("no edge {0} {1} in the graph")]
    UnknownEdge(usize, usize),
    #[error("edge {0} {1} colored twice")]
    ColoredTwice(usize, usize),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn is_comment(trimmed: &str) -> bool {
    trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") || trimmed.starts_with("c\t")
}

fn vertex(token: &str, n: usize) -> Result<usize, ParseErrorKind> {
    let index: usize = token.parse().map_err(|_| ParseErrorKind::MalformedEdge)?;
    if index == 0 || index > n {
        return Err(ParseErrorKind::IndexOutOfRange { index, n });
    }
    Ok(index - 1)
}

/// Parses an edge-list document. Edge ids follow line order.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut found = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if is_comment(trimmed) {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if graph.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateHeader));
                }
                let (n, m) = match tokens.as_slice() {
                    ["p", "inj", n, m] => match (n.parse(), m.parse()) {
                        (Ok(n), Ok(m)) => (n, m),
                        _ => return Err(err(line, ParseErrorKind::MalformedHeader)),
                    },
                    _ => return Err(err(line, ParseErrorKind::MalformedHeader)),
                };
                graph = Some((Graph::new(n), m));
            }
            "e" => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| err(line, ParseErrorKind::EdgeBeforeHeader))?;
                let [_, a, b] = tokens.as_slice() else {
                    return Err(err(line, ParseErrorKind::MalformedEdge));
                };
                let n = g.vertex_bound();
                let u = vertex(a, n).map_err(|k| err(line, k))?;
                let v = vertex(b, n).map_err(|k| err(line, k))?;
                g.add_edge(VertexId(u), VertexId(v)).map_err(|e| {
                    let kind = match e {
                        GraphError::Loop(_) => ParseErrorKind::Loop(u + 1),
                        _ => ParseErrorKind::DuplicateEdge(u + 1, v + 1),
                    };
                    err(line, kind)
                })?;
                found += 1;
            }
            _ => return Err(err(line, ParseErrorKind::UnknownLine)),
        }
    }
    let (g, declared) = graph.ok_or_else(|| err(0, ParseErrorKind::MissingHeader))?;
    if declared != found {
        return Err(err(0, ParseErrorKind::CountMismatch { declared, found }));
    }
    Ok(g)
}

/// Writes `g` as an edge list. Deleted vertices are dropped and the rest
/// renumbered in order.
pub fn emit_edge_list(g: &Graph) -> String {
    let g = g.compacted();
    let mut out = String::new();
    writeln!(out, "p inj {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (_, u, v) in g.edges() {
        writeln!(out, "e {} {}", u.0 + 1, v.0 + 1).unwrap();
    }
    out
}

/// Parses a coloring of `g`. With `k` unset the palette is `1..=max color`.
/// Out-of-range colors are kept so that validation can report them.
pub fn parse_coloring(g: &Graph, text: &str, k: Option<Color>) -> Result<Coloring, ParseError> {
    let n = g.vertex_bound();
    let mut colors: BTreeMap<EdgeId, Color> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if is_comment(trimmed) {
            continue;
        }
        let [a, b, c] = trimmed.split_whitespace().collect::<Vec<_>>()[..] else {
            return Err(err(line, ParseErrorKind::MalformedColoring));
        };
        let malformed = |_| err(line, ParseErrorKind::MalformedColoring);
        let u = vertex(a, n).map_err(|k| err(line, k))?;
        let v = vertex(b, n).map_err(|k| err(line, k))?;
        let color: Color = c.parse().map_err(malformed)?;
        let e = g
            .edge_between(VertexId(u), VertexId(v))
            .ok_or_else(|| err(line, ParseErrorKind::UnknownEdge(u + 1, v + 1)))?;
        if colors.insert(e, color).is_some() {
            return Err(err(line, ParseErrorKind::ColoredTwice(u + 1, v + 1)));
        }
    }
    let k = k.unwrap_or_else(|| colors.values().copied().max().unwrap_or(0));
    let mut col = Coloring::new(k);
    for (e, c) in colors {
        col.set(e, c);
    }
    Ok(col)
}

/// Writes the colored edges of `g` in edge-id order.
pub fn emit_coloring(g: &Graph, col: &Coloring) -> String {
    let mut out = String::new();
    for (e, u, v) in g.edges() {
        if let Some(c) = col.get(e) {
            writeln!(out, "{} {} {}", u.0 + 1, v.0 + 1, c).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = parse_edge_list("p inj 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert!(g.has_edge(VertexId(0), VertexId(2)));
    }

    #[test]
    fn isolated_vertices() {
        let g = parse_edge_list("c two points\np inj 2 0\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("p inj 3 1\ne 1 5\n", 2, ParseErrorKind::IndexOutOfRange { index: 5, n: 3 }),
            ("p inj 3\n", 1, ParseErrorKind::MalformedHeader),
            ("p edge 3 1\n", 1, ParseErrorKind::MalformedHeader),
            ("e 1 2\np inj 2 1\n", 1, ParseErrorKind::EdgeBeforeHeader),
            ("p inj 2 1\nc\ne 2 2\n", 3, ParseErrorKind::Loop(2)),
            ("p inj 2 2\ne 1 2\ne 2 1\n", 3, ParseErrorKind::DuplicateEdge(2, 1)),
            ("p inj 2 2\ne 1 2\n", 0, ParseErrorKind::CountMismatch { declared: 2, found: 1 }),
            ("p inj 2 1\nx\n", 2, ParseErrorKind::UnknownLine),
            ("p inj 2 1\ne 1\n", 2, ParseErrorKind::MalformedEdge),
            ("", 0, ParseErrorKind::MissingHeader),
        ];
        for (text, line, kind) in cases {
            assert_eq!(parse_edge_list(text), Err(ParseError { line, kind }), "{text:?}");
        }
    }

    #[test]
    fn emit_renumbers_after_deletion() {
        let mut g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        g.remove_vertex(VertexId(0)).unwrap();
        assert_eq!(emit_edge_list(&g), "p inj 3 2\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn coloring_matches_unordered_pairs() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let col = parse_coloring(&g, "2 1 3\n2 3 1\n", None).unwrap();
        assert_eq!(col.k(), 3);
        assert_eq!(col.get(EdgeId(0)), Some(3));
        assert_eq!(emit_coloring(&g, &col), "1 2 3\n2 3 1\n");
    }

    #[test]
    fn coloring_errors() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            parse_coloring(&g, "1 3 1\n", None).unwrap_err().kind,
            ParseErrorKind::UnknownEdge(1, 3)
        );
        assert_eq!(
            parse_coloring(&g, "1 2 1\n2 1 2\n", None).unwrap_err(),
            err(2, ParseErrorKind::ColoredTwice(2, 1))
        );
        assert_eq!(
            parse_coloring(&g, "1 2\n", None).unwrap_err().kind,
            ParseErrorKind::MalformedColoring
        );
    }
}
