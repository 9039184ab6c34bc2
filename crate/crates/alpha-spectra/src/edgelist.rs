//! Plain-text edge lists: `n a` header, then one `u v` arc per line.
//!
//! Lines starting with `#` are comments and may appear anywhere. Vertex
//! indices are 0-based. Errors carry the 1-based physical line number.

use crate::digraph::Digraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: expected header \"n a\"")]
    MalformedHeader(usize),
    #[error("line {0}: expected arc line \"u v\"")]
    MalformedArc(usize),
    #[error("line {line}: loop arc ({v}, {v}) is not allowed")]
    LoopArc { line: usize, v: usize },
    #[error("line {line}: duplicate arc ({u}, {v})")]
    DuplicateArc { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex index {v} out of range for order {n}")]
    IndexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {0}: vertex count must be at least 1")]
    EmptyVertexSet(usize),
    #[error("expected {expected} arc lines, found {found}")]
    ArcCountMismatch { expected: usize, found: usize },
}

/// Parses the edge-list document format into a digraph.
pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph: Option<Digraph> = None;
    let mut arcs_seen = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match header {
            None => {
                let mut it = line.split_whitespace();
                let n: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(ParseError::MalformedHeader(lineno))?;
                let a: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(ParseError::MalformedHeader(lineno))?;
                if it.next().is_some() {
                    return Err(ParseError::MalformedHeader(lineno));
                }
                if n == 0 {
                    return Err(ParseError::EmptyVertexSet(lineno));
                }
                header = Some((n, a));
                graph = Some(Digraph::discrete(n).expect("n >= 1"));
            }
            Some((n, a)) => {
                let mut it = line.split_whitespace();
                let u: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(ParseError::MalformedArc(lineno))?;
                let v: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(ParseError::MalformedArc(lineno))?;
                if it.next().is_some() {
                    return Err(ParseError::MalformedArc(lineno));
                }
                if u >= n {
                    return Err(ParseError::IndexOutOfRange { line: lineno, v: u, n });
                }
                if v >= n {
                    return Err(ParseError::IndexOutOfRange { line: lineno, v, n });
                }
                if u == v {
                    return Err(ParseError::LoopArc { line: lineno, v: u });
                }
                let g = graph.as_mut().expect("set with header");
                if g.arc(u, v) {
                    return Err(ParseError::DuplicateArc { line: lineno, u, v });
                }
                arcs_seen += 1;
                if arcs_seen > a {
                    return Err(ParseError::ArcCountMismatch { expected: a, found: arcs_seen });
                }
                g.add_arc(u, v).expect("validated above");
            }
        }
    }

    let (_, a) = header.ok_or(ParseError::MalformedHeader(1))?;
    if arcs_seen != a {
        return Err(ParseError::ArcCountMismatch { expected: a, found: arcs_seen });
    }
    Ok(graph.expect("set with header"))
}

/// Renders a digraph in the same format `parse_digraph` accepts, arcs in
/// row-major order, LF line endings.
pub fn emit_digraph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.arc_count());
    for (u, v) in g.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_path() {
        let g = parse_digraph("2 1\n0 1\n").unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.arc(0, 1));
        assert!(!g.arc(1, 0));
    }

    #[test]
    fn parses_directed_triangle() {
        let g = parse_digraph("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.arc_count(), 3);
        assert!(g.classify_structure().is_permutation_digraph);
    }

    #[test]
    fn duplicate_arc_reports_line() {
        let err = parse_digraph("3 3\n0 1\n1 2\n1 2\n").unwrap_err();
        assert_eq!(err, ParseError::DuplicateArc { line: 4, u: 1, v: 2 });
    }

    #[test]
    fn loop_and_range_errors_carry_lines() {
        assert_eq!(
            parse_digraph("2 1\n1 1\n").unwrap_err(),
            ParseError::LoopArc { line: 2, v: 1 }
        );
        assert_eq!(
            parse_digraph("2 1\n0 5\n").unwrap_err(),
            ParseError::IndexOutOfRange { line: 2, v: 5, n: 2 }
        );
    }

    #[test]
    fn comments_do_not_shift_line_numbers() {
        let g = parse_digraph("# a triangle\n3 3\n0 1\n# middle\n1 2\n2 0\n").unwrap();
        assert_eq!(g.arc_count(), 3);
        let err = parse_digraph("# c\n2 1\n# c\n1 1\n").unwrap_err();
        assert_eq!(err, ParseError::LoopArc { line: 4, v: 1 });
    }

    #[test]
    fn arc_count_mismatch() {
        assert_eq!(
            parse_digraph("3 2\n0 1\n").unwrap_err(),
            ParseError::ArcCountMismatch { expected: 2, found: 1 }
        );
        assert!(matches!(
            parse_digraph("3 1\n0 1\n1 2\n"),
            Err(ParseError::ArcCountMismatch { .. })
        ));
    }

    #[test]
    fn emit_then_parse_is_identity() {
        let g = Digraph::from_arcs(5, &[(0, 3), (3, 0), (2, 4), (1, 0)]).unwrap();
        assert_eq!(parse_digraph(&emit_digraph(&g)).unwrap(), g);
    }
}
