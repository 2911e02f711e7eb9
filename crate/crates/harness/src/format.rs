//! Plain-text instance, assignment and trace files.
//!
//! Instance files hold `n m` on the first non-blank line and then `m`
//! non-blank lines `a b w` with 1-based endpoints. Assignment files hold one
//! line of `n` space-separated values in {-1, 1}. Trace files hold one
//! `iteration objective` line per improvement.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use maxcut_core::{CutAssignment, Edge, Graph, Improvement};

use crate::error::HarnessError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedToken(String),
    WrongTokenCount { expected: usize, found: usize },
    EndpointOutOfRange { endpoint: u64, num_vertices: usize },
    SelfLoop(u64),
    MissingHeader,
    TooFewEdges { expected: usize, found: usize },
    TooManyEdges { expected: usize },
    TooManyVertices(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            ParseErrorKind::MalformedToken(t) => write!(f, "malformed token {t:?}"),
            ParseErrorKind::WrongTokenCount { expected, found } => {
                write!(f, "expected {expected} fields, found {found}")
            }
            ParseErrorKind::EndpointOutOfRange { endpoint, num_vertices } => {
                write!(f, "endpoint {endpoint} outside 1..={num_vertices}")
            }
            ParseErrorKind::SelfLoop(v) => write!(f, "self-loop on vertex {v}"),
            ParseErrorKind::MissingHeader => f.write_str("missing \"n m\" header"),
            ParseErrorKind::TooFewEdges { expected, found } => {
                write!(f, "header declares {expected} edges, file has {found}")
            }
            ParseErrorKind::TooManyEdges { expected } => {
                write!(f, "header declares {expected} edges, file has more")
            }
            ParseErrorKind::TooManyVertices(n) => write!(f, "{n} vertices is more than supported"),
        }
    }
}

impl std::error::Error for ParseError {}

fn fields<const N: usize>(line: usize, text: &str) -> Result<[&str; N], ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    tokens
        .try_into()
        .map_err(|t: Vec<&str>| ParseError { line, kind: ParseErrorKind::WrongTokenCount { expected: N, found: t.len() } })
}

fn number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError { line, kind: ParseErrorKind::MalformedToken(token.to_owned()) })
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::MissingHeader })?;
    let [n, m] = fields::<2>(header_line, header)?;
    let n: usize = number(header_line, n)?;
    let m: usize = number(header_line, m)?;
    if n > u32::MAX as usize {
        return Err(ParseError { line: header_line, kind: ParseErrorKind::TooManyVertices(n) });
    }

    let endpoint = |line: usize, token: &str| -> Result<u32, ParseError> {
        let a: u64 = number(line, token)?;
        if a == 0 || a > n as u64 {
            return Err(ParseError { line, kind: ParseErrorKind::EndpointOutOfRange { endpoint: a, num_vertices: n } });
        }
        Ok((a - 1) as u32)
    };

    let mut edges = Vec::with_capacity(m.min(1 << 24));
    let mut last_line = header_line;
    for (line, text) in lines {
        if edges.len() == m {
            return Err(ParseError { line, kind: ParseErrorKind::TooManyEdges { expected: m } });
        }
        let [a, b, w] = fields::<3>(line, text)?;
        let u = endpoint(line, a)?;
        let v = endpoint(line, b)?;
        if u == v {
            return Err(ParseError { line, kind: ParseErrorKind::SelfLoop(u64::from(u) + 1) });
        }
        edges.push(Edge::new(u, v, number(line, w)?));
        last_line = line;
    }
    if edges.len() < m {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::TooFewEdges { expected: m, found: edges.len() },
        });
    }

    // endpoints and self-loops are already checked
    Ok(Graph::new(n, edges).expect("validated edges"))
}

pub fn read_graph(path: &Path) -> Result<Graph, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_graph(&text).map_err(|source| HarnessError::Parse { path: path.to_owned(), source })
}

pub fn write_graph<W: Write>(graph: &Graph, mut sink: W) -> io::Result<()> {
    writeln!(sink, "{} {}", graph.num_vertices(), graph.num_edges())?;
    for e in graph.edges() {
        writeln!(sink, "{} {} {}", e.u + 1, e.v + 1, e.weight)?;
    }
    sink.flush()
}

/// Space-separated sides without a trailing newline.
pub fn format_assignment(assignment: &CutAssignment) -> String {
    let mut out = String::with_capacity(3 * assignment.len());
    for (i, s) in assignment.as_slice().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(if *s < 0 { "-1" } else { "1" });
    }
    out
}

pub fn write_assignment<W: Write>(assignment: &CutAssignment, mut sink: W) -> io::Result<()> {
    writeln!(sink, "{}", format_assignment(assignment))?;
    sink.flush()
}

pub fn parse_assignment(text: &str) -> Result<CutAssignment, ParseError> {
    let mut sides = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            match token {
                "1" | "+1" => sides.push(1),
                "-1" => sides.push(-1),
                other => {
                    return Err(ParseError { line: i + 1, kind: ParseErrorKind::MalformedToken(other.to_owned()) })
                }
            }
        }
    }
    Ok(CutAssignment::from_sides(sides).expect("only -1 and 1 are pushed"))
}

pub fn format_improvement(event: &Improvement) -> String {
    format!("{} {}", event.iteration, event.objective)
}

pub fn write_trace<W: Write>(trace: &[Improvement], mut sink: W) -> io::Result<()> {
    for event in trace {
        writeln!(sink, "{}", format_improvement(event))?;
    }
    sink.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn err(text: &str) -> ParseError {
        parse_graph(text).unwrap_err()
    }

    #[test]
    fn parses_examples() {
        let g = parse_graph("3 2\n1 2 1\n2 3 1\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges(), &[Edge::new(0, 1, 1), Edge::new(1, 2, 1)]);

        let g = parse_graph("2 0\n").unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn tolerates_blank_lines_whitespace_and_parallel_edges() {
        let g = parse_graph("\n  3 3  \n\n1 2 -4\n\t1 2 5 \n3 1 2\n\n").unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1, -4), Edge::new(0, 1, 5), Edge::new(2, 0, 2)]);
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn reports_errors_with_line_numbers() {
        assert_eq!(err(""), ParseError { line: 1, kind: ParseErrorKind::MissingHeader });
        assert_eq!(err("3 x\n").kind, ParseErrorKind::MalformedToken("x".into()));
        assert_eq!(err("3 1 7\n"), ParseError { line: 1, kind: ParseErrorKind::WrongTokenCount { expected: 2, found: 3 } });
        assert_eq!(err("3 1\n\n1 2\n"), ParseError { line: 3, kind: ParseErrorKind::WrongTokenCount { expected: 3, found: 2 } });
        assert_eq!(
            err("3 1\n1 4 1\n"),
            ParseError { line: 2, kind: ParseErrorKind::EndpointOutOfRange { endpoint: 4, num_vertices: 3 } }
        );
        assert_eq!(err("3 1\n0 2 1\n").kind, ParseErrorKind::EndpointOutOfRange { endpoint: 0, num_vertices: 3 });
        assert_eq!(err("3 1\n2 2 1\n"), ParseError { line: 2, kind: ParseErrorKind::SelfLoop(2) });
        assert_eq!(err("3 2\n1 2 1\n").kind, ParseErrorKind::TooFewEdges { expected: 2, found: 1 });
        assert_eq!(err("3 1\n1 2 1\n2 3 1\n"), ParseError { line: 3, kind: ParseErrorKind::TooManyEdges { expected: 1 } });
        assert_eq!(err("3 1\n1 2 1.5\n").kind, ParseErrorKind::MalformedToken("1.5".into()));
    }

    #[test]
    fn comment_lines_are_rejected() {
        assert_eq!(err("# comment\n2 1\n1 2 1\n").kind, ParseErrorKind::MalformedToken("#".into()));
        assert_eq!(err("2 1\n% x y\n").kind, ParseErrorKind::MalformedToken("%".into()));
    }

    #[test]
    fn assignment_formatting() {
        let a = CutAssignment::from_sides(vec![1, -1]).unwrap();
        assert_eq!(format_assignment(&a), "1 -1");
        assert_eq!(format_assignment(&CutAssignment::all_one(0)), "");
        let mut buf = Vec::new();
        write_assignment(&a, &mut buf).unwrap();
        assert_eq!(buf, b"1 -1\n");
        assert!(parse_assignment("1 0").is_err());
    }

    #[test]
    fn trace_lines() {
        let mut buf = Vec::new();
        write_trace(&[Improvement { iteration: 0, objective: 3 }, Improvement { iteration: 17, objective: 5 }], &mut buf)
            .unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 3\n17 5\n");
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..20).prop_flat_map(|n| {
            let edge = (0..n as u32, 0..n as u32, any::<i64>())
                .prop_filter("no self-loops", |(u, v, _)| u != v)
                .prop_map(|(u, v, w)| Edge::new(u, v, w));
            prop::collection::vec(edge, 0..40).prop_map(move |e| Graph::new(n, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn graph_write_parse_roundtrip(g in arb_graph()) {
            let mut buf = Vec::new();
            write_graph(&g, &mut buf).unwrap();
            let back = parse_graph(std::str::from_utf8(&buf).unwrap()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn assignment_write_parse_roundtrip(sides in prop::collection::vec(prop_oneof![Just(-1i8), Just(1i8)], 0..200)) {
            let a = CutAssignment::from_sides(sides).unwrap();
            let mut buf = Vec::new();
            write_assignment(&a, &mut buf).unwrap();
            prop_assert_eq!(parse_assignment(std::str::from_utf8(&buf).unwrap()).unwrap(), a);
        }
    }
}
