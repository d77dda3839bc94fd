//! Plain-text instance files.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v w      (m lines, 0-based endpoints, nonnegative decimal length)
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use centdian_core::{Edge, Error as CoreError, Graph};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

fn parse_err(line: usize, reason: impl Into<String>) -> CliError {
    CliError::Parse { line, reason: reason.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} {tok:?}")))
}

/// Parses and validates an instance. Blank lines are ignored like comments.
pub fn parse_instance(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let mut toks = header.split_whitespace();
    let n: usize = field(toks.next(), hline, "vertex count")?;
    let m: usize = field(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(hline, "header must be exactly `n m`"));
    }
    if n == 0 {
        return Err(parse_err(hline, "vertex count must be at least 1"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    for (line, body) in lines.by_ref().take(m) {
        let mut toks = body.split_whitespace();
        let u: usize = field(toks.next(), line, "endpoint u")?;
        let v: usize = field(toks.next(), line, "endpoint v")?;
        let w: f64 = field(toks.next(), line, "length w")?;
        if toks.next().is_some() {
            return Err(parse_err(line, "edge line must be exactly `u v w`"));
        }
        for x in [u, v] {
            if x >= n {
                return Err(parse_err(line, format!("vertex {x} out of range for n = {n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop on vertex {u}")));
        }
        if !w.is_finite() {
            return Err(parse_err(line, format!("length {w} is not finite")));
        }
        if w < 0.0 {
            return Err(CliError::NegativeWeight { line, u, v, w });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, format!("duplicate edge ({u}, {v})")));
        }
        edges.push(Edge::new(u, v, w));
    }
    if edges.len() < m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, format!("unexpected content after {m} edges")));
    }
    Graph::new(n, edges).map_err(|e| match e {
        CoreError::DisconnectedGraph { vertex } => CliError::DisconnectedGraph { vertex },
        other => CliError::Core(other),
    })
}

/// Writes an instance, one `# ` line per comment, edges in stored order.
pub fn write_instance(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", g.n(), g.edges().len());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
    }
    out
}

/// SHA-256 of the canonical edge list (endpoints ordered, edges sorted).
pub fn digest(g: &Graph) -> String {
    let mut edges: Vec<(usize, usize, f64)> =
        g.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v), e.w)).collect();
    edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(a.2.total_cmp(&b.2)));
    let mut canon = format!("{}\n", g.n());
    for (u, v, w) in edges {
        let _ = writeln!(canon, "{u} {v} {w}");
    }
    hex::encode(Sha256::digest(canon.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = parse_instance("3 3\n0 1 1\n1 2 1\n0 2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges()[2], Edge::new(0, 2, 3.0));
    }

    #[test]
    fn comments_and_decimals() {
        let g = parse_instance("# a comment\n2 1\n# another\n0 1 2.5\n").unwrap();
        assert_eq!(g.edges()[0].w, 2.5);
    }

    #[test]
    fn negative_weight() {
        let err = parse_instance("2 1\n0 1 -1\n").unwrap_err();
        assert!(matches!(err, CliError::NegativeWeight { line: 2, .. }), "{err}");
    }

    #[test]
    fn disconnected() {
        let err = parse_instance("4 2\n0 1 1\n2 3 1\n").unwrap_err();
        assert!(matches!(err, CliError::DisconnectedGraph { vertex: 2 }));
    }

    #[test]
    fn line_numbers_in_errors() {
        let cases = [
            ("2 1\n0 1\n", 2),
            ("2 1\n0 5 1\n", 2),
            ("3 2\n0 1 1\n1 0 4\n", 3),
            ("2 1\n1 1 1\n", 2),
            ("x 1\n", 1),
            ("2 1\n0 1 1\n1 0 1\n", 3),
            ("2 1\n0 1 nan\n", 2),
        ];
        for (text, want) in cases {
            match parse_instance(text) {
                Err(CliError::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_instance("").is_err());
        assert!(parse_instance("3 3\n0 1 1\n").is_err());
    }

    #[test]
    fn write_then_parse() {
        let text = "3 3\n0 1 1\n1 2 1\n0 2 3\n";
        let g = parse_instance(text).unwrap();
        assert_eq!(write_instance(&g, &[]), text);
        let commented = write_instance(&g, &["hello".into()]);
        assert!(commented.starts_with("# hello\n"));
        assert_eq!(parse_instance(&commented).unwrap(), g);
    }

    #[test]
    fn digest_ignores_edge_order_and_orientation() {
        let a = parse_instance("3 2\n0 1 1\n1 2 4\n").unwrap();
        let b = parse_instance("3 2\n2 1 4\n1 0 1\n").unwrap();
        let c = parse_instance("3 2\n0 1 1\n1 2 5\n").unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_ne!(digest(&a), digest(&c));
        assert_eq!(digest(&a).len(), 64);
    }
}
