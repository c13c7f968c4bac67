//! The line-oriented edge-list format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted from text input.
pub const MAX_PARSE_VERTICES: usize = 1 << 20;

/// Parses an edge list. Duplicate edges are rejected unless `lenient` is set.
pub fn parse_edge_list(text: &str, lenient: bool) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let (n, m) = parse_pair(hline, header)?;
    if n > MAX_PARSE_VERTICES {
        return Err(Error::Parse { line: hline, msg: format!("{n} vertices exceeds {MAX_PARSE_VERTICES}") });
    }

    let mut pairs = Vec::with_capacity(m.min(1 << 16));
    for (line, body) in lines {
        if pairs.len() == m {
            return Err(Error::Parse { line, msg: format!("more than {m} edge lines") });
        }
        let (u, v) = parse_pair(line, body)?;
        if u >= n || v >= n {
            return Err(Error::Parse { line, msg: format!("vertex out of range 0..{n}") });
        }
        if u == v {
            return Err(Error::Parse { line, msg: format!("loop at vertex {u}") });
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("expected {m} edges, found {}", pairs.len()),
        });
    }
    if lenient {
        Graph::from_edges_lenient(n, &pairs)
    } else {
        Graph::from_edges(n, &pairs)
    }
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize)> {
    let mut it = body.split_ascii_whitespace();
    let mut num = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse { line, msg: "expected two integers".into() })?;
        if !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse { line, msg: format!("not a decimal integer: {tok:?}") });
        }
        tok.parse().map_err(|e| Error::Parse { line, msg: format!("{e}") })
    };
    let a = num()?;
    let b = num()?;
    if it.next().is_some() {
        return Err(Error::Parse { line, msg: "trailing tokens".into() });
    }
    Ok((a, b))
}

/// Serialises a graph: header line then one sorted edge per line, LF-terminated.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn parses_with_comments() {
        let g = parse_edge_list("# triangle\n3 3\n0 1\n1 2\n# mid\n0 2\n", false).unwrap();
        assert_eq!(g, Family::Cycle(3).generate().unwrap());
    }

    #[test]
    fn writes_canonical_text() {
        let g = Family::Path(3).generate().unwrap();
        assert_eq!(write_edge_list(&g), "3 2\n0 1\n1 2\n");
        assert_eq!(parse_edge_list(&write_edge_list(&g), false).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "3",
            "3 1\n0 0\n",
            "3 1\n0 3\n",
            "3 2\n0 1\n",
            "3 1\n0 1\n1 2\n",
            "3 1\n0 -1\n",
            "2 1\n0 1 7\n",
            "2 2\n0 1\n1 0\n",
        ] {
            assert!(parse_edge_list(bad, false).is_err(), "accepted {bad:?}");
        }
        assert_eq!(parse_edge_list("2 2\n0 1\n1 0\n", true).unwrap().m(), 1);
    }

    #[test]
    fn huge_header_is_an_error_not_an_allocation() {
        assert!(parse_edge_list("5 18446744073709551615\n0 1\n", false).is_err());
        assert!(parse_edge_list("99999999999999999999999 0\n", false).is_err());
        assert!(parse_edge_list("4000000000 0\n", false).is_err());
    }
}
