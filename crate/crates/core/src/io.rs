//! Text interchange formats.
//!
//! Edge lists: first non-comment line `n m`, then exactly `m` lines `u v`
//! with 0-indexed ids. Lines starting with `#` and blank lines are skipped;
//! fields are whitespace-separated and edge order is irrelevant.
//!
//! Mappings: one `template_id base_id` pair per line, covering every
//! template id `0..k` exactly once.
//!
//! Subsets: whitespace-separated vertex ids, any number per line.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Upper bound on `n` accepted from untrusted headers.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 24;

/// Yields `(line_number, fields)` for every meaningful line.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, std::str::SplitWhitespace<'_>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace()))
        }
    })
}

fn parse_field(line: usize, field: Option<&str>, what: &str) -> Result<usize> {
    let field = field.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    field.parse::<usize>().map_err(|_| {
        Error::parse(
            line,
            format!("{what} {field:?} is not a non-negative integer"),
        )
    })
}

fn expect_end(line: usize, mut fields: std::str::SplitWhitespace<'_>) -> Result<()> {
    match fields.next() {
        Some(extra) => Err(Error::parse(
            line,
            format!("unexpected trailing field {extra:?}"),
        )),
        None => Ok(()),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    parse_edge_list_with_limit(text, DEFAULT_MAX_VERTICES)
}

pub fn parse_edge_list_with_limit(text: &str, max_vertices: usize) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, mut header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
    let n = parse_field(hline, header.next(), "vertex count")?;
    let m = parse_field(hline, header.next(), "edge count")?;
    expect_end(hline, header)?;
    if n > max_vertices {
        return Err(Error::parse(
            hline,
            format!("vertex count {n} exceeds limit {max_vertices}"),
        ));
    }
    let mut edges = Vec::with_capacity(m.min(1 << 20));
    for (line, mut fields) in lines {
        if edges.len() == m {
            return Err(Error::parse(
                line,
                format!("more than the declared {m} edges"),
            ));
        }
        let u = parse_field(line, fields.next(), "endpoint")?;
        let v = parse_field(line, fields.next(), "endpoint")?;
        expect_end(line, fields)?;
        if u >= n || v >= n {
            return Err(Error::parse(line, format!("endpoint out of range 0..{n}")));
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            hline,
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    Graph::from_edge_list(n, &edges)
}

/// Canonical form: header, then edges `u < v` in lexicographic order.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

/// Parses a mapping file into `phi[template_id] = base_id`.
pub fn parse_mapping(text: &str) -> Result<Vec<usize>> {
    let mut pairs = Vec::new();
    for (line, mut fields) in content_lines(text) {
        let t = parse_field(line, fields.next(), "template id")?;
        let b = parse_field(line, fields.next(), "base id")?;
        expect_end(line, fields)?;
        pairs.push((line, t, b));
    }
    let k = pairs.len();
    let mut phi = vec![usize::MAX; k];
    for (line, t, b) in pairs {
        if t >= k {
            return Err(Error::parse(
                line,
                format!("template id {t} outside 0..{k}"),
            ));
        }
        if phi[t] != usize::MAX {
            return Err(Error::parse(line, format!("template id {t} mapped twice")));
        }
        phi[t] = b;
    }
    let mut image = phi.clone();
    image.sort_unstable();
    if image.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::input("mapping is not injective"));
    }
    Ok(phi)
}

pub fn write_mapping<W: Write>(phi: &[usize], mut out: W) -> io::Result<()> {
    for (t, b) in phi.iter().enumerate() {
        writeln!(out, "{t} {b}")?;
    }
    Ok(())
}

pub fn parse_subset(text: &str) -> Result<VertexSet> {
    let mut ids = Vec::new();
    for (line, fields) in content_lines(text) {
        for f in fields {
            ids.push(parse_field(line, Some(f), "vertex id")?);
        }
    }
    Ok(VertexSet::new(ids))
}

pub fn write_subset<W: Write>(set: &VertexSet, mut out: W) -> io::Result<()> {
    let line: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    writeln!(out, "{}", line.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments_and_any_order() {
        let g = parse_edge_list("# a path\n3 2\n\n2 1\n# mid\n  0 1\n").unwrap();
        assert_eq!(g, Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap());
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "3",
            "3 1\n0 3\n",
            "3 1\n1 1\n",
            "3 2\n0 1\n",
            "3 1\n0 1\n1 2\n",
            "3 1\n0 x\n",
            "3 1 7\n0 1\n",
            "3 1\n0 1 2\n",
            "-3 0\n",
        ] {
            assert!(parse_edge_list(bad).is_err(), "{bad:?} should fail");
        }
        assert!(parse_edge_list_with_limit("100 0\n", 10).is_err());
    }

    #[test]
    fn mapping_round_trip_and_errors() {
        let phi = vec![4, 0, 2];
        let mut buf = Vec::new();
        write_mapping(&phi, &mut buf).unwrap();
        assert_eq!(
            parse_mapping(std::str::from_utf8(&buf).unwrap()).unwrap(),
            phi
        );

        assert!(parse_mapping("0 1\n0 2\n").is_err());
        assert!(parse_mapping("0 1\n2 2\n").is_err());
        assert!(parse_mapping("0 1\n1 1\n").is_err());
    }

    #[test]
    fn subsets() {
        let s = parse_subset("# S\n3 1\n2 1\n").unwrap();
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert!(parse_subset("1 z").is_err());
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(n in 1usize..40, raw in proptest::collection::vec((0usize..40, 0usize..40), 0..120)) {
            let edges: Vec<_> = raw.into_iter()
                .map(|(u, v)| (u % n, v % n))
                .filter(|(u, v)| u != v)
                .collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let text = edge_list_string(&g);
            let h = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&g, &h);
            prop_assert_eq!(edge_list_string(&h), text);
        }

        #[test]
        fn parsers_reject_garbage_gracefully(text in "[0-9 #\n\t-]{0,80}|\\PC{0,40}") {
            if let Ok(g) = parse_edge_list_with_limit(&text, 1 << 12) {
                g.check_invariants().unwrap();
            }
            let _ = parse_mapping(&text);
            let _ = parse_subset(&text);
        }
    }
}
