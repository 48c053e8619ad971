//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```

use std::fmt::Write;

use super::{Graph, GraphError};

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_err = |line: usize, reason: String| GraphError::Parse { line, reason };
    let pair = |line: usize, s: &str| -> Result<(usize, usize), GraphError> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(line, format!("expected two integers, got {s:?}")));
        }
        let num = |f: &str| {
            f.parse::<usize>()
                .map_err(|_| parse_err(line, format!("not a non-negative integer: {f:?}")))
        };
        Ok((num(fields[0])?, num(fields[1])?))
    };

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing header line \"n m\"".into()))?;
    let (n, m) = pair(header_line, header)?;
    let mut g = Graph::new(n);
    let mut count = 0;
    for (line, l) in lines {
        let (u, v) = pair(line, l)?;
        if u >= v {
            return Err(parse_err(line, format!("edge {u} {v} must satisfy u < v")));
        }
        g.add_edge(u, v)
            .map_err(|e| parse_err(line, e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges, found {count}"),
        ));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
