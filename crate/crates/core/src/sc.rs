//! The `.sc` text format.
//!
//! ```text
//! # comment
//! vertices 5
//! 0 1 2
//! 1 2 3
//! ```
//!
//! The first non-comment line declares the vertex count; every further
//! non-blank line lists one facet as 0-based vertex indices. An empty facet
//! (the irrelevant complex) is written as `{}`.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens paired with their 1-based starting column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses `.sc` text. Vertex coverage is enforced unless `relaxed`.
pub fn parse_sc(text: &str, relaxed: bool) -> Result<SimplicialComplex> {
    let mut n: Option<usize> = None;
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        if toks.is_empty() {
            continue;
        }
        let Some(nv) = n else {
            let (col, head) = toks[0];
            if head != "vertices" {
                return Err(parse_err(lineno, col, "expected `vertices <n>`"));
            }
            let Some(&(col, count)) = toks.get(1) else {
                return Err(parse_err(lineno, col + head.len(), "missing vertex count"));
            };
            let value = count
                .parse::<usize>()
                .map_err(|_| parse_err(lineno, col, format!("invalid vertex count `{count}`")))?;
            if let Some(&(col, _)) = toks.get(2) {
                return Err(parse_err(lineno, col, "trailing input after vertex count"));
            }
            n = Some(value);
            continue;
        };
        if toks.len() == 1 && toks[0].1 == "{}" {
            facets.push(Vec::new());
            continue;
        }
        let mut facet = Vec::with_capacity(toks.len());
        for (col, tok) in toks {
            let v = tok
                .parse::<usize>()
                .map_err(|_| parse_err(lineno, col, format!("invalid vertex `{tok}`")))?;
            if v >= nv {
                return Err(parse_err(
                    lineno,
                    col,
                    format!("vertex {v} out of range for {nv} vertices"),
                ));
            }
            facet.push(v);
        }
        facets.push(facet);
    }
    let Some(n) = n else {
        return Err(parse_err(1, 1, "missing `vertices <n>` header"));
    };
    if relaxed {
        SimplicialComplex::from_facets_relaxed(n, facets)
    } else {
        SimplicialComplex::from_facets(n, facets)
    }
}

/// Serializes a complex; facets appear in lexicographic order.
pub fn to_sc(cx: &SimplicialComplex) -> String {
    let mut out = format!("vertices {}\n", cx.n());
    for f in cx.facets() {
        if f.is_empty() {
            out.push_str("{}\n");
        } else {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}
