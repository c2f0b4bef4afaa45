use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

const FORMAT: &str = "matrix market";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        format: FORMAT,
        line,
        message: message.into(),
    }
}

/// Writes a symmetric pattern coordinate file; only the strict lower triangle
/// is stored, 1-based.
pub fn write_matrix_market(g: &Graph) -> String {
    let n = g.order();
    let m = g.edge_count().value();
    let mut out = String::with_capacity(64 + 12 * m);
    out.push_str("%%MatrixMarket matrix coordinate pattern symmetric\n");
    out.push_str(&format!("{n} {n} {m}\n"));
    for col in 0..n {
        for row in col + 1..n {
            if g.has_edge(row, col) {
                out.push_str(&format!("{} {}\n", row + 1, col + 1));
            }
        }
    }
    out
}

/// Reads a coordinate Matrix Market file as a simple graph.
///
/// `symmetric` files may store either triangle; `general` files must list both
/// orientations of every edge. Value columns (integer/real) must be exactly 1.
/// Diagonal entries and repeated entries are rejected.
pub fn read_matrix_market(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(1, "missing `%%MatrixMarket matrix` banner"));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_err(1, "only coordinate storage is supported"));
    }
    let has_value = match tokens[3].as_str() {
        "pattern" => false,
        "integer" | "real" => true,
        other => return Err(parse_err(1, format!("unsupported field `{other}`"))),
    };
    let symmetric = match tokens[4].as_str() {
        "symmetric" => true,
        "general" => false,
        other => return Err(parse_err(1, format!("unsupported symmetry `{other}`"))),
    };

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = body
        .next()
        .ok_or_else(|| parse_err(2, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| parse_err(size_line, format!("bad size line: {e}")))?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(parse_err(size_line, "size line needs `rows cols entries`"));
    };
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }

    let mut g = Graph::empty(rows)?;
    let mut seen = HashSet::with_capacity(nnz);
    let mut count = 0;
    for (ln, line) in body {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let want = if has_value { 3 } else { 2 };
        if fields.len() != want {
            return Err(parse_err(ln, format!("expected {want} fields")));
        }
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| parse_err(ln, format!("bad index `{s}`")))?;
            if v == 0 || v > rows {
                return Err(parse_err(ln, format!("index {v} outside 1..={rows}")));
            }
            Ok(v - 1)
        };
        let (r, c) = (idx(fields[0])?, idx(fields[1])?);
        if has_value {
            let v: f64 = fields[2]
                .parse()
                .map_err(|_| parse_err(ln, format!("bad value `{}`", fields[2])))?;
            if v != 1.0 {
                return Err(parse_err(ln, format!("entry value {v} is not 1")));
            }
        }
        if r == c {
            return Err(parse_err(ln, format!("self-loop at vertex {}", r + 1)));
        }
        let key = if symmetric {
            (r.max(c), r.min(c))
        } else {
            (r, c)
        };
        if !seen.insert(key) {
            return Err(parse_err(
                ln,
                format!("repeated entry ({}, {})", r + 1, c + 1),
            ));
        }
        g.set_edge(r, c);
        count += 1;
    }
    if count != nnz {
        return Err(parse_err(
            size_line,
            format!("size line announces {nnz} entries, found {count}"),
        ));
    }
    if !symmetric {
        for &(r, c) in &seen {
            if !seen.contains(&(c, r)) {
                return Err(Error::InvalidAdjacency(format!(
                    "entry ({}, {}) has no transpose",
                    r + 1,
                    c + 1
                )));
            }
        }
    }
    Ok(g)
}
