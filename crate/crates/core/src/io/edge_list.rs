use crate::error::{Error, Result};
use crate::graph::Graph;

const FORMAT: &str = "edge list";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        format: FORMAT,
        line,
        message: message.into(),
    }
}

/// Writes the order on its own line followed by one `u v` pair per edge
/// (0-based, `u < v`).
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str("# undirected simple graph; first line is the order, vertices are 0-based\n");
    out.push_str(&format!("{}\n", g.order()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Reads the format produced by [`write_edge_list`]. Lines starting with `#`
/// are comments. Loops and repeated edges are rejected.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut body = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = body
        .next()
        .ok_or_else(|| parse_err(1, "missing order line"))?;
    let order: usize = first
        .parse()
        .map_err(|_| parse_err(ln, format!("expected the vertex count, found `{first}`")))?;
    let mut g = Graph::empty(order)?;
    for (ln, line) in body {
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(ln, "expected `u v`"));
        };
        let parse = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| parse_err(ln, format!("bad vertex `{s}`")))?;
            if v >= order {
                return Err(parse_err(ln, format!("vertex {v} outside 0..{order}")));
            }
            Ok(v)
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            return Err(parse_err(ln, format!("self-loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(parse_err(ln, format!("repeated edge ({u}, {v})")));
        }
        g.set_edge(u, v);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, empty_graph};

    #[test]
    fn round_trip_small() {
        let k2 = complete_graph(2).unwrap();
        let text = write_edge_list(&k2);
        assert!(text.ends_with("2\n0 1\n"));
        assert_eq!(read_edge_list(&text).unwrap(), k2);
        let e3 = empty_graph(3).unwrap();
        assert_eq!(read_edge_list(&write_edge_list(&e3)).unwrap(), e3);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(read_edge_list("3\n1 1\n").is_err());
        assert!(read_edge_list("3\n0 1\n1 0\n").is_err());
        assert!(read_edge_list("3\n0 3\n").is_err());
        assert!(read_edge_list("3\n0 1 2\n").is_err());
        assert!(read_edge_list("# nothing\n").is_err());
        assert!(read_edge_list("0\n").is_err());
    }
}
