//! Text interchange formats: graph6, Matrix Market and 0-based edge lists.

mod edge_list;
mod graph6;
mod matrix_market;

use std::fmt;
use std::str::FromStr;

pub use edge_list::{read_edge_list, write_edge_list};
pub use graph6::{decode_graph6, encode_graph6, GRAPH6_MAX_ORDER};
pub use matrix_market::{read_matrix_market, write_matrix_market};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Mtx,
    Edges,
}

impl Format {
    /// Guesses the format of `text` from its first meaningful line.
    pub fn sniff(text: &str) -> Format {
        let trimmed = text.trim_start();
        if trimmed.starts_with("%%MatrixMarket") {
            Format::Mtx
        } else if trimmed.starts_with('#')
            || trimmed.lines().next().is_some_and(|l| {
                l.split_whitespace().all(|t| t.parse::<usize>().is_ok()) && !l.trim().is_empty()
            })
        {
            Format::Edges
        } else {
            Format::Graph6
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "mtx" | "matrixmarket" => Ok(Format::Mtx),
            "edges" | "edgelist" => Ok(Format::Edges),
            _ => Err(Error::Unknown {
                kind: "format",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::Mtx => "mtx",
            Format::Edges => "edges",
        })
    }
}

/// Serializes `g`; graph6 output carries a trailing newline.
pub fn write_graph(g: &Graph, format: Format) -> Result<String> {
    match format {
        Format::Graph6 => {
            let mut s = encode_graph6(g)?;
            s.push('\n');
            Ok(s)
        }
        Format::Mtx => Ok(write_matrix_market(g)),
        Format::Edges => Ok(write_edge_list(g)),
    }
}

/// Parses `text`, sniffing the format when `format` is `None`.
pub fn read_graph(text: &str, format: Option<Format>) -> Result<Graph> {
    match format.unwrap_or_else(|| Format::sniff(text)) {
        Format::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| Error::Graph6("empty input".into()))?;
            decode_graph6(line.as_bytes())
        }
        Format::Mtx => read_matrix_market(text),
        Format::Edges => read_edge_list(text),
    }
}
