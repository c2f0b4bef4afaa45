use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order representable with the 1- and 4-byte size headers.
pub const GRAPH6_MAX_ORDER: usize = 258_047;

const BIAS: u8 = 63;
const MAX_CHAR: u8 = 126;

/// Encodes the upper triangle column by column (`(0,1), (0,2), (1,2), (0,3), …`),
/// six bits per printable byte, zero-padded at the end.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::Graph6(format!(
            "order {n} exceeds the encodable maximum {GRAPH6_MAX_ORDER}"
        )));
    }
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(MAX_CHAR);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }

    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + BIAS);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 output is printable ASCII"))
}

/// Decodes one graph6 record. Surrounding whitespace and the optional
/// `>>graph6<<` header are tolerated; anything else malformed is an error.
pub fn decode_graph6(bytes: &[u8]) -> Result<Graph> {
    let mut bytes = bytes.trim_ascii();
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    if let Some(pos) = bytes.iter().position(|&b| !(BIAS..=MAX_CHAR).contains(&b)) {
        return Err(Error::Graph6(format!(
            "byte {:#04x} at offset {pos} is outside the printable range 63..=126",
            bytes[pos]
        )));
    }

    let (n, body) = if bytes[0] != MAX_CHAR {
        ((bytes[0] - BIAS) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated size header".into()));
        }
        if bytes[1] == MAX_CHAR {
            return Err(Error::Graph6(
                "8-byte size headers (order > 258047) are not supported".into(),
            ));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n <= 62 {
            return Err(Error::Graph6(format!(
                "non-canonical 4-byte header for order {n}"
            )));
        }
        (n, &bytes[4..])
    };
    if n == 0 {
        return Err(Error::Graph6("graphs need at least one vertex".into()));
    }

    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let pad = expected * 6 - bits;
    if pad > 0 {
        let last = body[expected - 1] - BIAS;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("padding bits are not zero".into()));
        }
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, empty_graph, path_graph};

    #[test]
    fn hand_encoded_examples() {
        assert_eq!(encode_graph6(&complete_graph(1).unwrap()).unwrap(), "@");
        assert_eq!(encode_graph6(&empty_graph(2).unwrap()).unwrap(), "A?");
        assert_eq!(encode_graph6(&complete_graph(3).unwrap()).unwrap(), "Bw");
        assert_eq!(decode_graph6(b"@").unwrap(), complete_graph(1).unwrap());
        assert_eq!(decode_graph6(b"Bw").unwrap(), complete_graph(3).unwrap());
    }

    #[test]
    fn matches_published_example() {
        // Edges a-c, a-e, b-d, d-e on five vertices.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g).unwrap(), "DQc");
    }

    #[test]
    fn long_header() {
        let g = path_graph(100).unwrap();
        let s = encode_graph6(&g).unwrap();
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 36]);
        assert_eq!(decode_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode_graph6(b"").is_err());
        assert!(decode_graph6(b"?").is_err());
        assert!(decode_graph6(b"B").is_err());
        assert!(decode_graph6(b"Bww").is_err());
        assert!(decode_graph6(b"Bx").is_err()); // nonzero padding
        assert!(decode_graph6(b"B\x10").is_err());
        assert!(decode_graph6(b"~??").is_err());
        assert!(decode_graph6(b"~?@?").is_err()); // order 64 with no body
        assert!(decode_graph6(b">>graph6<<Bw").is_ok());
    }
}
