//! graph6 encoding (short form, `n <= 62`, no header).
//!
//! One byte `n + 63`, then the upper triangle of the adjacency matrix in
//! column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed six bits per
//! byte, big-endian, each byte offset by 63. Padding bits are zero.

use crate::error::Graph6Error;
use crate::graph::Graph;

const MAX_SHORT: usize = 62;

fn bit_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.trim_end_matches(['\n', '\r']);
    let bytes = line.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };
    if line.starts_with(">>") {
        return Err(Graph6Error::Header);
    }
    if first == b':' || first == b'&' {
        return Err(Graph6Error::NotGraph6);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadChar(b as char, i));
        }
    }
    if first == 126 {
        return Err(Graph6Error::LongForm);
    }
    let n = (first - 63) as usize;
    let bits = bit_count(n);
    let expected = bits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() != expected {
        return Err(Graph6Error::Length { expected, found: data.len() });
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("ids in range");
            }
            k += 1;
        }
    }
    if !bits.is_multiple_of(6) {
        let last = data[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::TrailingBits);
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_SHORT {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = bit_count(n);
    let mut data = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                data[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + data.len());
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_encodings() {
        assert_eq!(emit_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(emit_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(emit_graph6(&Graph::empty(2)).unwrap(), "A?");
        assert_eq!(emit_graph6(&Graph::path(2)).unwrap(), "A_");
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(parse_graph6("A?\n").unwrap(), Graph::empty(2));
        // "B_" has only x(0,1) set: K2 plus an isolated vertex.
        assert_eq!(parse_graph6("B_").unwrap(), Graph::from_edges(3, &[(0, 1)]).unwrap());
        // "Bw" sets x(0,1), x(0,2), x(1,2): the triangle.
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn matches_nauty_reference() {
        // C5 as 0-1-2-3-4-0; nauty prints "Dhc".
        assert_eq!(emit_graph6(&Graph::cycle(5)).unwrap(), "Dhc");
        // a-c, a-e, b-d, d-e
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g).unwrap(), "DQc");
        let c5 = parse_graph6("Dhc").unwrap();
        assert_eq!(c5.size(), 5);
        assert!(c5.vertices().all(|v| c5.degree(v) == 2));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6(">>graph6<<A_"), Err(Graph6Error::Header));
        assert_eq!(parse_graph6(":A_"), Err(Graph6Error::NotGraph6));
        assert_eq!(parse_graph6("~??~"), Err(Graph6Error::LongForm));
        assert_eq!(parse_graph6("A "), Err(Graph6Error::BadChar(' ', 1)));
        assert_eq!(parse_graph6("B"), Err(Graph6Error::Length { expected: 1, found: 0 }));
        assert_eq!(parse_graph6("A__"), Err(Graph6Error::Length { expected: 1, found: 2 }));
        // n=2 uses one bit; the remaining five must be zero.
        assert_eq!(parse_graph6("A`"), Err(Graph6Error::TrailingBits));
        assert_eq!(emit_graph6(&Graph::empty(63)), Err(Graph6Error::TooLarge(63)));
    }

    #[test]
    fn largest_short_form_round_trips() {
        let g = Graph::cycle(62);
        assert_eq!(parse_graph6(&emit_graph6(&g).unwrap()).unwrap(), g);
    }
}
