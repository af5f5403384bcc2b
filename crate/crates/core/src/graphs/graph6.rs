//! graph6 encoding: a size header, then the upper triangle of the adjacency
//! matrix in column order `(0,1),(0,2),(1,2),(0,3),…`, six bits per byte,
//! each byte offset by 63.

use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {value:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    ByteOutOfRange { offset: usize, value: u8 },
    #[error("malformed size header at offset {offset}")]
    BadHeader { offset: usize },
    #[error("truncated edge section: expected {expected} bytes after the header, found {found} (ends at offset {offset})")]
    Truncated {
        expected: usize,
        found: usize,
        offset: usize,
    },
    #[error("unexpected trailing data at offset {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    NonzeroPadding { offset: usize },
}

const HEADER: &str = ">>graph6<<";

fn decode_header(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let six = |offset: usize| -> Result<u64, Graph6Error> {
        let b = *bytes.get(offset).ok_or(Graph6Error::BadHeader { offset })?;
        Ok(u64::from(b - 63))
    };
    if bytes[0] != 126 {
        return Ok((usize::from(bytes[0] - 63), 1));
    }
    if bytes.get(1) != Some(&126) {
        let mut n = 0u64;
        for i in 1..4 {
            n = n << 6 | six(i)?;
        }
        if n < 63 {
            return Err(Graph6Error::BadHeader { offset: 0 });
        }
        return Ok((n as usize, 4));
    }
    let mut n = 0u64;
    for i in 2..8 {
        n = n << 6 | six(i)?;
    }
    if n <= 258_047 {
        return Err(Graph6Error::BadHeader { offset: 0 });
    }
    Ok((n as usize, 8))
}

/// Parses one graph6 string. A leading `>>graph6<<` and trailing
/// whitespace are tolerated.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(HEADER).unwrap_or(text).trim_end();
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(offset) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(Graph6Error::ByteOutOfRange {
            offset,
            value: bytes[offset],
        });
    }
    let (n, start) = decode_header(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let body = &bytes[start..];
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
            offset: bytes.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData {
            offset: start + expected,
        });
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding {
                offset: start + expected - 1,
            });
        }
    }
    Ok(g)
}

/// Encodes a labeled graph as graph6.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses a graph6 file body: one graph per line, blank lines ignored.
///
/// Each entry carries its 1-based line number so callers can report and
/// skip malformed lines.
pub fn read_graph6_lines(text: &str) -> Vec<(usize, Result<Graph, Graph6Error>)> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty() && line.trim() != HEADER)
        .map(|(i, line)| (i + 1, parse_graph6(line.trim())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};

    #[test]
    fn known_encodings() {
        let k3 = generate(Family::Complete(3)).unwrap();
        assert_eq!(write_graph6(&k3), "Bw");
        assert_eq!(parse_graph6("Bw").unwrap(), k3);

        let c5 = generate(Family::Cycle(5)).unwrap();
        assert_eq!(write_graph6(&c5), "Dhc");
        assert_eq!(parse_graph6("Dhc").unwrap(), c5);

        let e2 = parse_graph6("A?").unwrap();
        assert_eq!(e2, Graph::empty(2));
        assert_eq!(write_graph6(&Graph::empty(2)), "A?");
    }

    #[test]
    fn petersen_matches_reference() {
        // reference value from networkx for the same labeling
        let p = generate(Family::Petersen).unwrap();
        assert_eq!(write_graph6(&p), "IheA@GUAo");
        assert_eq!(parse_graph6("IheA@GUAo").unwrap(), p);
        let c63 = generate(Family::Cycle(63)).unwrap();
        assert!(write_graph6(&c63).starts_with("~??~hC"));
    }

    #[test]
    fn header_tolerated() {
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap().edge_count(), 3);
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(
            parse_graph6("zz"),
            Err(Graph6Error::Truncated {
                expected: 286,
                found: 1,
                ..
            })
        ));
        assert_eq!(
            parse_graph6("B w"),
            Err(Graph6Error::ByteOutOfRange {
                offset: 1,
                value: b' '
            })
        );
        assert_eq!(
            parse_graph6("Bww"),
            Err(Graph6Error::TrailingData { offset: 2 })
        );
        assert_eq!(
            parse_graph6("B@"),
            Err(Graph6Error::NonzeroPadding { offset: 1 })
        );
    }

    #[test]
    fn large_headers_round_trip() {
        for n in [62, 63, 64, 200] {
            let g = generate(Family::Cycle(n)).unwrap();
            let s = write_graph6(&g);
            if n >= 63 {
                assert!(s.starts_with('~'));
            }
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
        // long-form headers must not encode sizes that fit a shorter form
        assert_eq!(
            parse_graph6("~~??????"),
            Err(Graph6Error::BadHeader { offset: 0 })
        );
        assert_eq!(
            parse_graph6("~??@"),
            Err(Graph6Error::BadHeader { offset: 0 })
        );
        assert!(matches!(
            parse_graph6("~~??@???"),
            Err(Graph6Error::Truncated { .. })
        ));
    }

    #[test]
    fn reads_lines_with_numbers() {
        let parsed = read_graph6_lines(">>graph6<<\nBw\n\nzz\nDhc\n");
        let lines: Vec<usize> = parsed.iter().map(|(l, _)| *l).collect();
        assert_eq!(lines, vec![2, 4, 5]);
        assert!(parsed[1].1.is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn round_trip(n in 1usize..40, seed in any::<u64>()) {
                let mut state = seed;
                let mut g = Graph::empty(n);
                for v in 1..n {
                    for u in 0..v {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        if state >> 63 == 1 {
                            g.set_edge(u, v, true);
                        }
                    }
                }
                let s = write_graph6(&g);
                prop_assert_eq!(parse_graph6(&s).unwrap(), g);
                prop_assert_eq!(write_graph6(&parse_graph6(&s).unwrap()), s);
            }
        }
    }
}
