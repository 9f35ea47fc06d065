// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Graph and coloring codecs: graph6, edge lists and JSON.
//!
//! graph6 follows the nauty format description: the order N(n) in one, four
//! or eight bytes, then the upper triangle of the adjacency matrix read
//! column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...) packed into 6-bit
//! groups, most significant bit first, each group offset by 63.

use thiserror::Error;

use crate::graph::Graph;
use crate::verify::Color;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringFormat {
    Json,
    Csv,
}

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

pub fn parse_graph(input: &[u8], format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::Graph6 => parse_graph6(input),
        GraphFormat::EdgeList => parse_edge_list(input),
        GraphFormat::Json => parse_json(input),
    }
}

pub fn emit_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => {
            let mut s = encode_graph6(g);
            s.push('\n');
            s
        }
        GraphFormat::EdgeList => {
            let mut s = format!("{} {}\n", g.order(), g.size());
            for &(u, v) in g.edges() {
                s.push_str(&format!("{u} {v}\n"));
            }
            s
        }
        GraphFormat::Json => serde_json::to_string(g).expect("graphs serialize"),
    }
}

/// Strips an optional `>>graph6<<` header and surrounding whitespace;
/// returns the body and its offset in `input`.
fn graph6_body(input: &[u8]) -> (&[u8], usize) {
    let start = input
        .iter()
        .position(|b| !b.is_ascii_whitespace())
        .unwrap_or(input.len());
    let mut body = &input[start..];
    let mut offset = start;
    if body.starts_with(GRAPH6_HEADER) {
        body = &body[GRAPH6_HEADER.len()..];
        offset += GRAPH6_HEADER.len();
    }
    let end = body
        .iter()
        .rposition(|b| !b.is_ascii_whitespace())
        .map_or(0, |p| p + 1);
    (&body[..end], offset)
}

fn graph6_byte(body: &[u8], i: usize, base: usize) -> Result<u64, ParseError> {
    match body.get(i) {
        Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
        Some(&b) => Err(ParseError::new(
            base + i,
            format!("byte {b:#04x} outside the graph6 range"),
        )),
        None => Err(ParseError::new(base + i, "unexpected end of graph6 data")),
    }
}

pub fn parse_graph6(input: &[u8]) -> Result<Graph, ParseError> {
    let (body, base) = graph6_body(input);
    if body.is_empty() {
        return Err(ParseError::new(base, "empty graph6 string"));
    }
    let (n, mut pos) = if body[0] != 126 {
        (graph6_byte(body, 0, base)? as usize, 1)
    } else if body.get(1) != Some(&126) {
        let mut n = 0;
        for i in 1..4 {
            n = (n << 6) | graph6_byte(body, i, base)?;
        }
        (n as usize, 4)
    } else {
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | graph6_byte(body, i, base)?;
        }
        (n as usize, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() != pos + needed {
        let at = base + (pos + needed).min(body.len());
        return Err(ParseError::new(
            at,
            format!(
                "expected {needed} adjacency bytes for n = {n}, found {}",
                body.len() - pos
            ),
        ));
    }
    let mut edges = Vec::new();
    let (mut i, mut j) = (0, 1);
    let mut seen = 0;
    while seen < needed * 6 {
        let group = graph6_byte(body, pos, base)?;
        for shift in (0..6).rev() {
            let bit = (group >> shift) & 1 == 1;
            if seen < bits {
                if bit {
                    edges.push((i, j));
                }
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if bit {
                return Err(ParseError::new(base + pos, "nonzero graph6 padding bits"));
            }
            seen += 1;
        }
        pos += 1;
    }
    Graph::new(n, &edges).map_err(|e| ParseError::new(base, e.to_string()))
}

/// Parses one graph6 string per non-empty line.
pub fn parse_graph6_lines(input: &[u8]) -> Result<Vec<Graph>, ParseError> {
    let mut graphs = Vec::new();
    let mut offset = 0;
    for line in input.split(|&b| b == b'\n') {
        if line.iter().any(|b| !b.is_ascii_whitespace()) {
            graphs.push(
                parse_graph6(line).map_err(|e| ParseError::new(offset + e.offset, e.message))?,
            );
        }
        offset += line.len() + 1;
    }
    Ok(graphs)
}

fn push_graph6_order(out: &mut Vec<u8>, n: usize) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    push_graph6_order(&mut out, n);
    let mut adjacent = vec![false; n * n];
    for &(u, v) in g.edges() {
        adjacent[u * n + v] = true;
    }
    let (mut group, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(adjacent[i * n + j]);
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                (group, filled) = (0, 0);
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Whitespace-separated tokens of one line with their byte offsets.
fn tokens(line: &[u8], base: usize) -> Vec<(usize, &[u8])> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < line.len() {
        if line[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < line.len() && !line[i].is_ascii_whitespace() {
            i += 1;
        }
        out.push((base + start, &line[start..i]));
    }
    out
}

fn number(offset: usize, token: &[u8]) -> Result<usize, ParseError> {
    std::str::from_utf8(token)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| {
            ParseError::new(
                offset,
                format!(
                    "expected a vertex id, found {:?}",
                    String::from_utf8_lossy(token)
                ),
            )
        })
}

/// One `u v` pair per line; blank lines and `#` comments are skipped. A
/// first line `n m` is read as a header when exactly `m` pair lines follow
/// and every id is below `n`; otherwise it is an edge and n is one more
/// than the largest id.
pub fn parse_edge_list(input: &[u8]) -> Result<Graph, ParseError> {
    let mut pairs = Vec::new();
    let mut offset = 0;
    for line in input.split(|&b| b == b'\n') {
        let content = match line.iter().position(|&b| b == b'#') {
            Some(p) => &line[..p],
            None => line,
        };
        let toks = tokens(content, offset);
        match toks.as_slice() {
            [] => {}
            [(oa, a), (ob, b)] => pairs.push((*oa, number(*oa, a)?, number(*ob, b)?)),
            [(o, _)] => return Err(ParseError::new(*o, "expected two vertex ids")),
            [_, _, (o, _), ..] => return Err(ParseError::new(*o, "unexpected third field")),
        }
        offset += line.len() + 1;
    }
    let header = pairs.first().copied().filter(|&(_, n, m)| {
        pairs.len() - 1 == m && pairs[1..].iter().all(|&(_, u, v)| u < n && v < n)
    });
    let (n, body) = match header {
        Some((_, n, _)) => (n, &pairs[1..]),
        None => (
            pairs
                .iter()
                .map(|&(_, u, v)| u.max(v) + 1)
                .max()
                .unwrap_or(0),
            &pairs[..],
        ),
    };
    let mut seen = std::collections::HashSet::with_capacity(body.len());
    for &(o, u, v) in body {
        let problem = if u >= n || v >= n {
            Some(format!(
                "vertex id {} out of range for a graph of order {n}",
                u.max(v)
            ))
        } else if u == v {
            Some(format!("loop edge at vertex {u}"))
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(format!("duplicate edge ({}, {})", u.min(v), u.max(v)))
        } else {
            None
        };
        if let Some(message) = problem {
            return Err(ParseError::new(o, message));
        }
    }
    let edges: Vec<(usize, usize)> = body.iter().map(|&(_, u, v)| (u, v)).collect();
    Graph::new(n, &edges).map_err(|e| ParseError::new(0, e.to_string()))
}

/// Byte offset of a 1-based (line, column) position.
fn offset_of(input: &[u8], line: usize, column: usize) -> usize {
    let line_start: usize = input
        .split(|&b| b == b'\n')
        .take(line.saturating_sub(1))
        .map(|l| l.len() + 1)
        .sum();
    (line_start + column.saturating_sub(1)).min(input.len())
}

pub fn parse_json(input: &[u8]) -> Result<Graph, ParseError> {
    serde_json::from_slice(input)
        .map_err(|e| ParseError::new(offset_of(input, e.line(), e.column()), e.to_string()))
}

pub fn emit_coloring(colors: &[Color], format: ColoringFormat) -> String {
    match format {
        ColoringFormat::Json => serde_json::to_string(colors).expect("color arrays serialize"),
        ColoringFormat::Csv => {
            let mut s = String::from("id,color\n");
            for (id, c) in colors.iter().enumerate() {
                s.push_str(&format!("{id},{c}\n"));
            }
            s
        }
    }
}

pub fn parse_coloring(input: &[u8], format: ColoringFormat) -> Result<Vec<Color>, ParseError> {
    match format {
        ColoringFormat::Json => serde_json::from_slice(input)
            .map_err(|e| ParseError::new(offset_of(input, e.line(), e.column()), e.to_string())),
        ColoringFormat::Csv => {
            let mut colors = Vec::new();
            let mut offset = 0;
            for (i, line) in input.split(|&b| b == b'\n').enumerate() {
                let here = offset;
                offset += line.len() + 1;
                let line = line.trim_ascii();
                if i == 0 {
                    if line != b"id,color" {
                        return Err(ParseError::new(here, "expected header \"id,color\""));
                    }
                    continue;
                }
                if line.is_empty() {
                    continue;
                }
                let comma = line
                    .iter()
                    .position(|&b| b == b',')
                    .ok_or_else(|| ParseError::new(here, "expected \"id,color\""))?;
                let id = number(here, &line[..comma])?;
                let color = number(here + comma + 1, &line[comma + 1..])?;
                if id != colors.len() {
                    return Err(ParseError::new(
                        here,
                        format!("expected id {}, found {id}", colors.len()),
                    ));
                }
                colors.push(color);
            }
            Ok(colors)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, petersen};

    #[test]
    fn graph6_known_strings() {
        // Standard examples: K_4 is "C~", the empty graph on 5 vertices "D??".
        assert_eq!(encode_graph6(&complete(4).unwrap()), "C~");
        assert_eq!(encode_graph6(&Graph::new(5, &[]).unwrap()), "D??");
        let p = parse_graph6(b"IheA@GUAo").unwrap();
        assert_eq!(
            (p.order(), p.size(), p.min_degree(), p.max_degree()),
            (10, 15, 3, 3)
        );
        let g = parse_graph6(b">>graph6<<D?{\n").unwrap();
        assert_eq!(encode_graph6(&g), "D?{");
    }

    #[test]
    fn graph6_large_orders() {
        for n in [62, 63, 64, 100] {
            let g = Graph::new(n, &[(0, n - 1), (1, 2)]).unwrap();
            let s = encode_graph6(&g);
            if n >= 63 {
                assert_eq!(s.as_bytes()[0], 126);
            }
            let h = parse_graph6(s.as_bytes()).unwrap();
            assert_eq!(h.order(), n);
            assert_eq!(encode_graph6(&h), s);
        }
        let p = petersen();
        let s = encode_graph6(&p);
        assert_eq!(encode_graph6(&parse_graph6(s.as_bytes()).unwrap()), s);
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(parse_graph6(b"C").unwrap_err().offset, 1);
        assert_eq!(parse_graph6(b"C~~").unwrap_err().offset, 2);
        assert_eq!(parse_graph6(b"C\x01").unwrap_err().offset, 1);
    }

    #[test]
    fn edge_lists() {
        let t = parse_edge_list(b"0 1\n1 2\n2 0").unwrap();
        assert_eq!((t.order(), t.size()), (3, 3));
        let h = parse_edge_list(b"5 2\n0 1\n3 4\n").unwrap();
        assert_eq!((h.order(), h.size()), (5, 2));
        let err = parse_edge_list(b"0 1\n0 x\n").unwrap_err();
        assert_eq!(err.offset, 6);
        let dup = parse_edge_list(b"0 1\n1 2\n1 0\n").unwrap_err();
        assert_eq!(dup.offset, 8);
        let g = complete(5).unwrap();
        assert_eq!(
            parse_edge_list(emit_graph(&g, GraphFormat::EdgeList).as_bytes()).unwrap(),
            g
        );
    }

    #[test]
    fn json_round_trip() {
        let g = petersen();
        assert_eq!(
            parse_json(emit_graph(&g, GraphFormat::Json).as_bytes()).unwrap(),
            g
        );
        assert!(parse_json(b"{\"n\": 2, \"edges\": [[0, 0]]}").is_err());
    }

    #[test]
    fn colorings() {
        let c = vec![0, 1, 2];
        for f in [ColoringFormat::Json, ColoringFormat::Csv] {
            assert_eq!(
                parse_coloring(emit_coloring(&c, f).as_bytes(), f).unwrap(),
                c
            );
        }
        assert_eq!(emit_coloring(&c, ColoringFormat::Json), "[0,1,2]");
        assert!(emit_coloring(&c, ColoringFormat::Csv).starts_with("id,color\n"));
    }
}
