//! Text formats: a line-oriented edge list and graph6.
//!
//! Edge list (UTF-8, LF):
//!
//! ```text
//! # comment
//! n 5
//! labels x y z t w
//! 0 1
//! 0 3
//! ```
//!
//! The `labels` line is optional and must directly follow the header.
//! Endpoints are 0-based ids; the serializer writes each edge once as
//! `u v` with `u < v`, in ascending order.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bitset::MAX_VERTICES;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    EdgeList,
    Graph6,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edge-list" | "edgelist" => Ok(Format::EdgeList),
            "graph6" | "g6" => Ok(Format::Graph6),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => {
            let (line_no, line) = text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .find(|(_, l)| !l.is_empty())
                .ok_or_else(|| parse_err(1, "empty input"))?;
            from_graph6(line).map_err(|e| match e {
                GraphError::Parse { message, .. } => parse_err(line_no, message),
                other => other,
            })
        }
    }
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::EdgeList => to_edge_list(g),
        Format::Graph6 => {
            let mut s = to_graph6(g);
            s.push('\n');
            s
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n <count>`"))?;
    let mut tok = header.split_whitespace();
    let n = match (tok.next(), tok.next(), tok.next()) {
        (Some("n"), Some(count), None) => count
            .parse::<usize>()
            .map_err(|_| parse_err(hline, format!("bad vertex count {count:?}")))?,
        _ => return Err(parse_err(hline, "malformed header, expected `n <count>`")),
    };
    let mut g = Graph::empty(n).map_err(|e| parse_err(hline, e.to_string()))?;

    let mut labels = None;
    if let Some((lline, l)) = lines.peek().copied() {
        if let Some(rest) = l.strip_prefix("labels") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                labels = Some((lline, rest.split_whitespace().map(String::from).collect::<Vec<_>>()));
                lines.next();
            }
        }
    }

    for (line_no, line) in lines {
        let mut tok = line.split_whitespace();
        let (u, v) = match (tok.next(), tok.next(), tok.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(parse_err(line_no, format!("expected `u v`, got {line:?}"))),
        };
        let parse_id = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("bad vertex id {s:?}")))
        };
        let (u, v) = (parse_id(u)?, parse_id(v)?);
        g.add_edge(u, v).map_err(|e| parse_err(line_no, e.to_string()))?;
    }

    match labels {
        Some((line_no, l)) => g.with_labels(l).map_err(|e| parse_err(line_no, e.to_string())),
        None => Ok(g),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    if let Some(labels) = g.labels() {
        out.push_str("labels");
        for l in labels {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Encodes the graph as a graph6 string (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else {
        bytes.push(126);
        bytes.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|b| b as u8 + 63));
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                bytes.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 is ASCII")
}

/// Decodes one graph6 string. A leading `>>graph6<<` header is accepted.
pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let data = s.as_bytes();
    if let Some(pos) = data.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("offset {pos}: byte {:#x} outside graph6 range", data[pos])));
    }
    let (n, body) = match data {
        [] => return Err(parse_err(1, "empty graph6 string")),
        [126, 126, ..] => return Err(parse_err(1, "offset 0: graphs this large are unsupported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(1, "offset 1: truncated size field"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(parse_err(
            1,
            format!("expected {need} data bytes for n={n}, found {}", body.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if nbits % 6 != 0 {
        let last = body[need - 1] - 63;
        if last & ((1u8 << (6 - nbits % 6)) - 1) != 0 {
            return Err(parse_err(1, format!("offset {}: nonzero padding bits", need)));
        }
    }
    Ok(g)
}
