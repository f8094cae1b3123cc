//! graph6, DIMACS and edge-list encoders and decoders, plus the labels
//! sidecar document.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::gf::Field;
use crate::graph::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Graph6,
    Dimacs,
    Edgelist,
    LabelsJson,
    CertJson,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Graph6 => "g6",
            Format::Dimacs => "dimacs",
            Format::Edgelist => "edges",
            Format::LabelsJson => "labels.json",
            Format::CertJson => "cert.json",
        }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0:?} cannot be encoded from a graph alone")]
    Unsupported(Format),
    #[error("no decoder for {0:?}")]
    NoDecoder(Format),
    #[error("graph has no vertex labels")]
    Unlabeled,
    #[error("graph6 supports at most 68719476735 vertices")]
    TooLarge,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn malformed<T>(m: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Malformed(m.into()))
}

/// Standard encoding; graph6 carries no trailing newline.
pub fn encode(g: &Graph, format: Format) -> Result<Vec<u8>, FormatError> {
    match format {
        Format::Graph6 => encode_graph6(g),
        Format::Dimacs => Ok(encode_dimacs(g).into_bytes()),
        Format::Edgelist => Ok(encode_edgelist(g).into_bytes()),
        Format::LabelsJson => encode_labels(g, "graph", None),
        Format::CertJson => Err(FormatError::Unsupported(format)),
    }
}

pub fn decode(bytes: &[u8], format: Format) -> Result<Graph, FormatError> {
    match format {
        Format::Graph6 => decode_graph6(bytes),
        Format::Dimacs => decode_dimacs(std::str::from_utf8(bytes).or_else(|_| malformed("not UTF-8"))?),
        Format::Edgelist => {
            decode_edgelist(std::str::from_utf8(bytes).or_else(|_| malformed("not UTF-8"))?, None)
        }
        other => Err(FormatError::NoDecoder(other)),
    }
}

fn size_bytes(n: usize) -> Result<Vec<u8>, FormatError> {
    let six = |v: usize, k: u32| ((v >> (6 * k)) & 63) as u8 + 63;
    Ok(match n {
        0..=62 => vec![n as u8 + 63],
        63..=258_047 => vec![126, six(n, 2), six(n, 1), six(n, 0)],
        258_048..=68_719_476_735 => {
            let mut v = vec![126, 126];
            v.extend((0..6).rev().map(|k| six(n, k)));
            v
        }
        _ => return Err(FormatError::TooLarge),
    })
}

pub fn encode_graph6(g: &Graph) -> Result<Vec<u8>, FormatError> {
    let n = g.n();
    let mut out = size_bytes(n)?;
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(out)
}

pub fn decode_graph6(bytes: &[u8]) -> Result<Graph, FormatError> {
    let text = bytes.trim_ascii();
    let data: Vec<u8> = text.iter().map(|&b| b.wrapping_sub(63)).collect();
    if text.iter().any(|&b| !(63..=126).contains(&b)) {
        return malformed("graph6 byte out of range");
    }
    let sextets = |s: &[u8]| s.iter().fold(0usize, |acc, &v| acc << 6 | v as usize);
    let (n, body) = match data.as_slice() {
        [63, 63, rest @ ..] if rest.len() >= 6 => (sextets(&rest[..6]), &rest[6..]),
        [63, rest @ ..] if rest.len() >= 3 => (sextets(&rest[..3]), &rest[3..]),
        [first, rest @ ..] if *first < 63 => (*first as usize, rest),
        _ => return malformed("graph6 size header"),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return malformed(format!("graph6 body has {} bytes, expected {}", body.len(), bits.div_ceil(6)));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if body[k / 6] >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// `p edge n m`, then `e u v` (1-based) in lexicographic order.
pub fn encode_dimacs(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}

pub fn decode_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut header = None;
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().or_else(|_| malformed(format!("bad number in {line:?}")));
        match fields.as_slice() {
            ["c", ..] => {}
            ["p", "edge", n, m] if header.is_none() => header = Some((num(n)?, num(m)?)),
            ["e", u, v] if header.is_some() => {
                let (u, v) = (num(u)?, num(v)?);
                if u == 0 || v == 0 {
                    return malformed("DIMACS vertices are 1-based");
                }
                edges.push((u - 1, v - 1));
            }
            _ => return malformed(format!("unexpected line {line:?}")),
        }
    }
    let (n, m) = header.ok_or_else(|| FormatError::Malformed("missing p line".into()))?;
    if edges.len() != m {
        return malformed(format!("{} edges listed, header says {m}", edges.len()));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// One `u v` per line, 0-based, u < v, sorted.
pub fn encode_edgelist(g: &Graph) -> String {
    let mut s = String::new();
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

/// Parses an edge list; without `n` the order is one more than the largest
/// endpoint.
pub fn decode_edgelist(text: &str, n: Option<usize>) -> Result<Graph, FormatError> {
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let parsed: Vec<usize> = line
            .split_whitespace()
            .map(|s| s.parse().or_else(|_| malformed(format!("bad number in {line:?}"))))
            .collect::<Result<_, _>>()?;
        match parsed[..] {
            [u, v] => edges.push((u, v)),
            _ => return malformed(format!("expected two vertices in {line:?}")),
        }
    }
    let order = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(Graph::from_edges(order, &edges)?)
}

#[derive(Serialize)]
struct FieldInfo {
    p: u32,
    n: u32,
    /// Low degree first.
    modulus: Vec<u32>,
    alpha: String,
}

#[derive(Serialize)]
struct LabelsDoc {
    graph_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<FieldInfo>,
    n: usize,
    labels: BTreeMap<usize, String>,
    /// Index of each vertex in the cage it came from.
    cage_index: BTreeMap<usize, usize>,
}

/// JSON map from vertex index to `(a,b,c)_r`, with `inf` for ∞.
pub fn encode_labels(g: &Graph, graph_id: &str, field: Option<&Field>) -> Result<Vec<u8>, FormatError> {
    let labels = g.labels().ok_or(FormatError::Unlabeled)?;
    let doc = LabelsDoc {
        graph_id: graph_id.to_string(),
        field: field.map(|f| FieldInfo {
            p: f.characteristic(),
            n: f.degree(),
            modulus: f.modulus().to_vec(),
            alpha: f.alpha().to_string(),
        }),
        n: g.n(),
        labels: labels.iter().enumerate().map(|(i, l)| (i, l.to_string())).collect(),
        cage_index: (0..g.n()).map(|v| (v, g.origin(v))).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("labels serialize");
    s.push('\n');
    Ok(s.into_bytes())
}
