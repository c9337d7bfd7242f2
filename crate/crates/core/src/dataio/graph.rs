//! Directed graphs as plain arc lists, plus the `u v` edge-list text format.

use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiGraph {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl DiGraph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= nodes || v >= nodes {
                return Err(Error::invalid(
                    format!("edges[{e}]"),
                    format!("arc ({u}, {v}) leaves the node range 0..{nodes}"),
                ));
            }
        }
        Ok(Self { nodes, edges })
    }

    /// Each undirected edge becomes the two arcs `u → v` and `v → u`.
    pub fn from_undirected(nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let arcs = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Self::new(nodes, arcs)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// In-neighbour lists, in arc order.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.nodes];
        for &(u, v) in &self.edges {
            pred[v].push(u);
        }
        pred
    }

    /// Edge-list text: `#` comment header, then one `u v` arc per line.
    pub fn to_edge_list(&self, header: &str) -> String {
        let mut out = String::new();
        for line in header.lines() {
            let _ = writeln!(out, "# {line}");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parses `u v` lines (whitespace separated, `#` comments and blank lines
/// skipped). Returns the pairs and the node count implied by the largest id.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut edges = Vec::new();
    let mut nodes = 0;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut next = |what: &str| -> Result<usize> {
            let raw = fields.next().ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("missing {what}"),
            })?;
            raw.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("{what} `{raw}` is not a node index"),
            })
        };
        let u = next("source")?;
        let v = next("target")?;
        nodes = nodes.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Ok((nodes, edges))
}

pub fn read_edge_list(path: &Path) -> Result<(usize, Vec<(usize, usize)>)> {
    let file = std::fs::File::open(path)?;
    parse_edge_list(std::io::BufReader::new(file))
}
