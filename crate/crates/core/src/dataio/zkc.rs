//! Zachary karate club, bundled so the influence experiments run offline.

use super::graph::{parse_edge_list, DiGraph};
use crate::error::Result;
use crate::matroid::Matroid;

const EDGES: &str = include_str!("../../data/zkc_edges.txt");
const CLUBS: &str = include_str!("../../data/zkc_clubs.txt");

pub const ZKC_NODES: usize = 34;
pub const ZKC_EDGES: usize = 78;

/// The 78 undirected edges.
pub fn zkc_edges() -> Vec<(usize, usize)> {
    parse_edge_list(EDGES.as_bytes())
        .expect("bundled edge list parses")
        .1
}

/// Both arc directions of every edge (156 arcs).
pub fn zkc_graph() -> DiGraph {
    DiGraph::from_undirected(ZKC_NODES, &zkc_edges()).expect("bundled edges in range")
}

/// Club label per node (0 = Mr. Hi, 1 = Officer).
pub fn zkc_clubs() -> Vec<usize> {
    CLUBS
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(|t| t.parse().expect("bundled club labels are integers"))
        .collect()
}

/// Partition matroid over the two clubs with `k` seeds per club.
pub fn zkc_club_matroid(k: usize) -> Result<Matroid> {
    let clubs = zkc_clubs();
    let blocks = (0..2)
        .map(|c| (0..ZKC_NODES).filter(|&v| clubs[v] == c).collect())
        .collect();
    Matroid::partition(ZKC_NODES, blocks, vec![k; 2])
}
