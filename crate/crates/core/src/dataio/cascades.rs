//! Independent-cascade traces.
//!
//! A trace keeps every arc independently with probability `p`. For each node
//! `v` we store the nodes that reach `v` in the kept subgraph, so that `v` is
//! infected by a seed set `S` exactly when `S` meets that set.

use std::collections::VecDeque;

use rand::Rng;

use super::graph::DiGraph;
use crate::objectives::Cascade;
use crate::rng::{derive_seed, seeded_rng};

const CASCADE_STREAM: &str = "ic-cascade";

/// One trace, a pure function of `(graph, p, seed)`.
pub fn simulate_cascade(graph: &DiGraph, p: f64, seed: u64) -> Cascade {
    let mut rng = seeded_rng(seed);
    let n = graph.nodes();
    let mut pred = vec![Vec::new(); n];
    for &(u, v) in graph.edges() {
        if rng.gen_bool(p) {
            pred[v].push(u);
        }
    }
    let mut seen = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let reach = (0..n)
        .map(|v| {
            let mut set = vec![v];
            seen[v] = v;
            queue.push_back(v);
            while let Some(w) = queue.pop_front() {
                for &u in &pred[w] {
                    if seen[u] != v {
                        seen[u] = v;
                        set.push(u);
                        queue.push_back(u);
                    }
                }
            }
            set.sort_unstable();
            set
        })
        .collect();
    Cascade { reach }
}

/// `count` traces; trace `z` uses its own seed derived from `(seed, z)`.
pub fn gen_ic_cascades(graph: &DiGraph, p: f64, count: usize, seed: u64) -> Vec<Cascade> {
    (0..count)
        .map(|z| simulate_cascade(graph, p, derive_seed(seed, CASCADE_STREAM, z as u64)))
        .collect()
}

/// Average size of the stored reachability sets.
pub fn mean_reach(cascades: &[Cascade]) -> f64 {
    let (total, sets) = cascades.iter().fold((0usize, 0usize), |(t, s), c| {
        (t + c.reach.iter().map(Vec::len).sum::<usize>(), s + c.reach.len())
    });
    if sets == 0 {
        0.0
    } else {
        total as f64 / sets as f64
    }
}
