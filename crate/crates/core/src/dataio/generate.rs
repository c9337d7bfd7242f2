//! Synthetic bipartite graphs with power-law degrees.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::graph::DiGraph;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rng::stream_rng;

pub const DEFAULT_POWERLAW_EXPONENT: f64 = 2.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartiteSpec {
    /// Total node count `|V₁| + |V₂|`; must be even.
    pub nodes: usize,
    /// Exponent `a` of `P(d) ∝ d^{−a}` on `1..=|V₁|`; `f64::INFINITY` gives degree 1.
    pub exponent: f64,
    pub seed: u64,
}

/// Directed bipartite graph `V₁ = 0..h → V₂ = h..2h`. Every `V₂` node draws
/// its in-degree from a zeta law truncated at `|V₁|` and links to that many
/// distinct `V₁` nodes chosen uniformly.
pub fn gen_bipartite_powerlaw(spec: &BipartiteSpec) -> Result<DiGraph> {
    if spec.nodes < 2 || !spec.nodes.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "bipartite graph needs a positive even node count, got {}",
            spec.nodes
        )));
    }
    if spec.exponent.is_nan() || spec.exponent < 0.0 {
        return Err(Error::Config(format!(
            "power-law exponent must be nonnegative, got {}",
            spec.exponent
        )));
    }
    let h = spec.nodes / 2;
    let cdf = zeta_cdf(h, spec.exponent);
    let mut rng = stream_rng(spec.seed, "bipartite-powerlaw", 0);
    let mut edges = Vec::new();
    for v in h..spec.nodes {
        let u: f64 = rng.gen();
        let degree = 1 + cdf.partition_point(|&c| c < u).min(h - 1);
        let mut picks = sample(&mut rng, h, degree).into_vec();
        picks.sort_unstable();
        edges.extend(picks.into_iter().map(|p| (p, v)));
    }
    DiGraph::new(spec.nodes, edges)
}

/// Normalized cumulative weights of `d^{−a}` for `d = 1..=h`.
fn zeta_cdf(h: usize, exponent: f64) -> Vec<f64> {
    if exponent.is_infinite() {
        return vec![1.0; h];
    }
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = (1..=h)
        .map(|d| {
            acc += (d as f64).powf(-exponent);
            acc
        })
        .collect();
    for c in &mut cdf {
        *c /= acc;
    }
    cdf
}

/// Seeds come from `V₁` only: `m` near-equal blocks over `V₁` with cap `k`,
/// and one cap-0 block holding `V₂`.
pub fn bipartite_matroid(nodes: usize, m: usize, k: usize) -> Result<Matroid> {
    let h = nodes / 2;
    if m == 0 || h < m {
        return Err(Error::Config(format!(
            "cannot split {h} seed nodes into {m} partitions"
        )));
    }
    let mut blocks: Vec<Vec<usize>> = (0..m).map(|b| (b * h / m..(b + 1) * h / m).collect()).collect();
    blocks.push((h..nodes).collect());
    let mut caps = vec![k; m];
    caps.push(0);
    Matroid::partition(nodes, blocks, caps)
}
