//! Small random instances of every family, for tests and quick experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use super::cascades::gen_ic_cascades;
use super::graph::DiGraph;
use crate::error::Result;
use crate::matroid::Matroid;
use crate::objectives::{
    CnEdge, CnInstance, CnRequest, FlInstance, ImInstance, Objective, SmInstance,
};

/// `n` tokens split into `partitions` random nonempty groups; every
/// realization's value vector is a random point of the simplex.
pub fn random_sm<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    partitions: usize,
    count: usize,
) -> Result<Objective> {
    let partitions = partitions.clamp(1, n.max(1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut groups = vec![Vec::new(); partitions];
    for (pos, &i) in order.iter().enumerate() {
        let g = if pos < partitions { pos } else { rng.gen_range(0..partitions) };
        groups[g].push(i);
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    let values = (0..count).map(|_| simplex_point(rng, n)).collect();
    Ok(Objective::Sm(SmInstance::new(n, groups, values)?))
}

fn simplex_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|r| r / total).collect()
}

/// Modular objective `f(x) = Σ_i log(1 + r_i) x_i`: SM with singleton partitions
/// and one realization.
pub fn modular(values: Vec<f64>) -> Result<Objective> {
    let n = values.len();
    let groups = (0..n).map(|i| vec![i]).collect();
    Ok(Objective::Sm(SmInstance::new(n, groups, vec![values])?))
}

/// Random directed graph (each ordered pair an arc with probability `density`)
/// with `count` independent-cascade traces at edge probability `p`.
pub fn random_im<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    density: f64,
    p: f64,
    count: usize,
) -> Result<Objective> {
    let graph = random_digraph(rng, n, density)?;
    let cascades = gen_ic_cascades(&graph, p, count, rng.gen());
    Ok(Objective::Im(ImInstance::new(n, cascades)?))
}

pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<DiGraph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    DiGraph::new(n, edges)
}

/// Customers with uniform weights, about `sparsity` of them zeroed.
pub fn random_fl<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    count: usize,
    sparsity: f64,
) -> Result<Objective> {
    let weights = (0..count)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_bool(sparsity) { 0.0 } else { rng.gen() })
                .collect()
        })
        .collect();
    Ok(Objective::Fl(FlInstance::new(n, weights)?))
}

/// Line network `0 - 1 - ... - (V−1)`: requests enter at a random node and
/// travel towards `V−1`. Rates are scaled so the largest empty-cache edge
/// load equals `s_bar` (which must lie in `(0, 1)`).
pub fn random_cn<R: Rng + ?Sized>(
    rng: &mut R,
    nodes: usize,
    catalogue: usize,
    requests: usize,
    s_bar: f64,
) -> Result<Objective> {
    let edges: Vec<CnEdge> = (0..nodes.saturating_sub(1))
        .map(|j| CnEdge {
            u: j + 1,
            v: j,
            mu: rng.gen_range(0.5..2.0),
        })
        .collect();
    let mut reqs: Vec<CnRequest> = (0..requests)
        .map(|_| {
            let start = rng.gen_range(0..nodes.saturating_sub(1).max(1));
            CnRequest {
                item: rng.gen_range(0..catalogue),
                path: (start..nodes).collect(),
                rate: rng.gen_range(0.1..1.0),
            }
        })
        .collect();
    // Edge (j+1, j) carries every request entering at or below j.
    let peak = edges
        .iter()
        .map(|e| {
            reqs.iter()
                .filter(|r| r.path.len() > 1 && r.path[0] <= e.v)
                .map(|r| r.rate)
                .sum::<f64>()
                / e.mu
        })
        .fold(0.0, f64::max);
    if peak > 0.0 {
        let factor = s_bar / peak;
        for r in &mut reqs {
            r.rate *= factor;
        }
    }
    Ok(Objective::Cn(CnInstance::new(nodes, catalogue, edges, reqs)?))
}

/// Partition matroid with random blocks; caps drawn in `1..=max_cap` and
/// trimmed so the rank does not exceed `max_rank`.
pub fn random_partition<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    blocks: usize,
    max_cap: usize,
    max_rank: usize,
) -> Result<Matroid> {
    let blocks = blocks.clamp(1, n.max(1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut groups = vec![Vec::new(); blocks];
    for (pos, &i) in order.iter().enumerate() {
        let g = if pos < blocks { pos } else { rng.gen_range(0..blocks) };
        groups[g].push(i);
    }
    let mut caps: Vec<usize> = (0..blocks).map(|_| rng.gen_range(1..=max_cap.max(1))).collect();
    let mut budget = max_rank;
    for (cap, g) in caps.iter_mut().zip(&groups) {
        *cap = (*cap).min(g.len()).min(budget);
        budget -= *cap;
    }
    Matroid::partition(n, groups, caps)
}
