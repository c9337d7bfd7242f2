//! Swap rounding of a convex combination of independent sets.
//!
//! Every vertex is first padded to a basis of the slack-extended matroid: block
//! `ℓ` receives `rank_ℓ − |v ∩ B_ℓ|` dummy elements, so all padded vertices have
//! exactly `rank_ℓ` elements per block. Vertices are then merged left to right;
//! merging `(C, w_C)` into `(B, w_B)` repeatedly takes the smallest `i ∈ C \ B`
//! and the smallest `j ∈ B \ C` from the same block, and with probability
//! `w_C / (w_C + w_B)` sets `B ← B − j + i`, otherwise `C ← C − i + j`. Dummies
//! are dropped at the end. Inclusion probabilities equal the weighted
//! marginals of the decomposition.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matroid::Matroid;

const WEIGHT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexDecomposition {
    vertices: Vec<Vec<usize>>,
    weights: Vec<f64>,
}

impl ConvexDecomposition {
    /// Positive weights summing to one; vertices are sorted and deduplicated.
    pub fn new(vertices: Vec<Vec<usize>>, weights: Vec<f64>) -> Result<Self> {
        if vertices.len() != weights.len() || vertices.is_empty() {
            return Err(Error::Config(format!(
                "{} vertices with {} weights",
                vertices.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::Config(format!("weight {w} is not positive")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::Config(format!("weights sum to {total}, not 1")));
        }
        let vertices = vertices
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        Ok(Self { vertices, weights })
    }

    /// The SCG output `(1/T) Σ_t v_t` with equal vertices merged (in order of
    /// first appearance).
    pub fn from_supports(supports: &[Vec<usize>]) -> Result<Self> {
        let t = supports.len();
        let mut vertices: Vec<Vec<usize>> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for s in supports {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            match vertices.iter().position(|v| *v == s) {
                Some(k) => counts[k] += 1,
                None => {
                    vertices.push(s);
                    counts.push(1);
                }
            }
        }
        let weights = counts.into_iter().map(|c| c as f64 / t as f64).collect();
        Self::new(vertices, weights)
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn validate(&self, m: &Matroid) -> Result<()> {
        for v in &self.vertices {
            if !m.is_independent(v)? {
                return Err(Error::NotIndependent(v.clone()));
            }
        }
        Ok(())
    }

    /// `y_i = Σ_j w_j 𝟙[i ∈ vertex_j]`.
    pub fn marginals(&self, n: usize) -> Vec<f64> {
        let mut y = vec![0.0; n];
        for (v, w) in self.vertices.iter().zip(&self.weights) {
            for &i in v {
                y[i] += w;
            }
        }
        y
    }
}

struct Padding {
    n: usize,
    /// First dummy id of every block.
    offsets: Vec<usize>,
}

impl Padding {
    fn new(m: &Matroid) -> Self {
        let mut offsets = Vec::with_capacity(m.blocks().len());
        let mut next = m.n();
        for b in 0..m.blocks().len() {
            offsets.push(next);
            next += m.block_rank(b);
        }
        Self { n: m.n(), offsets }
    }

    fn block(&self, m: &Matroid, e: usize) -> usize {
        if e < self.n {
            m.block_of(e)
        } else {
            self.offsets.partition_point(|&o| o <= e) - 1
        }
    }

    fn pad(&self, m: &Matroid, vertex: &[usize]) -> BTreeSet<usize> {
        let mut used = vec![0usize; self.offsets.len()];
        for &i in vertex {
            used[m.block_of(i)] += 1;
        }
        let mut set: BTreeSet<usize> = vertex.iter().copied().collect();
        for (b, &u) in used.iter().enumerate() {
            set.extend(self.offsets[b]..self.offsets[b] + m.block_rank(b) - u);
        }
        set
    }
}

pub fn swap_round<R: Rng + ?Sized>(
    m: &Matroid,
    dec: &ConvexDecomposition,
    rng: &mut R,
) -> Result<Vec<usize>> {
    dec.validate(m)?;
    let pad = Padding::new(m);
    let mut merged = pad.pad(m, &dec.vertices[0]);
    let mut weight = dec.weights[0];
    for (v, &w) in dec.vertices.iter().zip(&dec.weights).skip(1) {
        let mut other = pad.pad(m, v);
        while let Some(&i) = other.difference(&merged).next() {
            let block = pad.block(m, i);
            let j = *merged
                .difference(&other)
                .find(|&&j| pad.block(m, j) == block)
                .expect("padded vertices have equal block counts");
            if rng.gen::<f64>() * (weight + w) < w {
                merged.remove(&j);
                merged.insert(i);
            } else {
                other.remove(&i);
                other.insert(j);
            }
        }
        weight += w;
    }
    let set: Vec<usize> = merged.into_iter().filter(|&e| e < pad.n).collect();
    debug_assert!(m.is_independent(&set).unwrap_or(false));
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    #[test]
    fn integral_is_deterministic() {
        let m = Matroid::uniform(4, 2);
        let dec = ConvexDecomposition::new(vec![vec![3, 1]], vec![1.0]).unwrap();
        let mut rng = seeded_rng(0);
        for _ in 0..5 {
            assert_eq!(swap_round(&m, &dec, &mut rng).unwrap(), vec![1, 3]);
        }
    }

    #[test]
    fn uniform_two_outcomes() {
        let m = Matroid::uniform(2, 1);
        let dec = ConvexDecomposition::new(vec![vec![0], vec![1]], vec![0.5, 0.5]).unwrap();
        let mut rng = seeded_rng(11);
        let draws = 10_000;
        let hits = (0..draws)
            .filter(|_| swap_round(&m, &dec, &mut rng).unwrap() == vec![0])
            .count();
        assert!((hits as f64 / draws as f64 - 0.5).abs() <= 0.015);
    }

    #[test]
    fn empty_and_partial_vertices() {
        let m = Matroid::partition(4, vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
        let dec = ConvexDecomposition::from_supports(&[vec![], vec![0, 2], vec![1], vec![0, 2]]).unwrap();
        assert_eq!(dec.vertices().len(), 3);
        assert_eq!(dec.marginals(4), vec![0.5, 0.25, 0.5, 0.0]);
        let mut rng = seeded_rng(2);
        for _ in 0..100 {
            let s = swap_round(&m, &dec, &mut rng).unwrap();
            assert!(m.is_independent(&s).unwrap());
            assert!(!s.contains(&3));
        }
    }

    #[test]
    fn rejects_dependent_vertex() {
        let m = Matroid::uniform(3, 1);
        let dec = ConvexDecomposition::new(vec![vec![0, 1]], vec![1.0]).unwrap();
        assert!(matches!(
            swap_round(&m, &dec, &mut seeded_rng(0)),
            Err(Error::NotIndependent(_))
        ));
        assert!(ConvexDecomposition::new(vec![vec![0]], vec![0.9]).is_err());
    }
}
