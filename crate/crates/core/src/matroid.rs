//! Uniform and partition matroids.
//!
//! Besides independence and rank, a matroid provides the linear maximization
//! step of continuous greedy: `argmax_{v ∈ P(M)} dᵀv` over the matroid polytope,
//! which for these two kinds is a per-block top-k selection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serialized form, as stored in instance files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidSpec {
    Uniform { k: usize },
    Partition { blocks: Vec<Vec<usize>>, caps: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matroid {
    n: usize,
    spec: MatroidSpec,
    /// Block id of every element. Uniform matroids use a single block.
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    caps: Vec<usize>,
}

impl Matroid {
    pub fn uniform(n: usize, k: usize) -> Self {
        Self {
            n,
            spec: MatroidSpec::Uniform { k },
            block_of: vec![0; n],
            blocks: vec![(0..n).collect()],
            caps: vec![k],
        }
    }

    /// Partition matroid; blocks must be pairwise disjoint and cover `0..n`.
    pub fn partition(n: usize, blocks: Vec<Vec<usize>>, caps: Vec<usize>) -> Result<Self> {
        if blocks.len() != caps.len() {
            return Err(Error::InvalidMatroid(format!(
                "{} blocks but {} caps",
                blocks.len(),
                caps.len()
            )));
        }
        let mut block_of = vec![usize::MAX; n];
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            let mut block = block.clone();
            block.sort_unstable();
            for &i in &block {
                if i >= n {
                    return Err(Error::InvalidMatroid(format!(
                        "block {b} contains element {i} >= n = {n}"
                    )));
                }
                if block_of[i] != usize::MAX {
                    return Err(Error::InvalidMatroid(format!(
                        "element {i} appears in more than one block"
                    )));
                }
                block_of[i] = b;
            }
            sorted_blocks.push(block);
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidMatroid(format!(
                "element {i} is not covered by any block"
            )));
        }
        Ok(Self {
            n,
            spec: MatroidSpec::Partition { blocks, caps: caps.clone() },
            block_of,
            blocks: sorted_blocks,
            caps,
        })
    }

    /// `m` contiguous blocks of near-equal size with cap `k` each.
    pub fn equal_blocks(n: usize, m: usize, k: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::InvalidMatroid(format!(
                "cannot split {n} elements into {m} blocks"
            )));
        }
        let blocks = (0..m)
            .map(|b| (b * n / m..(b + 1) * n / m).collect())
            .collect();
        Self::partition(n, blocks, vec![k; m])
    }

    pub fn from_spec(n: usize, spec: &MatroidSpec) -> Result<Self> {
        match spec {
            MatroidSpec::Uniform { k } => Ok(Self::uniform(n, *k)),
            MatroidSpec::Partition { blocks, caps } => {
                Self::partition(n, blocks.clone(), caps.clone())
            }
        }
    }

    pub fn spec(&self) -> &MatroidSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.spec, MatroidSpec::Uniform { .. })
    }

    /// Number of elements a basis takes from block `b`.
    pub fn block_rank(&self, b: usize) -> usize {
        self.caps[b].min(self.blocks[b].len())
    }

    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        if let Some(&i) = set.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        match self.spec {
            MatroidSpec::Uniform { k } => Ok(set.len() <= k),
            MatroidSpec::Partition { .. } => {
                let mut counts = vec![0usize; self.caps.len()];
                for &i in &set {
                    let b = self.block_of[i];
                    counts[b] += 1;
                    if counts[b] > self.caps[b] {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self.spec {
            MatroidSpec::Uniform { k } => k.min(self.n),
            MatroidSpec::Partition { .. } => (0..self.caps.len()).map(|b| self.block_rank(b)).sum(),
        }
    }

    /// Support of a maximizer of `dᵀv` over the matroid polytope, in increasing
    /// order. Only strictly positive weights are selected; within a block the
    /// largest weights win and equal weights are broken by lowest index.
    pub fn linear_maximize(&self, d: &[f64]) -> Result<Vec<usize>> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: d.len(),
            });
        }
        if let Some(i) = d.iter().position(|v| v.is_nan()) {
            return Err(Error::Malformed(format!("weight {i} is NaN")));
        }
        let by_weight = |a: &usize, b: &usize| d[*b].total_cmp(&d[*a]).then(a.cmp(b));
        let mut chosen = Vec::with_capacity(self.rank());
        match self.spec {
            MatroidSpec::Uniform { k } => {
                let mut positive: Vec<usize> = (0..self.n).filter(|&i| d[i] > 0.0).collect();
                positive.sort_by(by_weight);
                chosen.extend(positive.into_iter().take(k));
            }
            MatroidSpec::Partition { .. } => {
                for (block, &cap) in self.blocks.iter().zip(&self.caps) {
                    let mut positive: Vec<usize> =
                        block.iter().copied().filter(|&i| d[i] > 0.0).collect();
                    positive.sort_by(by_weight);
                    chosen.extend(positive.into_iter().take(cap));
                }
            }
        }
        chosen.sort_unstable();
        Ok(chosen)
    }

    /// Calls `visit` on every independent set (as a sorted index list), failing
    /// once more than `budget` sets have been produced.
    pub fn for_each_independent<F>(&self, budget: usize, mut visit: F) -> Result<usize>
    where
        F: FnMut(&[usize]),
    {
        let mut counts = vec![0usize; self.caps.len()];
        let mut current = Vec::with_capacity(self.rank());
        let mut produced = 0usize;
        self.enumerate_from(0, &mut counts, &mut current, &mut produced, budget, &mut visit)?;
        Ok(produced)
    }

    fn enumerate_from<F>(
        &self,
        start: usize,
        counts: &mut [usize],
        current: &mut Vec<usize>,
        produced: &mut usize,
        budget: usize,
        visit: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[usize]),
    {
        *produced += 1;
        if *produced > budget {
            return Err(Error::EnumerationBudget { budget });
        }
        visit(current);
        for i in start..self.n {
            let b = self.block_of[i];
            if counts[b] < self.caps[b] {
                counts[b] += 1;
                current.push(i);
                self.enumerate_from(i + 1, counts, current, produced, budget, visit)?;
                current.pop();
                counts[b] -= 1;
            }
        }
        Ok(())
    }
}

pub fn indicator(n: usize, support: &[usize]) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for &i in support {
        v[i] = 1.0;
    }
    v
}
