//! Brute-force ground truth for small ground sets.
//!
//! Everything here enumerates `{0,1}^n` (bit `i` of a mask is `x_i`) or the
//! independent sets of a matroid, so it is only usable for `n` up to
//! [`crate::DEFAULT_EXACT_LIMIT`].

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::objectives::{Objective, Realization};

/// Slack added to every bias bound before computing margins; covers the
/// roundoff of summing a few thousand terms when the bound is attained.
pub const BOUND_ROUNDOFF: f64 = 1e-12;

/// Default cap on independent sets visited by [`brute_opt`].
pub const DEFAULT_OPT_BUDGET: usize = 2_000_000;

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

fn check_point(n: usize, y: &[f64]) -> Result<()> {
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: y.len(),
        });
    }
    if let Some((index, &value)) = y.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
        return Err(Error::CoordinateOutOfRange { index, value });
    }
    Ok(())
}

pub fn mask_to_bits(mask: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// `f_z(x)` for every mask `x ∈ [0, 2^n)`.
pub fn function_table(z: &Realization<'_>, limit: usize) -> Result<Vec<f64>> {
    let n = z.ground_size();
    check_size(n, limit)?;
    let mut x = vec![false; n];
    let mut table = Vec::with_capacity(1 << n);
    for mask in 0..1usize << n {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = mask >> i & 1 == 1;
        }
        table.push(z.value(&x));
    }
    Ok(table)
}

/// Bernoulli product weights `Π y_i^{x_i} (1 − y_i)^{1 − x_i}` for every mask.
/// When `pinned` is `Some(i)`, coordinate `i` contributes 1 for `x_i = 0` and
/// 0 for `x_i = 1`, i.e. the weights of the remaining coordinates.
pub fn bernoulli_weights(y: &[f64], pinned: Option<usize>) -> Vec<f64> {
    let mut w = Vec::with_capacity(1 << y.len());
    w.push(1.0);
    for (i, &yi) in y.iter().enumerate() {
        let (off, on) = if pinned == Some(i) { (1.0, 0.0) } else { (1.0 - yi, yi) };
        let len = w.len();
        w.extend_from_within(..len);
        for (m, wm) in w.iter_mut().enumerate() {
            *wm *= if m < len { off } else { on };
        }
    }
    w
}

/// `Σ_x table[x] · P_y(x)`.
pub fn expectation(table: &[f64], y: &[f64]) -> f64 {
    table
        .iter()
        .zip(bernoulli_weights(y, None))
        .map(|(f, w)| f * w)
        .sum()
}

/// `∂_i G = Σ_{x: x_i = 0} P_{y,−i}(x) (f(x + i) − f(x))` for every `i`.
pub fn gradient_from_table(table: &[f64], y: &[f64]) -> Vec<f64> {
    (0..y.len())
        .map(|i| {
            let bit = 1usize << i;
            bernoulli_weights(y, Some(i))
                .iter()
                .enumerate()
                .filter(|(m, _)| m & bit == 0)
                .map(|(m, w)| w * (table[m | bit] - table[m]))
                .sum()
        })
        .collect()
}

/// Multilinear relaxation `G_z(y)` of one realization.
pub fn exact_g_z(z: &Realization<'_>, y: &[f64], limit: usize) -> Result<f64> {
    check_point(z.ground_size(), y)?;
    Ok(expectation(&function_table(z, limit)?, y))
}

/// `∇G_z(y)` by enumeration.
pub fn exact_gradient(z: &Realization<'_>, y: &[f64], limit: usize) -> Result<Vec<f64>> {
    check_point(z.ground_size(), y)?;
    Ok(gradient_from_table(&function_table(z, limit)?, y))
}

/// Function tables of every stored realization.
pub fn all_tables(obj: &Objective, limit: usize) -> Result<Vec<Vec<f64>>> {
    check_size(obj.ground_size(), limit)?;
    obj.realizations().map(|z| function_table(&z, limit)).collect()
}

/// `G(y)`: the relaxation averaged over all stored realizations.
pub fn exact_g(obj: &Objective, y: &[f64], limit: usize) -> Result<f64> {
    check_point(obj.ground_size(), y)?;
    let tables = all_tables(obj, limit)?;
    Ok(mean_expectation(&tables, y))
}

pub fn mean_expectation(tables: &[Vec<f64>], y: &[f64]) -> f64 {
    if tables.is_empty() {
        return 0.0;
    }
    let w = bernoulli_weights(y, None);
    let total: f64 = tables
        .iter()
        .map(|t| t.iter().zip(&w).map(|(f, w)| f * w).sum::<f64>())
        .sum();
    total / tables.len() as f64
}

/// `f̄(S)`: the empirical mean of `f_z(S)` over stored realizations.
pub fn mean_value(obj: &Objective, set: &[usize]) -> Result<f64> {
    let n = obj.ground_size();
    let mut x = vec![false; n];
    for &i in set {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        x[i] = true;
    }
    let count = obj.stored_count();
    if count == 0 {
        return Err(Error::EmptyRealizations);
    }
    Ok(obj.realizations().map(|z| z.value(&x)).sum::<f64>() / count as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptReport {
    pub best_set: Vec<usize>,
    pub best_value: f64,
    pub enumerated: usize,
    /// Largest singleton value `max_i f̄({i})`.
    pub f_max: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub margins: Vec<BiasRow>,
}

/// Exhaustive maximum of `f̄` over the independent sets of `m`. Ties keep the
/// set enumerated first (lexicographic order of sorted index lists).
pub fn brute_opt(obj: &Objective, m: &Matroid, budget: usize) -> Result<OptReport> {
    let n = obj.ground_size();
    if m.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.n(),
        });
    }
    if obj.stored_count() == 0 {
        return Err(Error::EmptyRealizations);
    }
    let zs: Vec<Realization<'_>> = obj.realizations().collect();
    let mut x = vec![false; n];
    let mut best: Option<(Vec<usize>, f64)> = None;
    let enumerated = m.for_each_independent(budget, |set| {
        for &i in set {
            x[i] = true;
        }
        let value = zs.iter().map(|z| z.value(&x)).sum::<f64>() / zs.len() as f64;
        for &i in set {
            x[i] = false;
        }
        if best.as_ref().is_none_or(|(_, b)| value > *b) {
            best = Some((set.to_vec(), value));
        }
    })?;
    let (best_set, best_value) = best.expect("the empty set is always independent");
    Ok(OptReport {
        best_set,
        best_value,
        enumerated,
        f_max: f_max(obj)?,
        margins: Vec::new(),
    })
}

pub fn singleton_values(obj: &Objective) -> Result<Vec<f64>> {
    (0..obj.ground_size()).map(|i| mean_value(obj, &[i])).collect()
}

pub fn f_max(obj: &Objective) -> Result<f64> {
    Ok(singleton_values(obj)?.into_iter().fold(0.0, f64::max))
}

/// `max_{S ∈ I} Σ_{i∈S} f̄({i})`, an upper bound on OPT for normalized monotone
/// submodular objectives that needs no enumeration.
pub fn singleton_upper_bound(obj: &Objective, m: &Matroid) -> Result<f64> {
    let singles = singleton_values(obj)?;
    let set = m.linear_maximize(&singles)?;
    Ok(set.iter().map(|&i| singles[i]).sum())
}

/// Lazy greedy on `f̄` under the matroid: repeatedly add the feasible element
/// with the largest marginal gain, re-evaluating stale upper bounds only.
pub fn lazy_greedy(obj: &Objective, m: &Matroid) -> Result<(Vec<usize>, f64)> {
    let n = obj.ground_size();
    let mut chosen: Vec<usize> = Vec::new();
    let mut current = mean_value(obj, &[])?;
    let mut bounds: Vec<(f64, usize)> = (0..n)
        .map(|i| Ok((mean_value(obj, &[i])? - current, i)))
        .collect::<Result<_>>()?;
    let mut fresh = vec![0usize; n];
    let mut round = 0usize;
    loop {
        bounds.retain(|&(_, i)| {
            let mut trial = chosen.clone();
            trial.push(i);
            m.is_independent(&trial).unwrap_or(false)
        });
        bounds.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let Some(&(gain, i)) = bounds.first() else {
            break;
        };
        if fresh[i] == round {
            if gain <= 0.0 {
                break;
            }
            chosen.push(i);
            current += gain;
            bounds.remove(0);
            round += 1;
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(i);
        bounds[0].0 = mean_value(obj, &trial)? - current;
        fresh[i] = round;
    }
    chosen.sort_unstable();
    let value = mean_value(obj, &chosen)?;
    Ok((chosen, value))
}

/// One line of the bias verification table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasRow {
    pub z: u64,
    pub degree: usize,
    /// `max_x |f_z(x) − f̂_z^L(x)|` over binary `x`.
    pub function_error: f64,
    pub function_bound: f64,
    /// Largest `‖∇G_z(y) − ∇̂G_z^L(y)‖₂` over the sampled points.
    pub gradient_error: f64,
    pub gradient_bound: f64,
}

impl BiasRow {
    pub fn function_margin(&self) -> f64 {
        self.function_bound + BOUND_ROUNDOFF - self.function_error
    }

    pub fn gradient_margin(&self) -> f64 {
        self.gradient_bound + BOUND_ROUNDOFF - self.gradient_error
    }

    pub fn passed(&self) -> bool {
        self.function_margin() >= 0.0 && self.gradient_margin() >= 0.0
    }
}

/// Checks the surrogate bounds for every `z` in `zs`: the binary-input error
/// of `f̂_z^L` against its uniform bound, and the gradient error at `points`
/// random `y` against `2√n ε(L)`.
pub fn verify_bias<R: Rng + ?Sized>(
    obj: &Objective,
    degree: usize,
    zs: &[u64],
    points: usize,
    rng: &mut R,
    limit: usize,
    budget: usize,
) -> Result<Vec<BiasRow>> {
    let n = obj.ground_size();
    check_size(n, limit)?;
    let mut rows = Vec::with_capacity(zs.len());
    for &id in zs {
        let z = obj.realization(id)?;
        let table = function_table(&z, limit)?;
        let fhat = z.compose_fhat(degree, budget)?;
        let function_error = (0..table.len())
            .map(|mask| {
                let approx = fhat
                    .evaluate_binary(&mask_to_bits(mask, n))
                    .expect("dimension checked");
                (table[mask] - approx).abs()
            })
            .fold(0.0, f64::max);
        let mut gradient_error: f64 = 0.0;
        for _ in 0..points {
            let y: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
            let exact = gradient_from_table(&table, &y);
            let poly = fhat.gradient(&y)?;
            gradient_error = gradient_error.max(l2_distance(&exact, &poly));
        }
        rows.push(BiasRow {
            z: id,
            degree,
            function_error,
            function_bound: z.function_bias_bound(degree),
            gradient_error,
            gradient_bound: z.gradient_bias_bound(degree),
        });
    }
    Ok(rows)
}

pub fn l2_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
