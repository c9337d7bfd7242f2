//! Stochastic continuous greedy.
//!
//! Starting from `d_0 = y_0 = 0`, iteration `t = 1..T` draws `z_t`, forms
//! `d_t = (1 − ρ_t) d_{t−1} + ρ_t ĝ(z_t, y_t)`, picks the matroid vertex
//! `v_t = argmax_{v} d_tᵀ v` and moves `y ← y + v_t / T`. The iterate is kept
//! as per-coordinate vertex counts divided by `T`, so `y_T = (1/T) Σ_t v_t`
//! holds exactly.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{EstimatorConfig, EstimatorKind, GradientEstimator};
use crate::matroid::Matroid;
use crate::objectives::{Objective, Realization};
use crate::oracle::{function_table, mean_expectation};
use crate::rng::{derive_seed, stream_rng, REPORTING_STREAM, X_STREAM, Z_STREAM};
use crate::DEFAULT_EXACT_LIMIT;

/// Column order of trajectory CSV files.
pub const TRAJECTORY_HEADER: [&str; 7] =
    ["t", "wall_ms", "estimator", "param", "utility", "d_norm", "v_support"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RhoSchedule {
    /// `ρ_t = 4 / (t + 8)^{2/3}`.
    #[default]
    Default,
    Constant { rho: f64 },
}

impl RhoSchedule {
    pub fn rho(&self, t: usize) -> f64 {
        match *self {
            RhoSchedule::Default => 4.0 / (t as f64 + 8.0).powf(2.0 / 3.0),
            RhoSchedule::Constant { rho } => rho,
        }
    }
}

/// How `Ĝ(y)` is reported along the trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UtilityConfig {
    /// Realizations averaged: all stored ones when `None` (20 simulated ones
    /// for generative objectives).
    pub realizations: Option<usize>,
    /// Bernoulli draws per realization once `n` exceeds `exact_limit`.
    pub draws: usize,
    pub exact_limit: usize,
}

impl Default for UtilityConfig {
    fn default() -> Self {
        Self {
            realizations: None,
            draws: 200,
            exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScgConfig {
    pub iterations: usize,
    pub rho: RhoSchedule,
    pub estimator: EstimatorConfig,
    pub seed: u64,
    /// Master seed of the SAMP Bernoulli streams; defaults to `seed`.
    pub x_seed: Option<u64>,
    /// Realizations averaged per iteration.
    pub batch: usize,
    pub utility: UtilityConfig,
    /// Skip utility reporting entirely (the column is left empty).
    pub report_utility: bool,
}

impl ScgConfig {
    pub fn new(iterations: usize, kind: EstimatorKind, seed: u64) -> Self {
        Self {
            iterations,
            rho: RhoSchedule::Default,
            estimator: EstimatorConfig::new(kind),
            seed,
            x_seed: None,
            batch: 1,
            utility: UtilityConfig::default(),
            report_utility: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Config("need at least one iteration".into()));
        }
        if self.batch == 0 {
            return Err(Error::Config("batch size must be at least 1".into()));
        }
        if let RhoSchedule::Constant { rho } = self.rho {
            if !(rho > 0.0 && rho <= 1.0) {
                return Err(Error::Config(format!("constant rho {rho} outside (0, 1]")));
            }
        }
        self.estimator.kind.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub t: usize,
    /// Cumulative optimization time; utility reporting is not counted.
    pub wall_ms: f64,
    pub d_norm: f64,
    pub support: Vec<usize>,
    pub utility: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub estimator: EstimatorKind,
    pub iterations: usize,
    pub records: Vec<IterationRecord>,
    pub final_y: Vec<f64>,
}

impl Trajectory {
    pub fn total_wall_ms(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.wall_ms)
    }

    pub fn final_utility(&self) -> Option<f64> {
        self.records.iter().rev().find_map(|r| r.utility)
    }

    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.records.iter().map(|r| r.support.clone()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out).expect("writing to memory");
        String::from_utf8(out).expect("csv is utf-8")
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(TRAJECTORY_HEADER)?;
        let (label, param) = (self.estimator.label(), self.estimator.param().to_string());
        for r in &self.records {
            wtr.write_record([
                r.t.to_string().as_str(),
                &r.wall_ms.to_string(),
                label,
                &param,
                &r.utility.map(|u| u.to_string()).unwrap_or_default(),
                &r.d_norm.to_string(),
                &join_support(&r.support),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

pub fn join_support(support: &[usize]) -> String {
    support
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// A parsed trajectory CSV line.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct TrajectoryRow {
    pub t: usize,
    pub wall_ms: f64,
    pub estimator: String,
    pub param: usize,
    pub utility: Option<f64>,
    pub d_norm: f64,
    #[serde(deserialize_with = "parse_support")]
    pub v_support: Vec<usize>,
}

fn parse_support<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<usize>, D::Error> {
    let raw = String::deserialize(d)?;
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(';')
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .collect()
}

pub fn read_trajectory_csv(data: impl std::io::Read) -> Result<Vec<TrajectoryRow>> {
    let mut rdr = csv::Reader::from_reader(data);
    let headers = rdr.headers()?.clone();
    if headers.iter().ne(TRAJECTORY_HEADER) {
        return Err(Error::Malformed(format!(
            "trajectory header {:?} does not match {:?}",
            headers.iter().collect::<Vec<_>>(),
            TRAJECTORY_HEADER
        )));
    }
    rdr.deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn load_trajectory_csv(path: &Path) -> Result<Vec<TrajectoryRow>> {
    read_trajectory_csv(std::fs::File::open(path)?)
}

/// `(1/T) Σ_t v_t` from the recorded supports.
pub fn reconstruct_y(n: usize, supports: &[Vec<usize>]) -> Vec<f64> {
    let mut counts = vec![0u32; n];
    for s in supports {
        for &i in s {
            counts[i] += 1;
        }
    }
    let t = supports.len() as f64;
    counts.into_iter().map(|c| f64::from(c) / t).collect()
}

/// Iterations at which utility is reported: all of them up to 1000, beyond
/// that about 200 log-spaced ones plus the last.
pub fn utility_schedule(iterations: usize) -> Vec<bool> {
    let mut keep = vec![false; iterations + 1];
    if iterations <= 1000 {
        keep[1..].iter_mut().for_each(|k| *k = true);
        return keep;
    }
    let points = 200;
    for j in 0..=points {
        let t = (iterations as f64).powf(j as f64 / points as f64).round() as usize;
        keep[t.clamp(1, iterations)] = true;
    }
    keep[iterations] = true;
    keep
}

/// Utility reporter with its own fixed random stream, so reporting never
/// touches optimization state.
pub struct UtilityEstimator<'a> {
    objective: &'a Objective,
    zs: Vec<Realization<'a>>,
    tables: Option<Vec<Vec<f64>>>,
    uniforms: Vec<Vec<f64>>,
}

impl<'a> UtilityEstimator<'a> {
    pub fn new(objective: &'a Objective, cfg: &UtilityConfig, seed: u64) -> Result<Self> {
        let n = objective.ground_size();
        let mut rng = stream_rng(seed, REPORTING_STREAM, 0);
        let zs: Vec<Realization<'a>> = if objective.is_generative() {
            (0..cfg.realizations.unwrap_or(20))
                .map(|_| objective.sample_z(&mut rng))
                .collect::<Result<_>>()?
        } else {
            match cfg.realizations {
                Some(m) if m < objective.stored_count() => (0..m)
                    .map(|_| objective.sample_z(&mut rng))
                    .collect::<Result<_>>()?,
                _ => objective.realizations().collect(),
            }
        };
        if zs.is_empty() {
            return Err(Error::EmptyRealizations);
        }
        let exact = n <= cfg.exact_limit;
        // Keep tables only while they stay below ~128 MiB.
        let tables = if exact && zs.len().saturating_mul(1usize << n) <= 1 << 24 {
            Some(
                zs.iter()
                    .map(|z| function_table(z, cfg.exact_limit))
                    .collect::<Result<_>>()?,
            )
        } else {
            None
        };
        let uniforms = if exact {
            Vec::new()
        } else {
            (0..cfg.draws.max(1))
                .map(|_| (0..n).map(|_| rng.gen::<f64>()).collect())
                .collect()
        };
        Ok(Self {
            objective,
            zs,
            tables,
            uniforms,
        })
    }

    pub fn objective(&self) -> &'a Objective {
        self.objective
    }

    pub fn is_exact(&self) -> bool {
        self.uniforms.is_empty()
    }

    pub fn estimate(&self, y: &[f64]) -> Result<f64> {
        let n = self.objective.ground_size();
        if y.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: y.len(),
            });
        }
        if let Some(tables) = &self.tables {
            return Ok(mean_expectation(tables, y));
        }
        if self.is_exact() {
            let mut total = 0.0;
            for z in &self.zs {
                total += crate::oracle::expectation(&function_table(z, n)?, y);
            }
            return Ok(total / self.zs.len() as f64);
        }
        let mut x = vec![false; n];
        let mut total = 0.0;
        for u in &self.uniforms {
            for ((xi, ui), yi) in x.iter_mut().zip(u).zip(y) {
                *xi = ui < yi;
            }
            total += self.zs.iter().map(|z| z.value(&x)).sum::<f64>();
        }
        Ok(total / (self.uniforms.len() * self.zs.len()) as f64)
    }
}

/// `Ĝ(y)` averaged over realizations: exact enumeration for small `n`,
/// otherwise Bernoulli sampling from the reporting stream of `seed`.
pub fn estimate_utility(obj: &Objective, y: &[f64], cfg: &UtilityConfig, seed: u64) -> Result<f64> {
    UtilityEstimator::new(obj, cfg, seed)?.estimate(y)
}

pub fn run_scg(obj: &Objective, m: &Matroid, cfg: &ScgConfig) -> Result<Trajectory> {
    let estimator = GradientEstimator::new(cfg.estimator)?;
    run_scg_with(obj, m, cfg, &estimator)
}

/// As [`run_scg`], reusing the caches of `estimator` (which must have been
/// built for `obj` with the same estimator configuration).
pub fn run_scg_with(
    obj: &Objective,
    m: &Matroid,
    cfg: &ScgConfig,
    estimator: &GradientEstimator,
) -> Result<Trajectory> {
    cfg.validate()?;
    let n = obj.ground_size();
    if m.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.n(),
        });
    }
    let reporter = if cfg.report_utility {
        Some(UtilityEstimator::new(obj, &cfg.utility, cfg.seed)?)
    } else {
        None
    };
    let schedule = utility_schedule(cfg.iterations);
    let big_t = cfg.iterations;
    let x_master = cfg.x_seed.unwrap_or(cfg.seed);
    let mut z_rng = stream_rng(cfg.seed, Z_STREAM, 0);
    let mut d = vec![0.0; n];
    let mut counts = vec![0u32; n];
    let mut y = vec![0.0; n];
    let mut records = Vec::with_capacity(big_t);
    let mut elapsed = 0.0;
    for (t, &report) in schedule.iter().enumerate().skip(1) {
        let start = Instant::now();
        let at = |source: Error| Error::AtIteration {
            iteration: t,
            source: Box::new(source),
        };
        let mut g = vec![0.0; n];
        for b in 0..cfg.batch {
            let z = obj.sample_z(&mut z_rng).map_err(at)?;
            let x_seed = derive_seed(x_master, X_STREAM, ((t - 1) * cfg.batch + b) as u64);
            let est = estimator.estimate(&z, &y, x_seed).map_err(at)?;
            for (gi, v) in g.iter_mut().zip(&est.values) {
                *gi += v;
            }
        }
        if cfg.batch > 1 {
            let inv = 1.0 / cfg.batch as f64;
            g.iter_mut().for_each(|gi| *gi *= inv);
        }
        let rho = cfg.rho.rho(t);
        for (di, gi) in d.iter_mut().zip(&g) {
            *di = (1.0 - rho) * *di + rho * gi;
        }
        let support = m.linear_maximize(&d).map_err(at)?;
        for &i in &support {
            counts[i] += 1;
        }
        for (yi, &c) in y.iter_mut().zip(&counts) {
            *yi = f64::from(c) / big_t as f64;
            assert!(*yi <= 1.0 + 1e-9, "coordinate exceeded 1 at iteration {t}");
        }
        elapsed += start.elapsed().as_secs_f64() * 1e3;
        let d_norm = d.iter().map(|v| v * v).sum::<f64>().sqrt();
        let utility = match &reporter {
            Some(r) if report => Some(r.estimate(&y).map_err(at)?),
            _ => None,
        };
        records.push(IterationRecord {
            t,
            wall_ms: elapsed,
            d_norm,
            support,
            utility,
        });
    }
    Ok(Trajectory {
        estimator: cfg.estimator.kind,
        iterations: big_t,
        records,
        final_y: y,
    })
}
