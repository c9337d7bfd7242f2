//! `run` and `compare`.
//!
//! `run` writes one trajectory CSV per (estimator, seed) pair into the output
//! directory plus `manifest.json`:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "instance": "/abs/path/instance.json",
//!   "family": "IM",
//!   "ground_size": 34,
//!   "iterations": 50,
//!   "runs": [
//!     {"estimator": "SAMP", "param": 10, "seed": 0, "csv": "SAMP10_seed0.csv",
//!      "status": "ok", "total_wall_ms": 12.5, "final_utility": 0.41}
//!   ],
//!   "total_wall_ms": 830.2
//! }
//! ```
//!
//! Failed runs keep their entry with `"status": "failed"` and an `error`.
//! `compare` turns a manifest into `estimator,param,final_utility,total_wall_ms`
//! rows, averaging over seeds.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use scg_core::dataio::{load_instance, InstanceFile};
use scg_core::estimators::EstimatorKind;
use scg_core::scg::{load_trajectory_csv, reconstruct_y, UtilityConfig, UtilityEstimator};
use scg_core::{run_scg, Error, ScgConfig};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const PARETO_HEADER: [&str; 4] = ["estimator", "param", "final_utility", "total_wall_ms"];

#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Comma-separated list such as `SAMP:1,SAMP:10,POLY:2`.
    #[arg(long, default_value = "SAMP:1,SAMP:10,SAMP:20,SAMP:100,POLY:1,POLY:2")]
    pub estimators: String,
    #[arg(long, short = 'T', default_value_t = 100)]
    pub iterations: usize,
    /// Comma-separated master seeds.
    #[arg(long, default_value = "0")]
    pub seeds: String,
    /// Master seed of the SAMP Bernoulli streams (defaults to each run's seed).
    #[arg(long)]
    pub x_seed: Option<u64>,
    /// Uniform matroid rank overriding the instance's matroid.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, env = "SCG_OUT_DIR", default_value = "runs")]
    pub out_dir: PathBuf,
    /// Bernoulli draws per realization for utility reporting on large ground sets.
    #[arg(long, default_value_t = 200)]
    pub utility_draws: usize,
    /// Worker threads (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunEntry {
    pub estimator: String,
    pub param: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
    pub status: RunStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_wall_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_utility: Option<f64>,
}

impl RunEntry {
    pub fn kind(&self) -> Result<EstimatorKind, Error> {
        if self.estimator == "EXACT" {
            Ok(EstimatorKind::Exact)
        } else {
            format!("{}:{}", self.estimator, self.param).parse()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub instance: String,
    pub family: String,
    pub ground_size: usize,
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_override: Option<usize>,
    pub runs: Vec<RunEntry>,
    pub total_wall_ms: f64,
}

impl Manifest {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text)
            .map_err(Error::from)
            .with_context(|| format!("parsing {}", path.display()))
    }
}

pub fn csv_name(kind: &EstimatorKind, seed: u64) -> String {
    match kind {
        EstimatorKind::Exact => format!("EXACT_seed{seed}.csv"),
        k => format!("{}{}_seed{seed}.csv", k.label(), k.param()),
    }
}

fn instance_matroid(instance: &InstanceFile, k: Option<usize>) -> scg_core::Matroid {
    match k {
        Some(k) => scg_core::Matroid::uniform(instance.matroid.n(), k),
        None => instance.matroid.clone(),
    }
}

pub fn cmd_run(args: &RunArgs) -> anyhow::Result<Manifest> {
    let kinds: Vec<EstimatorKind> = crate::parse_list(&args.estimators)?;
    let seeds: Vec<u64> = crate::parse_list(&args.seeds)?;
    if kinds.is_empty() || seeds.is_empty() {
        return Err(Error::Config("need at least one estimator and one seed".into()).into());
    }
    if args.iterations == 0 {
        return Err(Error::Config("--iterations must be at least 1".into()).into());
    }
    let instance = load_instance(&args.instance)
        .with_context(|| format!("loading {}", args.instance.display()))?;
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    let matroid = instance_matroid(&instance, args.k);
    let pairs: Vec<(EstimatorKind, u64)> = kinds
        .iter()
        .flat_map(|&k| seeds.iter().map(move |&s| (k, s)))
        .collect();
    let start = Instant::now();
    let one = |&(kind, seed): &(EstimatorKind, u64)| -> RunEntry {
        let mut cfg = ScgConfig::new(args.iterations, kind, seed);
        cfg.x_seed = args.x_seed;
        cfg.utility = UtilityConfig {
            draws: args.utility_draws,
            ..UtilityConfig::default()
        };
        let name = csv_name(&kind, seed);
        let mut entry = RunEntry {
            estimator: kind.label().to_string(),
            param: kind.param(),
            seed,
            csv: None,
            status: RunStatus::Ok,
            error: None,
            total_wall_ms: None,
            final_utility: None,
        };
        let outcome = run_scg(&instance.objective, &matroid, &cfg)
            .map_err(anyhow::Error::from)
            .and_then(|traj| {
                traj.save_csv(&args.out_dir.join(&name))?;
                Ok(traj)
            });
        match outcome {
            Ok(traj) => {
                log::info!("{kind} seed {seed}: {:.1} ms", traj.total_wall_ms());
                entry.csv = Some(name);
                entry.total_wall_ms = Some(traj.total_wall_ms());
                entry.final_utility = traj.final_utility();
            }
            Err(e) => {
                log::warn!("{kind} seed {seed} failed: {e:#}");
                entry.status = RunStatus::Failed;
                entry.error = Some(format!("{e:#}"));
            }
        }
        entry
    };
    let runs: Vec<RunEntry> = if args.threads == 1 {
        pairs.iter().map(one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build()
            .context("building thread pool")?;
        pool.install(|| pairs.par_iter().map(one).collect())
    };
    let instance_path = std::fs::canonicalize(&args.instance).unwrap_or_else(|_| args.instance.clone());
    let manifest = Manifest {
        schema_version: 1,
        instance: instance_path.display().to_string(),
        family: instance.family().tag().to_string(),
        ground_size: instance.objective.ground_size(),
        iterations: args.iterations,
        k_override: args.k,
        runs,
        total_wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(args.out_dir.join(MANIFEST_FILE), text)?;
    let failed = manifest.runs.iter().filter(|r| r.status == RunStatus::Failed).count();
    println!(
        "{} runs ({} failed) written to {}",
        manifest.runs.len(),
        failed,
        args.out_dir.display()
    );
    Ok(manifest)
}

#[derive(Debug, Args, Clone)]
pub struct CompareArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Instance file, if it moved since the sweep.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Output CSV (`-` for standard output).
    #[arg(long, short, default_value = "-")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub utility_draws: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParetoRow {
    pub kind: EstimatorKind,
    pub final_utility: f64,
    pub total_wall_ms: f64,
}

pub fn cmd_compare(args: &CompareArgs) -> anyhow::Result<Vec<ParetoRow>> {
    let manifest = Manifest::load(&args.manifest)?;
    let dir = args.manifest.parent().unwrap_or(Path::new("."));
    let instance_path = args.instance.clone().unwrap_or_else(|| PathBuf::from(&manifest.instance));
    let instance = load_instance(&instance_path)
        .with_context(|| format!("loading {}", instance_path.display()))?;
    let n = instance.objective.ground_size();
    let ucfg = UtilityConfig {
        draws: args.utility_draws,
        ..UtilityConfig::default()
    };
    // (utility, wall time) per seed, keyed by the estimator sort key.
    type Group = (EstimatorKind, Vec<(f64, f64)>);
    let mut groups: BTreeMap<(u8, usize), Group> = BTreeMap::new();
    let mut missing = Vec::new();
    for run in manifest.runs.iter().filter(|r| r.status == RunStatus::Ok) {
        let Some(csv) = &run.csv else { continue };
        let path = dir.join(csv);
        let rows = match load_trajectory_csv(&path) {
            Ok(rows) if !rows.is_empty() => rows,
            Ok(_) => {
                missing.push(format!("{} (empty)", path.display()));
                continue;
            }
            Err(e) => {
                missing.push(format!("{} ({e})", path.display()));
                continue;
            }
        };
        let supports: Vec<Vec<usize>> = rows.iter().map(|r| r.v_support.clone()).collect();
        let y = reconstruct_y(n, &supports);
        let utility = UtilityEstimator::new(&instance.objective, &ucfg, run.seed)?.estimate(&y)?;
        let wall = rows.last().map_or(0.0, |r| r.wall_ms);
        let kind = run.kind()?;
        groups
            .entry(kind.order_key())
            .or_insert_with(|| (kind, Vec::new()))
            .1
            .push((utility, wall));
    }
    for m in &missing {
        eprintln!("missing trajectory: {m}");
    }
    let rows: Vec<ParetoRow> = groups
        .into_values()
        .map(|(kind, vals)| {
            let count = vals.len() as f64;
            ParetoRow {
                kind,
                final_utility: vals.iter().map(|v| v.0).sum::<f64>() / count,
                total_wall_ms: vals.iter().map(|v| v.1).sum::<f64>() / count,
            }
        })
        .collect();
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(PARETO_HEADER)?;
    for r in &rows {
        wtr.write_record([
            r.kind.label().to_string(),
            r.kind.param().to_string(),
            r.final_utility.to_string(),
            r.total_wall_ms.to_string(),
        ])?;
    }
    let text = String::from_utf8(wtr.into_inner()?)?;
    crate::emit(Some(&args.out), &text)?;
    Ok(rows)
}
