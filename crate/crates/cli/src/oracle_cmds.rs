//! `verify`, `round` and `opt`.

use std::path::PathBuf;

use anyhow::Context;
use clap::Args;

use scg_core::dataio::load_instance;
use scg_core::oracle::{self, BiasRow, OptReport, DEFAULT_OPT_BUDGET};
use scg_core::rng::{stream_rng, ROUNDING_STREAM};
use scg_core::rounding::{swap_round, ConvexDecomposition};
use scg_core::scg::load_trajectory_csv;
use scg_core::{Error, DEFAULT_EXACT_LIMIT, DEFAULT_TERM_BUDGET};

pub const VERIFY_HEADER: &str = "z\tL\tfunction_error\tfunction_bound\tfunction_margin\tgradient_error\tgradient_bound\tgradient_margin";

#[derive(Debug, Args, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Comma-separated Taylor degrees.
    #[arg(long, default_value = "1,2,3")]
    pub degrees: String,
    /// Random points per realization for the gradient check.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Check only the first this many realizations.
    #[arg(long)]
    pub max_z: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short, default_value = "-")]
    pub out: PathBuf,
}

pub fn verify_rows(args: &VerifyArgs) -> anyhow::Result<Vec<BiasRow>> {
    let degrees: Vec<usize> = crate::parse_list(&args.degrees)?;
    let instance = load_instance(&args.instance)
        .with_context(|| format!("loading {}", args.instance.display()))?;
    let obj = &instance.objective;
    let count = args.max_z.unwrap_or(usize::MAX).min(obj.stored_count());
    let zs: Vec<u64> = (0..count as u64).collect();
    let mut rows = Vec::new();
    for &l in &degrees {
        let mut rng = stream_rng(args.seed, "verify", l as u64);
        rows.extend(oracle::verify_bias(
            obj,
            l,
            &zs,
            args.points,
            &mut rng,
            DEFAULT_EXACT_LIMIT,
            DEFAULT_TERM_BUDGET,
        )?);
    }
    Ok(rows)
}

pub fn format_rows(rows: &[BiasRow]) -> String {
    let mut out = String::from(VERIFY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{:e}\t{:e}\t{:e}\t{:e}\t{:e}\t{:e}\n",
            r.z,
            r.degree,
            r.function_error,
            r.function_bound,
            r.function_margin(),
            r.gradient_error,
            r.gradient_bound,
            r.gradient_margin()
        ));
    }
    out
}

pub fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<()> {
    let rows = verify_rows(args)?;
    crate::emit(Some(&args.out), &format_rows(&rows))?;
    let failed = rows.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        anyhow::bail!("{failed} of {} bias checks have a negative margin", rows.len());
    }
    Ok(())
}

#[derive(Debug, Args, Clone)]
pub struct RoundArgs {
    #[arg(long)]
    pub trajectory: PathBuf,
    /// Instance file providing the matroid.
    #[arg(long)]
    pub instance: PathBuf,
    /// Uniform rank the run was made with, if it overrode the instance's matroid.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn round_set(args: &RoundArgs) -> anyhow::Result<Vec<usize>> {
    let instance = load_instance(&args.instance)
        .with_context(|| format!("loading {}", args.instance.display()))?;
    let rows = load_trajectory_csv(&args.trajectory)
        .with_context(|| format!("reading {}", args.trajectory.display()))?;
    if rows.is_empty() {
        return Err(Error::Malformed("trajectory has no iterations".into()).into());
    }
    let matroid = match args.k {
        Some(k) => scg_core::Matroid::uniform(instance.matroid.n(), k),
        None => instance.matroid,
    };
    let supports: Vec<Vec<usize>> = rows.into_iter().map(|r| r.v_support).collect();
    let dec = ConvexDecomposition::from_supports(&supports)?;
    let mut rng = stream_rng(args.seed, ROUNDING_STREAM, 0);
    Ok(swap_round(&matroid, &dec, &mut rng)?)
}

pub fn cmd_round(args: &RoundArgs) -> anyhow::Result<()> {
    let set = round_set(args)?;
    println!("{}", serde_json::to_string(&set)?);
    Ok(())
}

#[derive(Debug, Args, Clone)]
pub struct OptArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = DEFAULT_OPT_BUDGET)]
    pub budget: usize,
    /// Also report bias margins for these Taylor degrees.
    #[arg(long)]
    pub degrees: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn opt_report(args: &OptArgs) -> anyhow::Result<OptReport> {
    let instance = load_instance(&args.instance)
        .with_context(|| format!("loading {}", args.instance.display()))?;
    let mut report = oracle::brute_opt(&instance.objective, &instance.matroid, args.budget)?;
    if let Some(degrees) = &args.degrees {
        report.margins = verify_rows(&VerifyArgs {
            instance: args.instance.clone(),
            degrees: degrees.clone(),
            points: 20,
            max_z: None,
            seed: args.seed,
            out: PathBuf::from("-"),
        })?;
    }
    Ok(report)
}

pub fn cmd_opt(args: &OptArgs) -> anyhow::Result<()> {
    let report = opt_report(args)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
