//! Gradient estimators for `∇G_z(y)`.
//!
//! * `SAMP(N)`: coordinate differences of `f_z` averaged over `N` Bernoulli(y)
//!   draws shared by all coordinates. Draw `l` uses its own random stream, so
//!   the result does not depend on evaluation order.
//! * `POLY(L)`: coordinate differences of the multilinear surrogate `f̂_z^L`.
//!   Deterministic; surrogates of stored realizations are cached per `(z, L)`.
//! * `EXACT`: full enumeration of `{0,1}^n`, for `n ≤ exact_limit`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::Realization;
use crate::oracle::{function_table, gradient_from_table};
use crate::poly::MultilinearPolynomial;
use crate::rng::{stream_rng, X_STREAM};
use crate::{DEFAULT_EXACT_LIMIT, DEFAULT_TERM_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum EstimatorKind {
    Samp { samples: usize },
    Poly { degree: usize },
    Exact,
}

impl EstimatorKind {
    pub fn label(&self) -> &'static str {
        match self {
            EstimatorKind::Samp { .. } => "SAMP",
            EstimatorKind::Poly { .. } => "POLY",
            EstimatorKind::Exact => "EXACT",
        }
    }

    /// `N` for SAMP, `L` for POLY, 0 for EXACT.
    pub fn param(&self) -> usize {
        match *self {
            EstimatorKind::Samp { samples } => samples,
            EstimatorKind::Poly { degree } => degree,
            EstimatorKind::Exact => 0,
        }
    }

    /// Sort key: SAMP before POLY before EXACT, then by parameter.
    pub fn order_key(&self) -> (u8, usize) {
        let family = match self {
            EstimatorKind::Samp { .. } => 0,
            EstimatorKind::Poly { .. } => 1,
            EstimatorKind::Exact => 2,
        };
        (family, self.param())
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EstimatorKind::Samp { samples: 0 } => {
                Err(Error::Config("SAMP needs at least one sample".into()))
            }
            EstimatorKind::Poly { degree: 0 } => {
                Err(Error::Config("POLY needs degree at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorKind::Exact => f.write_str("EXACT"),
            other => write!(f, "{}:{}", other.label(), other.param()),
        }
    }
}

/// Parses `SAMP:N`, `POLY:L` or `EXACT` (case-insensitive).
impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        if upper == "EXACT" {
            return Ok(EstimatorKind::Exact);
        }
        let (name, param) = upper
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("estimator `{s}`: expected SAMP:N, POLY:L or EXACT")))?;
        let value: usize = param
            .parse()
            .map_err(|_| Error::Config(format!("estimator `{s}`: `{param}` is not a count")))?;
        let kind = match name {
            "SAMP" => EstimatorKind::Samp { samples: value },
            "POLY" => EstimatorKind::Poly { degree: value },
            _ => return Err(Error::Config(format!("unknown estimator `{name}`"))),
        };
        kind.validate()?;
        Ok(kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub kind: EstimatorKind,
    pub exact_limit: usize,
    /// Term budget for surrogate composition.
    pub budget: usize,
}

impl EstimatorConfig {
    pub fn new(kind: EstimatorKind) -> Self {
        Self {
            kind,
            exact_limit: DEFAULT_EXACT_LIMIT,
            budget: DEFAULT_TERM_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradientVector {
    pub values: Vec<f64>,
    pub kind: EstimatorKind,
    pub z_id: u64,
    pub wall: Duration,
}

impl GradientVector {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Debug dump, one `z_id,i,value` row per coordinate.
    pub fn to_csv_rows(&self) -> String {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{},{i},{v}\n", self.z_id))
            .collect()
    }
}

type PolyCache = RwLock<HashMap<(u64, usize), Arc<MultilinearPolynomial>>>;
type TableCache = RwLock<HashMap<u64, Arc<Vec<f64>>>>;

/// Estimator for one objective. Caches are keyed by stored realization id, so
/// an estimator must not be shared between objectives.
#[derive(Debug)]
pub struct GradientEstimator {
    config: EstimatorConfig,
    polys: PolyCache,
    tables: TableCache,
}

impl GradientEstimator {
    pub fn new(config: EstimatorConfig) -> Result<Self> {
        config.kind.validate()?;
        Ok(Self {
            config,
            polys: RwLock::new(HashMap::new()),
            tables: RwLock::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &EstimatorConfig {
        &self.config
    }

    /// Gradient estimate at `y`. `x_seed` seeds the Bernoulli draws of SAMP
    /// and is ignored by the deterministic estimators.
    pub fn estimate(&self, z: &Realization<'_>, y: &[f64], x_seed: u64) -> Result<GradientVector> {
        let start = Instant::now();
        let values = match self.config.kind {
            EstimatorKind::Samp { samples } => samp_gradient(z, y, samples, x_seed)?,
            EstimatorKind::Poly { degree } => {
                check_point(z.ground_size(), y)?;
                self.surrogate(z, degree)?.gradient(y)?
            }
            EstimatorKind::Exact => {
                check_point(z.ground_size(), y)?;
                gradient_from_table(&self.table(z)?, y)
            }
        };
        Ok(GradientVector {
            values,
            kind: self.config.kind,
            z_id: z.id(),
            wall: start.elapsed(),
        })
    }

    /// `f̂_z^L`, cached for stored realizations.
    pub fn surrogate(&self, z: &Realization<'_>, degree: usize) -> Result<Arc<MultilinearPolynomial>> {
        if !z.is_stored() {
            return Ok(Arc::new(z.compose_fhat(degree, self.config.budget)?));
        }
        let key = (z.id(), degree);
        if let Some(p) = self.polys.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(p));
        }
        let p = Arc::new(z.compose_fhat(degree, self.config.budget)?);
        Ok(Arc::clone(
            self.polys
                .write()
                .expect("cache lock")
                .entry(key)
                .or_insert(p),
        ))
    }

    fn table(&self, z: &Realization<'_>) -> Result<Arc<Vec<f64>>> {
        if !z.is_stored() {
            return Ok(Arc::new(function_table(z, self.config.exact_limit)?));
        }
        if let Some(t) = self.tables.read().expect("cache lock").get(&z.id()) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(function_table(z, self.config.exact_limit)?);
        Ok(Arc::clone(
            self.tables
                .write()
                .expect("cache lock")
                .entry(z.id())
                .or_insert(t),
        ))
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

/// Sampling estimator. Draw `l` comes from stream `l` of `x_seed`; each draw
/// costs `n + 1` evaluations of `f_z`.
pub fn samp_gradient(z: &Realization<'_>, y: &[f64], samples: usize, x_seed: u64) -> Result<Vec<f64>> {
    let n = z.ground_size();
    check_point(n, y)?;
    if samples == 0 {
        return Err(Error::Config("SAMP needs at least one sample".into()));
    }
    let mut sum = vec![0.0; n];
    let mut x = vec![false; n];
    for l in 0..samples {
        let mut rng = stream_rng(x_seed, X_STREAM, l as u64);
        for (xi, &yi) in x.iter_mut().zip(y) {
            *xi = rng.gen::<f64>() < yi;
        }
        let base = z.value(&x);
        for i in 0..n {
            let was = x[i];
            x[i] = !was;
            let flipped = z.value(&x);
            x[i] = was;
            sum[i] += if was { base - flipped } else { flipped - base };
        }
    }
    Ok(sum.into_iter().map(|s| s / samples as f64).collect())
}

/// Polynomial estimator without caching.
pub fn poly_gradient(z: &Realization<'_>, y: &[f64], degree: usize, budget: usize) -> Result<Vec<f64>> {
    check_point(z.ground_size(), y)?;
    z.compose_fhat(degree, budget)?.gradient(y)
}
