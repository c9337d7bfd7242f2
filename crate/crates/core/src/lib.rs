//! Stochastic continuous greedy (SCG) for monotone stochastic submodular
//! maximization under matroid constraints.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`] sparse multilinear polynomial algebra,
//! * [`matroid`] uniform and partition matroids with the linear maximization step,
//! * [`objectives`] the SM / IM / FL / CN objective families and their Taylor surrogates,
//! * [`estimators`] sampling, polynomial and exact gradient estimators,
//! * [`scg`] the continuous greedy loop and its trajectory,
//! * [`rounding`] swap rounding of the fractional output,
//! * [`oracle`] brute-force ground truth for small instances,
//! * [`dataio`] generators, loaders and the instance file format.

pub mod dataio;
pub mod error;
pub mod estimators;
pub mod matroid;
pub mod objectives;
pub mod oracle;
pub mod poly;
pub mod rng;
pub mod rounding;
pub mod scg;

pub use error::{Error, Result};
pub use estimators::{EstimatorConfig, EstimatorKind, GradientEstimator, GradientVector};
pub use matroid::{Matroid, MatroidSpec};
pub use objectives::{Link, Objective, Realization, ScalarTaylor};
pub use poly::{Basis, GeneralPolynomial, Monomial, MultilinearPolynomial};
pub use scg::{run_scg, RhoSchedule, ScgConfig, Trajectory};

/// Largest ground set for which exhaustive enumeration over `{0,1}^n` is allowed.
pub const DEFAULT_EXACT_LIMIT: usize = 20;

/// Default cap on the number of monomials produced while composing Taylor surrogates.
pub const DEFAULT_TERM_BUDGET: usize = 2_000_000;
