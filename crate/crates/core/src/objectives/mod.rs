//! Stochastic objective families.
//!
//! Every family writes a realization's value as `f_z(x) = Σ_c h(g_{z,c}(x))`
//! (plus a constant for caching) where each `g_{z,c}` is a multilinear
//! polynomial with values in `[0, 1]` and `h` is a scalar [`Link`]. Replacing
//! `h` by its Taylor polynomial and multiplying out with multilinear reduction
//! gives the surrogate `f̂_z^L` used by the polynomial gradient estimator.
//!
//! | family | components `g_{z,c}`                    | link        |
//! |--------|-----------------------------------------|-------------|
//! | SM     | one linear form per subject partition    | `log(1+s)`  |
//! | IM     | infected fraction of the cascade         | `log(1+s)`  |
//! | FL     | best selected facility weight            | `log(1+s)`  |
//! | CN     | edge load; `f = h(g(0)) − h(g(x))`       | `s/(1−s)`   |

mod families;
pub mod taylor;

use std::borrow::Cow;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dataio::cascades::simulate_cascade;
use crate::error::{Error, Result};
use crate::poly::{Basis, MultilinearPolynomial};

pub use families::{
    Cascade, CascadeModel, CnEdge, CnInstance, CnRequest, Customer, EdgeLoad, FlInstance,
    ImInstance, SmInstance,
};
pub use taylor::{geometric_bias_bound, log1p_bias_bound, taylor, Link, ScalarTaylor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "SM")]
    Sm,
    #[serde(rename = "IM")]
    Im,
    #[serde(rename = "FL")]
    Fl,
    #[serde(rename = "CN")]
    Cn,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Sm => "SM",
            Family::Im => "IM",
            Family::Fl => "FL",
            Family::Cn => "CN",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "SM" => Some(Family::Sm),
            "IM" => Some(Family::Im),
            "FL" => Some(Family::Fl),
            "CN" => Some(Family::Cn),
            _ => None,
        }
    }

    pub fn link(self) -> Link {
        match self {
            Family::Cn => Link::Geometric,
            _ => Link::Log1p,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Objective {
    Sm(SmInstance),
    Im(ImInstance),
    Fl(FlInstance),
    Cn(CnInstance),
}

impl Objective {
    pub fn family(&self) -> Family {
        match self {
            Objective::Sm(_) => Family::Sm,
            Objective::Im(_) => Family::Im,
            Objective::Fl(_) => Family::Fl,
            Objective::Cn(_) => Family::Cn,
        }
    }

    pub fn link(&self) -> Link {
        self.family().link()
    }

    pub fn ground_size(&self) -> usize {
        match self {
            Objective::Sm(sm) => sm.n(),
            Objective::Im(im) => im.nodes(),
            Objective::Fl(fl) => fl.n(),
            Objective::Cn(cn) => cn.ground_size(),
        }
    }

    /// Number of stored realizations.
    pub fn stored_count(&self) -> usize {
        match self {
            Objective::Sm(sm) => sm.values().len(),
            Objective::Im(im) => im.cascades().len(),
            Objective::Fl(fl) => fl.customers().len(),
            Objective::Cn(cn) => cn.loads().len(),
        }
    }

    /// Whether `sample_z` simulates fresh realizations instead of drawing stored ones.
    pub fn is_generative(&self) -> bool {
        matches!(self, Objective::Im(im) if im.model().is_some())
    }

    /// Stored realization `id`.
    pub fn realization(&self, id: u64) -> Result<Realization<'_>> {
        let idx = usize::try_from(id).map_err(|_| Error::UnknownRealization(id))?;
        if idx >= self.stored_count() {
            return Err(Error::UnknownRealization(id));
        }
        let data = match self {
            Objective::Sm(sm) => Data::Sm(&sm.values()[idx]),
            Objective::Im(im) => Data::Im(Cow::Borrowed(&im.cascades()[idx])),
            Objective::Fl(fl) => Data::Fl(&fl.customers()[idx]),
            Objective::Cn(cn) => Data::Cn(&cn.loads()[idx]),
        };
        Ok(Realization {
            objective: self,
            id,
            stored: true,
            data,
        })
    }

    /// The cascade simulated from `seed` (generative IM only).
    pub fn generated_realization(&self, seed: u64) -> Result<Realization<'_>> {
        match self {
            Objective::Im(im) => {
                let model = im.model().ok_or(Error::EmptyRealizations)?;
                Ok(Realization {
                    objective: self,
                    id: seed,
                    stored: false,
                    data: Data::Im(Cow::Owned(simulate_cascade(&model.graph, model.p, seed))),
                })
            }
            _ => Err(Error::EmptyRealizations),
        }
    }

    /// Draws `z`: uniform over stored realizations, or a fresh cascade in
    /// generative mode.
    pub fn sample_z<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Realization<'_>> {
        if self.is_generative() {
            let seed = rng.gen::<u64>();
            return self.generated_realization(seed);
        }
        let count = self.stored_count();
        if count == 0 {
            return Err(Error::EmptyRealizations);
        }
        self.realization(rng.gen_range(0..count) as u64)
    }

    /// Every stored realization in index order.
    pub fn realizations(&self) -> impl Iterator<Item = Realization<'_>> {
        (0..self.stored_count() as u64).map(move |id| {
            self.realization(id)
                .expect("index below stored count")
        })
    }

    /// Uniform bound on `|f_z(x) − f̂_z^L(x)|` over binary `x` used by the
    /// gradient bias bound `2√n ε(L)`.
    pub fn epsilon(&self, degree: usize) -> f64 {
        match self {
            Objective::Cn(cn) => geometric_bias_bound(degree, cn.s_bar()),
            _ => log1p_bias_bound(degree),
        }
    }
}

#[derive(Clone, Debug)]
enum Data<'a> {
    Sm(&'a [f64]),
    Im(Cow<'a, Cascade>),
    Fl(&'a Customer),
    Cn(&'a EdgeLoad),
}

/// A realization `z` of a stochastic objective together with its instance.
#[derive(Clone, Debug)]
pub struct Realization<'a> {
    objective: &'a Objective,
    id: u64,
    stored: bool,
    data: Data<'a>,
}

impl<'a> Realization<'a> {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn is_stored(&self) -> bool {
        self.stored
    }

    pub fn objective(&self) -> &'a Objective {
        self.objective
    }

    pub fn ground_size(&self) -> usize {
        self.objective.ground_size()
    }

    /// `f_z(x)` for a binary point.
    pub fn f_eval(&self, x: &[bool]) -> Result<f64> {
        let n = self.ground_size();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        Ok(self.value(x))
    }

    /// `f_z(x)` for a 0/1-valued real vector; any other entry is rejected.
    pub fn f_eval_binary(&self, x: &[f64]) -> Result<f64> {
        let bits = x
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                if value == 0.0 {
                    Ok(false)
                } else if value == 1.0 {
                    Ok(true)
                } else {
                    Err(Error::NonBinary { index, value })
                }
            })
            .collect::<Result<Vec<bool>>>()?;
        self.f_eval(&bits)
    }

    pub(crate) fn value(&self, x: &[bool]) -> f64 {
        match &self.data {
            Data::Sm(r) => {
                let Objective::Sm(sm) = self.objective else {
                    unreachable!()
                };
                sm.inner_values(r, x).into_iter().map(f64::ln_1p).sum()
            }
            Data::Im(c) => c.infected_fraction(x).ln_1p(),
            Data::Fl(c) => c.max_weight(x).ln_1p(),
            Data::Cn(e) => Link::Geometric.apply(e.empty_load) - Link::Geometric.apply(e.load(x)),
        }
    }

    /// Direct combinatorial values of the inner functions `g_{z,c}(x)`.
    pub fn inner_values(&self, x: &[bool]) -> Vec<f64> {
        match &self.data {
            Data::Sm(r) => {
                let Objective::Sm(sm) = self.objective else {
                    unreachable!()
                };
                sm.inner_values(r, x)
            }
            Data::Im(c) => vec![c.infected_fraction(x)],
            Data::Fl(c) => vec![c.telescoping_sum(x)],
            Data::Cn(e) => vec![e.load(x)],
        }
    }

    /// The inner multilinear polynomials, one per additive component.
    pub fn inner_polys(&self) -> Vec<MultilinearPolynomial> {
        match &self.data {
            Data::Sm(r) => {
                let Objective::Sm(sm) = self.objective else {
                    unreachable!()
                };
                sm.inner_polys(r)
            }
            Data::Im(c) => vec![c.inner_poly()],
            Data::Fl(c) => vec![c.inner_poly()],
            Data::Cn(e) => vec![e.inner_poly(self.ground_size())],
        }
    }

    /// Multilinear surrogate `f̂_z^L`: the link's degree-`L` Taylor polynomial
    /// composed with every inner polynomial, expanded with multilinear
    /// reduction. Fails instead of truncating when more than `budget` terms
    /// would be needed.
    pub fn compose_fhat(&self, degree: usize, budget: usize) -> Result<MultilinearPolynomial> {
        let link = self.objective.link();
        let ht = taylor(link, degree)?;
        let n = self.ground_size();
        let mut total: Option<MultilinearPolynomial> = None;
        for g in self.inner_polys() {
            let composed = compose(&ht, &g, budget)?;
            total = Some(match total {
                None => composed,
                Some(acc) => acc.add(&composed)?,
            });
            if let Some(t) = &total {
                if t.len() > budget {
                    return Err(Error::BudgetExceeded {
                        terms: t.len(),
                        budget,
                    });
                }
            }
        }
        let total = total.unwrap_or_else(|| MultilinearPolynomial::zero(n));
        Ok(match &self.data {
            // Caching gain: h(g(0)) − ĥ(g(x)), with the constant kept exact.
            Data::Cn(e) => total.scale(-1.0).add_constant(link.apply(e.empty_load)),
            _ => total,
        })
    }

    /// Uniform binary-input bound on `|f_z − f̂_z^L|`. For SM every partition
    /// contributes its own Taylor remainder.
    pub fn function_bias_bound(&self, degree: usize) -> f64 {
        match self.objective {
            Objective::Sm(sm) => sm.partitions().len() as f64 * log1p_bias_bound(degree),
            other => other.epsilon(degree),
        }
    }

    /// `ε` entering the gradient bias bound `‖∇G_z − ∇̂G_z^L‖₂ ≤ 2√n ε`.
    pub fn gradient_epsilon(&self, degree: usize) -> f64 {
        self.objective.epsilon(degree)
    }

    pub fn gradient_bias_bound(&self, degree: usize) -> f64 {
        2.0 * (self.ground_size() as f64).sqrt() * self.gradient_epsilon(degree)
    }
}

/// `ĥ(g)` by Horner's rule in the variable `g − center`.
fn compose(
    ht: &ScalarTaylor,
    g: &MultilinearPolynomial,
    budget: usize,
) -> Result<MultilinearPolynomial> {
    let n = g.n();
    let basis: Basis = g.basis();
    let shifted = g.add_constant(-ht.center());
    let coeffs = ht.coeffs();
    let mut acc = MultilinearPolynomial::constant_in(n, basis, coeffs[coeffs.len() - 1]);
    for &c in coeffs[..coeffs.len() - 1].iter().rev() {
        acc = acc.mul_reduce_with_budget(&shifted, budget)?.add_constant(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    fn single_cascade(reach: Vec<Vec<usize>>) -> Objective {
        let n = reach.len();
        Objective::Im(ImInstance::new(n, vec![Cascade { reach }]).unwrap())
    }

    #[test]
    fn im_no_spread_all_seeded() {
        let obj = single_cascade(vec![vec![0], vec![1], vec![2]]);
        let z = obj.realization(0).unwrap();
        assert!((z.f_eval(&[true; 3]).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn im_inner_poly_inclusion_exclusion() {
        // One node reached from both ground elements: g = y0 + y1 − y0 y1 over N = 1
        // node... realized here with N = 2 nodes both reached from {0, 1}.
        let obj = single_cascade(vec![vec![0, 1], vec![0, 1]]);
        let z = obj.realization(0).unwrap();
        let g = &z.inner_polys()[0];
        assert!((g.evaluate(&[0.5, 0.5]).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn sm_inner_poly_is_linear() {
        let sm = SmInstance::new(2, vec![vec![0, 1]], vec![vec![0.3, 0.7]]).unwrap();
        let obj = Objective::Sm(sm);
        let g = obj.realization(0).unwrap().inner_polys();
        assert_eq!(g.len(), 1);
        assert_eq!(
            g[0],
            MultilinearPolynomial::from_terms(2, Basis::Monomial, [(0.3, vec![0]), (0.7, vec![1])])
                .unwrap()
        );
    }

    #[test]
    fn fl_single_customer() {
        let fl = FlInstance::new(2, vec![vec![0.9, 0.4]]).unwrap();
        let obj = Objective::Fl(fl);
        let z = obj.realization(0).unwrap();
        assert!((z.f_eval(&[false, true]).unwrap() - 0.4f64.ln_1p()).abs() < 1e-15);
        assert_eq!(z.inner_values(&[false, true]), vec![0.4]);
    }

    #[test]
    fn cn_single_edge_gain() {
        let cn = CnInstance::new(
            2,
            1,
            vec![CnEdge { u: 1, v: 0, mu: 1.0 }],
            vec![CnRequest {
                item: 0,
                path: vec![0, 1],
                rate: 0.5,
            }],
        )
        .unwrap();
        let obj = Objective::Cn(cn);
        let z = obj.realization(0).unwrap();
        // Caching the item at the requesting node removes the whole load.
        assert!((z.f_eval(&[true, false]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(z.f_eval(&[false, true]).unwrap(), 0.0);
    }

    #[test]
    fn compose_im_degree_one() {
        let obj = single_cascade(vec![vec![0]]);
        let z = obj.realization(0).unwrap();
        let fhat = z.compose_fhat(1, 1000).unwrap();
        let at_one = fhat.evaluate(&[1.0]).unwrap();
        assert!((at_one - (1.5f64.ln() + 1.0 / 3.0)).abs() < 1e-12);
        let gap = (at_one - 2f64.ln()).abs();
        assert!((gap - 0.045_652).abs() < 1e-5);
        assert!(gap <= log1p_bias_bound(1));
    }

    #[test]
    fn compose_respects_budget() {
        let reach: Vec<Vec<usize>> = (0..12).map(|v| vec![v, (v + 1) % 12]).collect();
        let obj = single_cascade(reach);
        let z = obj.realization(0).unwrap();
        assert!(matches!(
            z.compose_fhat(3, 50),
            Err(Error::BudgetExceeded { budget: 50, .. })
        ));
        assert!(z.compose_fhat(3, 1_000_000).is_ok());
    }

    #[test]
    fn f_eval_rejects_non_binary() {
        let obj = single_cascade(vec![vec![0], vec![1]]);
        let z = obj.realization(0).unwrap();
        assert!(matches!(
            z.f_eval_binary(&[0.5, 1.0]),
            Err(Error::NonBinary { index: 0, .. })
        ));
        assert!(z.f_eval(&[true]).is_err());
    }

    #[test]
    fn sample_single_store() {
        let obj = single_cascade(vec![vec![0]]);
        let mut rng = seeded_rng(3);
        for _ in 0..10 {
            assert_eq!(obj.sample_z(&mut rng).unwrap().id(), 0);
        }
        let empty = Objective::Fl(FlInstance::new(2, vec![]).unwrap());
        assert!(matches!(
            empty.sample_z(&mut rng),
            Err(Error::EmptyRealizations)
        ));
    }
}
