//! Sparse multilinear polynomials over `n` ground-set variables.
//!
//! A [`MultilinearPolynomial`] is a merged list of terms `c · Π_{i∈J} b_i(y)` where
//! every variable appears with exponent one. Two bases are supported:
//!
//! * [`Basis::Monomial`]: `b_i(y) = y_i`, the usual monomial form;
//! * [`Basis::Complement`]: `b_i(y) = 1 − y_i`.
//!
//! Both bases are closed under multiplication followed by multilinear reduction
//! (`b_i² = b_i` on binary inputs), and in both the product of two terms has the
//! union of their supports. Coverage-type set functions such as
//! `1 − Π_{u∈P}(1 − x_u)` have exponentially many monomials but a single
//! complement-basis term, which is why objectives build their inner polynomials
//! in the complement basis.
//!
//! Terms are kept sorted by `(degree, support)` and coefficients below
//! [`DROP_TOLERANCE`] are removed after every operation. Evaluation sums terms in
//! that fixed order, so results are bit-reproducible.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Merged coefficients with magnitude below this are dropped.
pub const DROP_TOLERANCE: f64 = 1e-15;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Terms are products of `y_i`.
    #[default]
    Monomial,
    /// Terms are products of `1 − y_i`.
    Complement,
}

impl Basis {
    #[inline]
    fn factor(self, yi: f64) -> f64 {
        match self {
            Basis::Monomial => yi,
            Basis::Complement => 1.0 - yi,
        }
    }

    /// Sign of `∂ b_i / ∂ y_i`.
    #[inline]
    fn slope(self) -> f64 {
        match self {
            Basis::Monomial => 1.0,
            Basis::Complement => -1.0,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Complement => "complement",
        }
    }
}

/// One term `coeff · Π_{i∈support} b_i`. The support is strictly increasing; an
/// empty support is the constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: f64,
    pub support: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.support.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearPolynomial {
    n: usize,
    basis: Basis,
    terms: Vec<Monomial>,
}

fn union_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Accumulates coefficients per support, preserving first-insertion order so
/// that every merged coefficient is summed in a deterministic order.
#[derive(Default)]
struct TermAccumulator {
    index: HashMap<Vec<u32>, usize>,
    terms: Vec<Monomial>,
}

impl TermAccumulator {
    fn push(&mut self, coeff: f64, support: &[u32]) {
        if let Some(&k) = self.index.get(support) {
            self.terms[k].coeff += coeff;
        } else {
            self.index.insert(support.to_vec(), self.terms.len());
            self.terms.push(Monomial {
                coeff,
                support: support.to_vec(),
            });
        }
    }

    fn len(&self) -> usize {
        self.terms.len()
    }

    fn finish(self, n: usize, basis: Basis) -> MultilinearPolynomial {
        let mut terms: Vec<Monomial> = self
            .terms
            .into_iter()
            .filter(|t| t.coeff.abs() >= DROP_TOLERANCE)
            .collect();
        terms.sort_by(|a, b| {
            a.support
                .len()
                .cmp(&b.support.len())
                .then_with(|| a.support.cmp(&b.support))
        });
        MultilinearPolynomial { n, basis, terms }
    }
}

impl MultilinearPolynomial {
    pub fn zero(n: usize) -> Self {
        Self::zero_in(n, Basis::Monomial)
    }

    pub fn zero_in(n: usize, basis: Basis) -> Self {
        Self {
            n,
            basis,
            terms: Vec::new(),
        }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::constant_in(n, Basis::Monomial, c)
    }

    pub fn constant_in(n: usize, basis: Basis, c: f64) -> Self {
        let mut acc = TermAccumulator::default();
        acc.push(c, &[]);
        acc.finish(n, basis)
    }

    /// The monomial-basis polynomial `y_i`.
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        Self::from_terms(n, Basis::Monomial, [(1.0, vec![i])])
    }

    /// Builds a canonical polynomial from `(coefficient, variable list)` pairs.
    /// Repeated variables inside one list collapse (multilinear reduction) and
    /// repeated supports are merged.
    pub fn from_terms<I>(n: usize, basis: Basis, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, Vec<usize>)>,
    {
        let mut acc = TermAccumulator::default();
        let mut support: Vec<u32> = Vec::new();
        for (coeff, vars) in terms {
            if !coeff.is_finite() {
                return Err(Error::Malformed(format!("non-finite coefficient {coeff}")));
            }
            support.clear();
            for &v in &vars {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
                support.push(v as u32);
            }
            support.sort_unstable();
            support.dedup();
            acc.push(coeff, &support);
        }
        Ok(acc.finish(n, basis))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> f64 {
        match self.terms.first() {
            Some(t) if t.support.is_empty() => t.coeff,
            _ => 0.0,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc = TermAccumulator::default();
        for t in self.terms.iter().chain(&other.terms) {
            acc.push(t.coeff, &t.support);
        }
        Ok(acc.finish(self.n, self.basis))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut acc = TermAccumulator::default();
        for t in &self.terms {
            acc.push(t.coeff * c, &t.support);
        }
        acc.finish(self.n, self.basis)
    }

    pub fn add_constant(&self, c: f64) -> Self {
        let mut acc = TermAccumulator::default();
        acc.push(c, &[]);
        for t in &self.terms {
            acc.push(t.coeff, &t.support);
        }
        acc.finish(self.n, self.basis)
    }

    /// Product followed by multilinear reduction.
    pub fn mul_reduce(&self, other: &Self) -> Result<Self> {
        self.mul_reduce_with_budget(other, usize::MAX)
    }

    /// As [`mul_reduce`](Self::mul_reduce), failing with
    /// [`Error::BudgetExceeded`] as soon as more than `budget` distinct terms
    /// would be produced.
    pub fn mul_reduce_with_budget(&self, other: &Self, budget: usize) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc = TermAccumulator::default();
        let mut support = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                union_sorted(&a.support, &b.support, &mut support);
                acc.push(a.coeff * b.coeff, &support);
                if acc.len() > budget {
                    return Err(Error::BudgetExceeded {
                        terms: acc.len(),
                        budget,
                    });
                }
            }
        }
        Ok(acc.finish(self.n, self.basis))
    }

    fn check_point(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: y.len(),
            });
        }
        for (index, &value) in y.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::CoordinateOutOfRange { index, value });
            }
        }
        Ok(())
    }

    fn eval_unchecked(&self, y: &[f64]) -> f64 {
        let basis = self.basis;
        self.terms
            .iter()
            .map(|t| {
                t.support
                    .iter()
                    .fold(t.coeff, |acc, &i| acc * basis.factor(y[i as usize]))
            })
            .sum()
    }

    /// `Σ_ℓ c_ℓ Π_{i∈J_ℓ} b_i(y)` for `y ∈ [0,1]^n`.
    pub fn evaluate(&self, y: &[f64]) -> Result<f64> {
        self.check_point(y)?;
        Ok(self.eval_unchecked(y))
    }

    /// Relaxed evaluation: coordinates are clamped into `[0,1]` instead of rejected.
    pub fn evaluate_clamped(&self, y: &[f64]) -> Result<f64> {
        if y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: y.len(),
            });
        }
        let clamped: Vec<f64> = y.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        Ok(self.eval_unchecked(&clamped))
    }

    /// Evaluation on a binary point.
    pub fn evaluate_binary(&self, x: &[bool]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let present = match self.basis {
            Basis::Monomial => true,
            Basis::Complement => false,
        };
        Ok(self
            .terms
            .iter()
            .filter(|t| t.support.iter().all(|&i| x[i as usize] == present))
            .map(|t| t.coeff)
            .sum())
    }

    /// `p([y]_{+i}) − p([y]_{−i})`, the partial derivative in coordinate `i`.
    pub fn coordinate_difference(&self, i: usize, y: &[f64]) -> Result<f64> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        self.check_point(y)?;
        let basis = self.basis;
        let i = i as u32;
        Ok(self
            .terms
            .iter()
            .filter(|t| t.support.binary_search(&i).is_ok())
            .map(|t| {
                t.support
                    .iter()
                    .filter(|&&j| j != i)
                    .fold(t.coeff * basis.slope(), |acc, &j| {
                        acc * basis.factor(y[j as usize])
                    })
            })
            .sum())
    }

    /// All coordinate differences at once. Each term contributes to the
    /// coordinates in its support through prefix/suffix products, so the cost
    /// is linear in the total support size.
    pub fn gradient(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.check_point(y)?;
        let basis = self.basis;
        let mut grad = vec![0.0; self.n];
        let mut prefix = Vec::new();
        for t in &self.terms {
            let m = t.support.len();
            if m == 0 {
                continue;
            }
            prefix.clear();
            let mut running = 1.0;
            for &j in &t.support {
                prefix.push(running);
                running *= basis.factor(y[j as usize]);
            }
            let scaled = t.coeff * basis.slope();
            let mut suffix = 1.0;
            for k in (0..m).rev() {
                let j = t.support[k] as usize;
                grad[j] += scaled * prefix[k] * suffix;
                suffix *= basis.factor(y[j]);
            }
        }
        Ok(grad)
    }

    /// Rewrites the polynomial in another basis. Each term of degree `d`
    /// expands into `2^d` terms, so this is only meant for small polynomials.
    pub fn to_basis(&self, target: Basis, budget: usize) -> Result<Self> {
        if target == self.basis {
            return Ok(self.clone());
        }
        // y_i = 1 − (1 − y_i) and 1 − y_i = 1 − y_i: both directions expand
        // Π_{i∈A} (1 − b'_i) = Σ_{B⊆A} (−1)^{|B|} Π_{i∈B} b'_i.
        let mut acc = TermAccumulator::default();
        let mut subset = Vec::new();
        for t in &self.terms {
            let d = t.support.len();
            if d >= 63 {
                return Err(Error::BudgetExceeded {
                    terms: usize::MAX,
                    budget,
                });
            }
            for mask in 0u64..(1u64 << d) {
                subset.clear();
                for (k, &v) in t.support.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        subset.push(v);
                    }
                }
                let sign = if subset.len() % 2 == 0 { 1.0 } else { -1.0 };
                acc.push(sign * t.coeff, &subset);
                if acc.len() > budget {
                    return Err(Error::BudgetExceeded {
                        terms: acc.len(),
                        budget,
                    });
                }
            }
        }
        Ok(acc.finish(self.n, target))
    }

    /// Line-oriented text form: a `# n=<n> basis=<basis>` header followed by one
    /// `coeff:i1,i2,...` line per term (the constant term has an empty list).
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut basis = Basis::Monomial;
        let mut raw: Vec<(f64, Vec<usize>)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            if let Some(header) = line.strip_prefix('#') {
                for field in header.split_whitespace() {
                    match field.split_once('=') {
                        Some(("n", v)) => {
                            n = Some(v.parse().map_err(|_| parse_err(format!("bad n `{v}`")))?)
                        }
                        Some(("basis", "monomial")) => basis = Basis::Monomial,
                        Some(("basis", "complement")) => basis = Basis::Complement,
                        Some(("basis", other)) => {
                            return Err(parse_err(format!("unknown basis `{other}`")))
                        }
                        _ => {}
                    }
                }
                continue;
            }
            let (coeff, vars) = line
                .split_once(':')
                .ok_or_else(|| parse_err("expected `coeff:i1,i2,...`".into()))?;
            let coeff: f64 = coeff
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad coefficient `{coeff}`")))?;
            let vars = vars
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(|v| {
                    v.parse::<usize>()
                        .map_err(|_| parse_err(format!("bad index `{v}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            raw.push((coeff, vars));
        }
        let n = n.unwrap_or_else(|| {
            raw.iter()
                .flat_map(|(_, v)| v.iter().copied())
                .max()
                .map_or(0, |m| m + 1)
        });
        Self::from_terms(n, basis, raw)
    }
}

impl fmt::Display for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# n={} basis={}", self.n, self.basis.name())?;
        for t in &self.terms {
            write!(f, "{}:", t.coeff)?;
            for (k, i) in t.support.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// One term `coeff · Π y_i^{k_i}` of a general polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralTerm {
    pub coeff: f64,
    pub powers: Vec<(usize, u32)>,
}

/// Polynomial with arbitrary natural exponents; input to [`GeneralPolynomial::multilinearize`].
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralPolynomial {
    pub n: usize,
    pub terms: Vec<GeneralTerm>,
}

impl GeneralPolynomial {
    pub fn new(n: usize, terms: Vec<GeneralTerm>) -> Self {
        Self { n, terms }
    }

    /// Plain evaluation `Σ c Π y_i^{k_i}` at any real point.
    pub fn evaluate(&self, y: &[f64]) -> Result<f64> {
        if y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: y.len(),
            });
        }
        let mut total = 0.0;
        for t in &self.terms {
            let mut v = t.coeff;
            for &(i, k) in &t.powers {
                let yi = *y.get(i).ok_or(Error::IndexOutOfRange { index: i, n: self.n })?;
                v *= yi.powi(k as i32);
            }
            total += v;
        }
        Ok(total)
    }

    /// Collapses every exponent to one. The result agrees with `self` on
    /// `{0,1}^n` and its value at `y` is `E_{x~y}[p(x)]` for independent
    /// Bernoulli coordinates.
    pub fn multilinearize(&self) -> Result<MultilinearPolynomial> {
        for t in &self.terms {
            for &(i, k) in &t.powers {
                if i >= self.n {
                    return Err(Error::IndexOutOfRange { index: i, n: self.n });
                }
                if k == 0 {
                    return Err(Error::Malformed(format!(
                        "variable {i} has exponent 0; exponents must be >= 1"
                    )));
                }
            }
        }
        MultilinearPolynomial::from_terms(
            self.n,
            Basis::Monomial,
            self.terms
                .iter()
                .map(|t| (t.coeff, t.powers.iter().map(|&(i, _)| i).collect())),
        )
    }
}

pub fn multilinearize(p: &GeneralPolynomial) -> Result<MultilinearPolynomial> {
    p.multilinearize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, terms: &[(f64, &[usize])]) -> MultilinearPolynomial {
        MultilinearPolynomial::from_terms(
            n,
            Basis::Monomial,
            terms.iter().map(|(c, v)| (*c, v.to_vec())),
        )
        .unwrap()
    }

    #[test]
    fn exponent_collapse() {
        let p = GeneralPolynomial::new(
            3,
            vec![GeneralTerm {
                coeff: 3.0,
                powers: vec![(1, 2), (2, 1)],
            }],
        );
        assert_eq!(p.multilinearize().unwrap(), poly(3, &[(3.0, &[1, 2])]));
    }

    #[test]
    fn constant_is_preserved() {
        let p = GeneralPolynomial::new(
            2,
            vec![GeneralTerm {
                coeff: 5.0,
                powers: vec![],
            }],
        );
        let m = p.multilinearize().unwrap();
        assert_eq!(m, MultilinearPolynomial::constant(2, 5.0));
        assert_eq!(m.constant_term(), 5.0);
    }

    #[test]
    fn multilinearize_rejects_bad_index() {
        let p = GeneralPolynomial::new(
            2,
            vec![GeneralTerm {
                coeff: 1.0,
                powers: vec![(2, 1)],
            }],
        );
        assert!(matches!(
            p.multilinearize(),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn idempotent_product() {
        let y1 = MultilinearPolynomial::variable(2, 0).unwrap();
        assert_eq!(y1.mul_reduce(&y1).unwrap(), y1);
    }

    #[test]
    fn one_plus_times_one_minus() {
        let a = poly(1, &[(1.0, &[]), (1.0, &[0])]);
        let b = poly(1, &[(1.0, &[]), (-1.0, &[0])]);
        assert_eq!(a.mul_reduce(&b).unwrap(), b);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = MultilinearPolynomial::variable(2, 0).unwrap();
        let b = MultilinearPolynomial::variable(3, 0).unwrap();
        assert!(matches!(
            a.mul_reduce(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        let c = MultilinearPolynomial::zero_in(2, Basis::Complement);
        assert!(matches!(a.add(&c), Err(Error::BasisMismatch)));
    }

    #[test]
    fn addition_merges_and_cancels() {
        let y1 = poly(2, &[(1.0, &[0])]);
        assert_eq!(y1.add(&y1).unwrap(), poly(2, &[(2.0, &[0])]));
        let y2 = poly(2, &[(1.0, &[1])]);
        let s = y1.add(&y2).unwrap().add(&y2.scale(-1.0)).unwrap();
        assert_eq!(s, y1);
        let z = poly(2, &[(1.0, &[0, 1])]).scale(0.0);
        assert!(z.is_empty());
        assert_eq!(y1.add(&MultilinearPolynomial::zero(2)).unwrap(), y1);
    }

    #[test]
    fn tiny_coefficients_are_dropped() {
        let p = poly(2, &[(1.0, &[0]), (1e-16, &[1])]);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn evaluate_simple_product() {
        let p = poly(2, &[(1.0, &[0, 1])]);
        assert_eq!(p.evaluate(&[0.5, 0.5]).unwrap(), 0.25);
    }

    #[test]
    fn evaluate_rejects_out_of_range() {
        let p = poly(2, &[(1.0, &[0, 1])]);
        assert!(matches!(
            p.evaluate(&[0.5, 1.5]),
            Err(Error::CoordinateOutOfRange { index: 1, .. })
        ));
        assert!(matches!(
            p.evaluate(&[0.5]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(p.evaluate_clamped(&[0.5, 1.5]).unwrap(), 0.5);
    }

    #[test]
    fn coordinate_difference_examples() {
        let y1 = poly(3, &[(1.0, &[0])]);
        assert_eq!(y1.coordinate_difference(0, &[0.2, 0.7, 0.1]).unwrap(), 1.0);
        let p = poly(2, &[(1.0, &[0, 1])]);
        assert!((p.coordinate_difference(0, &[0.9, 0.3]).unwrap() - 0.3).abs() < 1e-15);
        assert!(matches!(
            p.coordinate_difference(2, &[0.9, 0.3]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn complement_basis_evaluation() {
        // 1 − (1 − y0)(1 − y1) = y0 + y1 − y0 y1
        let p = MultilinearPolynomial::from_terms(
            2,
            Basis::Complement,
            [(1.0, vec![]), (-1.0, vec![0, 1])],
        )
        .unwrap();
        assert!((p.evaluate(&[0.5, 0.5]).unwrap() - 0.75).abs() < 1e-15);
        let m = p.to_basis(Basis::Monomial, 100).unwrap();
        assert_eq!(m, poly(2, &[(1.0, &[0]), (1.0, &[1]), (-1.0, &[0, 1])]));
        let back = m.to_basis(Basis::Complement, 100).unwrap();
        assert_eq!(back, p);
        let g = p.gradient(&[0.2, 0.6]).unwrap();
        assert!((g[0] - 0.4).abs() < 1e-15);
        assert!((g[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn budget_is_enforced() {
        let a = poly(4, &[(1.0, &[0]), (1.0, &[1])]);
        let b = poly(4, &[(1.0, &[2]), (1.0, &[3])]);
        assert!(matches!(
            a.mul_reduce_with_budget(&b, 3),
            Err(Error::BudgetExceeded { budget: 3, .. })
        ));
        assert_eq!(a.mul_reduce_with_budget(&b, 4).unwrap().len(), 4);
    }

    #[test]
    fn text_round_trip() {
        let p = poly(4, &[(0.5, &[]), (-2.25, &[0, 3]), (1e-7, &[2])]);
        let text = p.to_text();
        assert_eq!(text, "# n=4 basis=monomial\n0.5:\n0.0000001:2\n-2.25:0,3\n");
        assert_eq!(MultilinearPolynomial::from_text(&text).unwrap(), p);
        let q = MultilinearPolynomial::from_terms(3, Basis::Complement, [(1.0, vec![1, 2])]).unwrap();
        assert_eq!(MultilinearPolynomial::from_text(&q.to_text()).unwrap(), q);
        assert!(matches!(
            MultilinearPolynomial::from_text("1.0:0\nnope\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
