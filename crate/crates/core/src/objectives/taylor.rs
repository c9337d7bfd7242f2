//! Scalar links `h` and their truncated Taylor polynomials `ĥ^L`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The concave (or, for caching, convex) scalar function wrapped around an
/// inner polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Link {
    /// `h(s) = log(1 + s)`, expanded around `s = 1/2`.
    Log1p,
    /// `h(s) = s / (1 − s)`, expanded around `s = 0`.
    Geometric,
}

impl Link {
    pub fn apply(self, s: f64) -> f64 {
        match self {
            Link::Log1p => s.ln_1p(),
            Link::Geometric => s / (1.0 - s),
        }
    }

    pub fn center(self) -> f64 {
        match self {
            Link::Log1p => 0.5,
            Link::Geometric => 0.0,
        }
    }
}

/// `ĥ^L(s) = Σ_{ℓ=0}^{L} coeffs[ℓ] (s − center)^ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarTaylor {
    link: Link,
    degree: usize,
    center: f64,
    coeffs: Vec<f64>,
}

impl ScalarTaylor {
    pub fn new(link: Link, degree: usize) -> Result<Self> {
        let coeffs = match link {
            // h^(ℓ)(s) = (−1)^{ℓ−1} (ℓ−1)! / (1+s)^ℓ, so h^(ℓ)(1/2)/ℓ! = (−1)^{ℓ−1} / (ℓ 1.5^ℓ).
            Link::Log1p => (0..=degree)
                .map(|l| {
                    if l == 0 {
                        1.5f64.ln()
                    } else {
                        let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
                        sign / (l as f64 * 1.5f64.powi(l as i32))
                    }
                })
                .collect(),
            Link::Geometric => {
                if degree == 0 {
                    return Err(Error::Config(
                        "geometric Taylor expansion needs degree >= 1".into(),
                    ));
                }
                (0..=degree).map(|l| if l == 0 { 0.0 } else { 1.0 }).collect()
            }
        };
        Ok(Self {
            link,
            degree,
            center: link.center(),
            coeffs,
        })
    }

    pub fn link(&self) -> Link {
        self.link
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, s: f64) -> f64 {
        let u = s - self.center;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }
}

pub fn taylor(link: Link, degree: usize) -> Result<ScalarTaylor> {
    ScalarTaylor::new(link, degree)
}

/// Uniform error of the log link on `[0, 1]`: `1 / ((L+1) 2^{L+1})`.
pub fn log1p_bias_bound(degree: usize) -> f64 {
    1.0 / ((degree as f64 + 1.0) * 2f64.powi(degree as i32 + 1))
}

/// Uniform error of the geometric link on `[0, s̄]`: `s̄^{L+1} / (1 − s̄)`.
pub fn geometric_bias_bound(degree: usize, s_bar: f64) -> f64 {
    s_bar.powi(degree as i32 + 1) / (1.0 - s_bar)
}
