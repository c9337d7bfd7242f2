#![allow(dead_code)]

use rand::Rng;
use scg_core::dataio::random;
use scg_core::objectives::Family;
use scg_core::Objective;
use scg_core::poly::{GeneralPolynomial, GeneralTerm};
use scg_core::{Basis, MultilinearPolynomial};

pub fn random_general<R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> GeneralPolynomial {
    let terms = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let degree = rng.gen_range(0..=4.min(n));
            let powers = (0..degree)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(1..=3u32)))
                .collect();
            GeneralTerm {
                coeff: rng.gen_range(-2.0..2.0),
                powers,
            }
        })
        .collect();
    GeneralPolynomial::new(n, terms)
}

pub fn random_multilinear<R: Rng>(
    rng: &mut R,
    n: usize,
    max_terms: usize,
    basis: Basis,
) -> MultilinearPolynomial {
    let terms: Vec<(f64, Vec<usize>)> = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let degree = rng.gen_range(0..=4.min(n));
            let support = (0..degree).map(|_| rng.gen_range(0..n)).collect();
            (rng.gen_range(-2.0..2.0), support)
        })
        .collect();
    MultilinearPolynomial::from_terms(n, basis, terms).unwrap()
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen()).collect()
}

pub fn bits(mask: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

pub fn bits_f64(mask: usize, n: usize) -> Vec<f64> {
    (0..n).map(|i| f64::from((mask >> i & 1) as u32)).collect()
}

/// `Π y_i^{x_i} (1 − y_i)^{1 − x_i}` computed directly.
pub fn bernoulli_weight(mask: usize, y: &[f64]) -> f64 {
    y.iter()
        .enumerate()
        .map(|(i, &yi)| if mask >> i & 1 == 1 { yi } else { 1.0 - yi })
        .product()
}

/// `E_{x~y}[f(x)]` by enumeration.
pub fn bernoulli_expectation<F: FnMut(usize) -> f64>(y: &[f64], mut f: F) -> f64 {
    (0..1usize << y.len())
        .map(|m| f(m) * bernoulli_weight(m, y))
        .sum()
}

/// Small random instance of `family` with an 8-element ground set.
pub fn random_instance<R: Rng>(rng: &mut R, family: Family, count: usize) -> Objective {
    match family {
        Family::Sm => {
            let parts = rng.gen_range(1..=3);
            random::random_sm(rng, 8, parts, count).unwrap()
        }
        Family::Im => {
            let p = rng.gen_range(0.1..0.6);
            random::random_im(rng, 8, 0.3, p, count).unwrap()
        }
        Family::Fl => random::random_fl(rng, 8, count, 0.3).unwrap(),
        Family::Cn => {
            let (nodes, catalogue) = if rng.gen_bool(0.5) { (4, 2) } else { (2, 4) };
            let s_bar = rng.gen_range(0.2..0.8);
            let requests = rng.gen_range(2..=6);
            random::random_cn(rng, nodes, catalogue, requests, s_bar).unwrap()
        }
    }
}

pub const FAMILIES: [Family; 4] = [Family::Sm, Family::Im, Family::Fl, Family::Cn];
