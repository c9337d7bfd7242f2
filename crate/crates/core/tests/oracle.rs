mod common;

use common::*;
use rand::Rng;
use scg_core::dataio::random::{random_cn, random_im, random_partition};
use scg_core::objectives::Family;
use scg_core::oracle::{
    brute_opt, exact_g, lazy_greedy, mean_value, singleton_upper_bound, verify_bias,
    DEFAULT_OPT_BUDGET,
};
use scg_core::rng::seeded_rng;
use scg_core::{Matroid, DEFAULT_EXACT_LIMIT, DEFAULT_TERM_BUDGET};

#[test]
fn exact_relaxation_matches_monte_carlo() {
    let mut rng = seeded_rng(800);
    let obj = random_im(&mut rng, 8, 0.3, 0.4, 4).unwrap();
    let y = random_point(&mut rng, 8);
    let exact = exact_g(&obj, &y, DEFAULT_EXACT_LIMIT).unwrap();
    let zs: Vec<_> = obj.realizations().collect();
    let draws = 1_000_000;
    let (mut sum, mut sq) = (0.0, 0.0);
    let mut x = vec![false; 8];
    for _ in 0..draws {
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = rng.gen::<f64>() < *yi;
        }
        let z = &zs[rng.gen_range(0..zs.len())];
        let v = z.f_eval(&x).unwrap();
        sum += v;
        sq += v * v;
    }
    let k = draws as f64;
    let mean = sum / k;
    let se = ((sq / k - mean * mean) / (k - 1.0)).sqrt();
    assert!((mean - exact).abs() <= 4.0 * se, "{mean} vs {exact}");
}

#[test]
fn brute_force_dominates_greedy_within_band() {
    let mut rng = seeded_rng(801);
    for _ in 0..10 {
        let obj = random_im(&mut rng, 10, 0.25, 0.4, 5).unwrap();
        let m = Matroid::uniform(10, 3);
        let opt = brute_opt(&obj, &m, DEFAULT_OPT_BUDGET).unwrap();
        let (set, greedy) = lazy_greedy(&obj, &m).unwrap();
        assert!(m.is_independent(&set).unwrap());
        assert!(greedy <= opt.best_value + 1e-12);
        assert!(greedy >= (1.0 - (-1.0f64).exp()) * opt.best_value - 1e-12);
        assert!(opt.best_value <= singleton_upper_bound(&obj, &m).unwrap() + 1e-12);
        assert!((mean_value(&obj, &opt.best_set).unwrap() - opt.best_value).abs() < 1e-15);
    }
}

#[test]
fn brute_force_bounds_relaxation_at_vertices() {
    let mut rng = seeded_rng(802);
    for family in FAMILIES {
        let obj = random_instance(&mut rng, family, 4);
        let m = random_partition(&mut rng, 8, 2, 2, 4).unwrap();
        let opt = brute_opt(&obj, &m, DEFAULT_OPT_BUDGET).unwrap();
        m.for_each_independent(DEFAULT_OPT_BUDGET, |set| {
            let y: Vec<f64> = (0..8).map(|i| if set.contains(&i) { 1.0 } else { 0.0 }).collect();
            let g = exact_g(&obj, &y, DEFAULT_EXACT_LIMIT).unwrap();
            assert!(opt.best_value >= g - 1e-12);
        })
        .unwrap();
    }
}

#[test]
fn relaxation_is_monotone() {
    let mut rng = seeded_rng(803);
    for family in FAMILIES {
        let obj = random_instance(&mut rng, family, 3);
        for _ in 0..50 {
            let y = random_point(&mut rng, 8);
            let mut bumped = y.clone();
            let i = rng.gen_range(0..8);
            bumped[i] = rng.gen_range(y[i]..=1.0);
            let a = exact_g(&obj, &y, DEFAULT_EXACT_LIMIT).unwrap();
            let b = exact_g(&obj, &bumped, DEFAULT_EXACT_LIMIT).unwrap();
            assert!(b >= a - 1e-12, "{family}");
        }
    }
}

#[test]
fn bias_margins_nonnegative_for_log_families() {
    let mut rng = seeded_rng(804);
    for family in [Family::Sm, Family::Im, Family::Fl] {
        for _ in 0..50 {
            let obj = random_instance(&mut rng, family, 2);
            for degree in 1..=4 {
                let rows = verify_bias(
                    &obj,
                    degree,
                    &[0, 1],
                    3,
                    &mut rng,
                    DEFAULT_EXACT_LIMIT,
                    DEFAULT_TERM_BUDGET,
                )
                .unwrap();
                for r in rows {
                    assert!(r.function_margin() >= 0.0, "{family} L={degree}: {r:?}");
                    assert!(r.gradient_margin() >= 0.0, "{family} L={degree}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn cache_error_is_the_geometric_remainder_at_empty_cache() {
    let mut rng = seeded_rng(805);
    let obj = random_cn(&mut rng, 4, 2, 4, 0.6).unwrap();
    for z in obj.realizations() {
        for degree in 1..=4 {
            let fhat = z.compose_fhat(degree, DEFAULT_TERM_BUDGET).unwrap();
            let empty = vec![false; 8];
            let s = z.inner_values(&empty)[0];
            let err = (z.f_eval(&empty).unwrap() - fhat.evaluate_binary(&empty).unwrap()).abs();
            assert!((err - s.powi(degree as i32 + 1) / (1.0 - s)).abs() <= 1e-12);
        }
    }
}

#[test]
fn oversized_problems_are_refused() {
    let mut rng = seeded_rng(806);
    let obj = random_im(&mut rng, 12, 0.2, 0.3, 1).unwrap();
    assert!(exact_g(&obj, &[0.5; 12], 10).is_err());
    assert!(brute_opt(&obj, &Matroid::uniform(12, 6), 10).is_err());
}
